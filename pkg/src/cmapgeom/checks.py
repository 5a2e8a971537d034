"""The full verification suite behind ``cmapgeom check``."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import hkc, qk_metric, sampling, twistor
from .curvature import einstein_residual
from .errors import CMapError
from .prepotential import Prepotential, homogeneity_residual, homogeneity_scale
from .special_kahler import default_box, domain_check, projective_point

SCHEMA_VERSION = 1

DEFAULT_TOLERANCES = {
    "homogeneity": 1e-12,
    "fs_symmetry": 1e-12,
    "isometry": 1e-10,
    "composition": 1e-12,
    "negative_control_min": 0.1,
    "contour": 1e-10,
    "contour_plateau": 1e-12,
    "chi_three_way": 1e-10,
    "degree_one": 1e-11,
    "legendre_involution": 1e-10,
    "laplace": 1e-8,
    "u1": 1e-8,
    "twistor_potential": 1e-12,
    "metric_comparison": 1e-6,
    "constant_spread": 1e-8,
    "einstein": 1e-3,
    "einstein_lambda_spread": 1e-3,
}

DEFAULT_SWEEP = {"points": 20, "seed": 20060306, "box": None}

CHECK_NAMES = [
    "homogeneity", "domain", "fs_metric", "isometry", "isometry_negative_control",
    "contour_vs_closed", "contour_plateau", "chi_three_way", "degree_one_homogeneity",
    "legendre_involution", "laplace", "u1_invariance", "twistor_potential",
    "metric_comparison", "einstein",
]


@dataclass
class CheckResult:
    name: str
    status: str
    value: float | None = None
    tolerance: float | None = None
    details: dict = field(default_factory=dict)

    def as_dict(self):
        return {"name": self.name, "status": self.status, "value": _num(self.value),
                "tolerance": self.tolerance, "details": _clean(self.details)}


def _num(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else str(x)


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    return obj


def _verdict(name, value, tol, details=None, below=True):
    ok = value <= tol if below else value > tol
    return CheckResult(name, "pass" if ok else "fail", value, tol, details or {})


class Suite:
    def __init__(self, P: Prepotential, sweep: dict, tolerances: dict, enabled: dict):
        self.P = P
        self.sweep = sweep
        self.tol = tolerances
        self.enabled = enabled
        self.rngs = sampling.streams(int(sweep["seed"]), CHECK_NAMES)
        self.box = sweep.get("box")
        self.count = int(sweep["points"])

    # each method returns a CheckResult
    def homogeneity(self):
        rng = self.rngs["homogeneity"]
        worst = 0.0
        for _ in range(self.count):
            X = rng.uniform(-1, 1, self.P.size) + 1j * rng.uniform(-1, 1, self.P.size)
            X[0] = X[0] if abs(X[0]) > 0.1 else 1.0
            r1, r2 = homogeneity_residual(self.P, X)
            worst = max(worst, max(r1, r2) / homogeneity_scale(self.P, X))
        return _verdict("homogeneity", worst, self.tol["homogeneity"])

    def domain(self):
        rng = self.rngs["domain"]
        pts = sampling.fs_points(self.P, rng, self.count, self.box)
        violations = 0
        for pt in pts:
            rep = domain_check(self.P, pt.Z)
            if rep.positivity and rep.kahler_block_negdef and not rep.curlyN_sum_negdef:
                violations += 1
        # the sampler keeps only passing points; re-check the implication on a raw box draw
        raw = _raw_box_points(self.P, rng, self.count, self.box)
        implied = 0
        for Z in raw:
            rep = domain_check(self.P, Z)
            if rep.positivity and rep.kahler_block_negdef:
                implied += 1
                if not rep.curlyN_sum_negdef:
                    violations += 1
        return CheckResult("domain", "pass" if violations == 0 else "fail", violations, 0,
                           {"sampled": len(pts), "raw_draws": len(raw), "raw_in_domain": implied})

    def fs_metric(self):
        worst_asym = 0.0
        min_eig = math.inf
        sigma_dev = 0.0
        for pt in sampling.fs_points(self.P, self.rngs["fs_metric"], self.count, self.box):
            M = qk_metric.fs_metric(self.P, pt)
            worst_asym = max(worst_asym, float(np.max(np.abs(M - M.T))))
            ev = np.linalg.eigvalsh(M)
            min_eig = min(min_eig, float(ev[0] / ev[-1]))
            sigma_dev = max(sigma_dev, abs(M[1, 1] - np.exp(-2 * pt.phi)) / np.exp(-2 * pt.phi))
        ok = worst_asym <= self.tol["fs_symmetry"] and min_eig > 0 and sigma_dev <= self.tol["fs_symmetry"]
        return CheckResult("fs_metric", "pass" if ok else "fail", worst_asym, self.tol["fs_symmetry"],
                           {"min_relative_eigenvalue": min_eig, "sigma_coefficient_dev": sigma_dev})

    def isometry(self):
        rng = self.rngs["isometry"]
        pts = sampling.fs_points(self.P, rng, self.count, self.box)
        gs = sampling.group_elements(self.P.n, rng, self.count)
        worst = max(qk_metric.isometry_residual(self.P, pt, g) for pt, g in zip(pts, gs))
        comp = 0.0
        for pt, g1, g2 in zip(pts, gs, gs[1:] + gs[:1]):
            a = qk_metric.g_action(qk_metric.g_action(pt, g1), g2).to_vector()
            b = qk_metric.g_action(pt, qk_metric.compose(g2, g1)).to_vector()
            comp = max(comp, float(np.max(np.abs(a - b)) / max(1.0, np.max(np.abs(a)))))
        ok = worst <= self.tol["isometry"] and comp <= self.tol["composition"]
        return CheckResult("isometry", "pass" if ok else "fail", worst, self.tol["isometry"],
                           {"composition_residual": comp, "composition_tolerance": self.tol["composition"],
                            "dilaton_weight": qk_metric.ISOMETRIC_DILATON_WEIGHT})

    def isometry_negative_control(self):
        pt = sampling.fs_points(self.P, self.rngs["isometry_negative_control"], 1, self.box)[0]
        pt = qk_metric.FSPoint(pt.phi, pt.sigma, np.ones(self.P.size), pt.B, pt.Z)
        image, J = qk_metric.scale_A_only(pt, 0.5)
        res = qk_metric.pullback_residual(self.P, pt, image, J)
        return _verdict("isometry_negative_control", res, self.tol["negative_control_min"], below=False)

    def contour_vs_closed(self):
        worst = 0.0
        for v, G in sampling.section_points(self.P, self.rngs["contour_vs_closed"], self.count, self.box):
            a = hkc.calL_contour(self.P, v, G)
            b = hkc.calL_closed(self.P, v, G)
            worst = max(worst, abs(a - b) / (abs(b) + 1))
        return _verdict("contour_vs_closed", worst, self.tol["contour"])

    def contour_plateau(self):
        worst = 0.0
        for v, G in sampling.section_points(self.P, self.rngs["contour_plateau"], self.count, self.box):
            a = hkc.calL_contour(self.P, v, G, samples=256)
            b = hkc.calL_contour(self.P, v, G, samples=512)
            worst = max(worst, abs(a - b))
        return _verdict("contour_plateau", worst, self.tol["contour_plateau"])

    def chi_three_way(self):
        worst = 0.0
        for pt in sampling.hkc_points(self.P, self.rngs["chi_three_way"], self.count, self.box):
            worst = max(worst, hkc.hk_potential_routes(self.P, pt).spread)
        return _verdict("chi_three_way", worst, self.tol["chi_three_way"])

    def degree_one_homogeneity(self):
        rng = self.rngs["degree_one_homogeneity"]
        worst = 0.0
        for (v, G), pt in zip(sampling.section_points(self.P, rng, self.count, self.box),
                              sampling.hkc_points(self.P, rng, self.count, self.box)):
            L = hkc.calL_closed(self.P, v, G)
            chi = hkc.hk_potential(self.P, pt)
            for lam in (0.5, 2.0, 7.0):
                Ll = hkc.calL_closed(self.P, lam * v, lam * G)
                worst = max(worst, abs(Ll - lam * L) / abs(lam * L))
                cl = hkc.hk_potential(self.P, hkc.HKCPoint(lam * pt.v, pt.w0, pt.w))
                worst = max(worst, abs(cl - lam * chi) / abs(lam * chi))
        return _verdict("degree_one_homogeneity", worst, self.tol["degree_one"])

    def legendre_involution(self):
        worst = 0.0
        for pt in sampling.hkc_points(self.P, self.rngs["legendre_involution"], self.count, self.box):
            G = hkc.legendre_solve(self.P, pt.v, pt.wsum0, pt.wsum)
            r = hkc.stationarity_residual(self.P, pt.v, pt.wsum0, pt.wsum, G)
            worst = max(worst, float(np.max(np.abs(r))) / max(1.0, float(np.max(np.abs(pt.wsum)))))
        return _verdict("legendre_involution", worst, self.tol["legendre_involution"])

    def laplace(self):
        worst = 0.0
        index0 = None
        for v, G in sampling.section_points(self.P, self.rngs["laplace"], self.count, self.box):
            res = hkc.laplace_residual(self.P, v, G)
            worst = max(worst, res.residual)
            if index0 is None:
                index0 = res.index0
        return _verdict("laplace", worst, self.tol["laplace"],
                        {"index0_first_point": index0,
                         "index0_nonzero": bool(np.max(np.abs(index0)) > 1e-6)})

    def u1_invariance(self):
        worst = 0.0
        shift = 0.0
        rng = self.rngs["u1_invariance"]
        for pt in sampling.hkc_points(self.P, rng, self.count, self.box):
            worst = max(worst, hkc.u1_invariance_residual(self.P, pt).residual)
            moved = hkc.HKCPoint(pt.v, pt.w0 + 1j * rng.uniform(-3, 3), pt.w + 1j * rng.uniform(-3, 3, pt.w.size))
            shift = max(shift, abs(hkc.hk_potential(self.P, moved) - hkc.hk_potential(self.P, pt)))
        ok = worst <= self.tol["u1"] and shift == 0.0
        return CheckResult("u1_invariance", "pass" if ok else "fail", worst, self.tol["u1"],
                           {"imaginary_shift_change": shift})

    def twistor_potential(self):
        worst = 0.0
        for pt in sampling.fs_points(self.P, self.rngs["twistor_potential"], self.count, self.box):
            tp = twistor.coords_fs_to_twistor(self.P, pt)
            chi = hkc.hk_potential(self.P, hkc.HKCPoint(tp.Z, tp.w0, tp.w))
            worst = max(worst, abs(np.exp(twistor.twistor_potential(self.P, tp)) - chi) / chi)
        return _verdict("twistor_potential", worst, self.tol["twistor_potential"])

    def metric_comparison(self):
        results = []
        for pt in sampling.fs_points(self.P, self.rngs["metric_comparison"], self.count, self.box):
            results.append(twistor.compare_metrics(self.P, pt))
        devs = [r.max_rel_dev for r in results]
        cs = np.array([r.constant for r in results])
        spread = float(cs.max() - cs.min())
        worst = int(np.argmax(devs))
        ok = max(devs) <= self.tol["metric_comparison"] and spread <= self.tol["constant_spread"]
        return CheckResult("metric_comparison", "pass" if ok else "fail", max(devs),
                           self.tol["metric_comparison"],
                           {"constant": float(np.mean(cs)), "constant_spread": spread,
                            "constant_spread_tolerance": self.tol["constant_spread"],
                            "worst_point_index": worst,
                            "worst_entry": list(results[worst].worst_entry)})

    def einstein(self):
        n = self.P.n
        pts = sampling.fs_points(self.P, self.rngs["einstein"], 5, self.box)

        def metric(x):
            return qk_metric.fs_metric(self.P, qk_metric.FSPoint.from_vector(x, n), check_domain=False)

        res = [einstein_residual(metric, pt.to_vector()) for pt in pts]
        lams = [r.lam for r in res]
        worst = max(r.residual for r in res)
        spread = max(lams) - min(lams)
        ok = worst <= self.tol["einstein"] and spread <= self.tol["einstein_lambda_spread"]
        return CheckResult("einstein", "pass" if ok else "fail", worst, self.tol["einstein"],
                           {"lambda": lams, "lambda_spread": spread})


def _raw_box_points(P, rng, count, box):
    box = box or default_box(P)
    return [projective_point(rng.uniform(*box["re"], size=P.n) + 1j * rng.uniform(*box["im"], size=P.n))
            for _ in range(count)]


def run_suite(P: Prepotential, sweep: dict, tolerances: dict, enabled: dict) -> dict:
    suite = Suite(P, sweep, tolerances, enabled)
    results = []
    gate_failed = False
    for name in CHECK_NAMES:
        if not enabled.get(name, True):
            results.append(CheckResult(name, "skipped", details={"reason": "disabled"}))
            continue
        if gate_failed:
            results.append(CheckResult(name, "skipped", details={"reason": "homogeneity gate failed"}))
            continue
        try:
            res = getattr(suite, name)()
        except CMapError as exc:
            res = CheckResult(name, "fail", details={"error": type(exc).__name__, "message": str(exc)})
        results.append(res)
        if name == "homogeneity" and res.status != "pass":
            gate_failed = True
    failing = [r.name for r in results if r.status == "fail"]
    return {
        "schema_version": SCHEMA_VERSION,
        "model": P.describe(),
        "sweep": {**sweep, "prng": sampling.PRNG_NAME},
        "tolerances": tolerances,
        "checks": [r.as_dict() for r in results],
        "summary": {
            "passed": sum(r.status == "pass" for r in results),
            "failed": len(failing),
            "skipped": sum(r.status == "skipped" for r in results),
            "failing": failing,
            "ok": not failing,
        },
    }
