"""Acceptance criteria, one test per criterion.

Each test prints ``PASS criterion N: ...`` or ``FAIL criterion N: ...``; the
lines are also collected and repeated in the pytest terminal summary.
"""
import json
import time
from pathlib import Path

import numpy as np
import pytest

from cmapgeom import sampling
from cmapgeom.cli import main
from cmapgeom.curvature import christoffel, einstein_residual, euclidean_metric, hyperbolic_metric, ricci, sphere_metric
from cmapgeom.hkc import (
    HKCPoint,
    calL_closed,
    calL_contour,
    hk_potential,
    hk_potential_routes,
    laplace_residual,
    u1_invariance_residual,
)
from cmapgeom.prepotential import CubicModel, QuadraticModel, homogeneity_residual, homogeneity_scale
from cmapgeom.qk_metric import FSPoint, compose, fs_metric, g_action, isometry_residual, pullback_residual, scale_A_only
from cmapgeom.special_kahler import default_box, domain_check, projective_point
from cmapgeom.twistor import compare_metrics

CONFIGS = Path(__file__).resolve().parent.parent / "configs"
SEED = 20060306
MODELS = {
    "quadratic_n0": QuadraticModel([1]),
    "quadratic_n1": QuadraticModel([1, -1]),
    "stu": CubicModel.stu(),
}
LINES = []


def rngs(tag):
    names = [f"{tag}:{m}" for m in MODELS]
    s = sampling.streams(SEED, names)
    return {m: s[f"{tag}:{m}"] for m in MODELS}


def verdict(number, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    print(line)
    LINES.append(line)
    assert ok, line


def test_criterion_01_two_route_metric_equality():
    start = time.perf_counter()
    worst, constants = 0.0, []
    for name, P in MODELS.items():
        for pt in sampling.fs_points(P, rngs("c1")[name], 100):
            cmp = compare_metrics(P, pt)
            worst = max(worst, cmp.max_rel_dev)
            constants.append(cmp.constant)
    elapsed = time.perf_counter() - start
    spread = max(constants) - min(constants)
    ok = worst <= 1e-6 and spread <= 1e-8 and elapsed < 60
    verdict(1, ok, f"max_rel_dev={worst:.2e} c={np.mean(constants):.10f} spread={spread:.2e} "
                   f"time={elapsed:.1f}s")


def test_criterion_02_contour_vs_closed():
    worst, plateau = 0.0, 0.0
    for name, P in MODELS.items():
        for v, G in sampling.section_points(P, rngs("c2")[name], 50):
            closed = calL_closed(P, v, G)
            a = calL_contour(P, v, G, samples=256)
            b = calL_contour(P, v, G, samples=512)
            worst = max(worst, abs(a - closed) / max(1.0, abs(closed)))
            plateau = max(plateau, abs(a - b))
    verdict(2, worst <= 1e-10 and plateau <= 1e-12,
            f"scaled |contour-closed|={worst:.2e} plateau 256->512={plateau:.2e}")


def test_criterion_03_chi_three_way():
    worst = 0.0
    for name, P in MODELS.items():
        for pt in sampling.hkc_points(P, rngs("c3")[name], 50):
            worst = max(worst, hk_potential_routes(P, pt).spread)
    chi = hk_potential(MODELS["quadratic_n0"], HKCPoint.make([1], -0.5, [0]))
    err = abs(chi - 2 * np.sqrt(2))
    verdict(3, worst <= 1e-10 and err <= 1e-12, f"relative spread={worst:.2e} |chi-2sqrt2|={err:.2e}")


def test_criterion_04_homogeneity():
    worst_L, worst_chi, worst_euler = 0.0, 0.0, 0.0
    for name, P in MODELS.items():
        r = rngs("c4")[name]
        sections = sampling.section_points(P, r, 20)
        points = sampling.hkc_points(P, r, 20)
        for lam in (0.5, 2.0, 7.0):
            for v, G in sections:
                L = calL_closed(P, v, G)
                worst_L = max(worst_L, abs(calL_closed(P, lam * v, lam * G) - lam * L) / abs(lam * L))
            for pt in points:
                chi = hk_potential(P, pt)
                scaled = hk_potential(P, HKCPoint(lam * pt.v, pt.w0, pt.w))
                worst_chi = max(worst_chi, abs(scaled - lam * chi) / abs(lam * chi))
        for _ in range(50):
            X = r.uniform(-1, 1, P.size) + 1j * r.uniform(-1, 1, P.size)
            X[0] = 1.0 + X[0]
            worst_euler = max(worst_euler, max(homogeneity_residual(P, X)) / homogeneity_scale(P, X))
    ok = worst_L <= 1e-11 and worst_chi <= 1e-11 and worst_euler <= 1e-12
    verdict(4, ok, f"calL={worst_L:.2e} chi={worst_chi:.2e} euler={worst_euler:.2e}")


def test_criterion_05_laplace():
    worst = 0.0
    for name, P in MODELS.items():
        for v, G in sampling.section_points(P, rngs("c5")[name], 50):
            worst = max(worst, laplace_residual(P, v, G).residual)
    generic = laplace_residual(MODELS["quadratic_n1"], [0.7 + 0.1j, 0.2 - 0.3j], [1.3, 0.4, -0.2])
    index0 = float(np.max(np.abs(generic.index0)))
    verdict(5, worst <= 1e-8 and index0 > 1e-3,
            f"block residual={worst:.2e} index-0 magnitude at generic point={index0:.3f}")


def test_criterion_06_isometries():
    worst, worst_comp, control = 0.0, 0.0, np.inf
    for name, P in MODELS.items():
        r = rngs("c6")[name]
        pts = sampling.fs_points(P, r, 50)
        gs = sampling.group_elements(P.n, r, 50)
        hs = sampling.group_elements(P.n, r, 50)
        for pt, g, h in zip(pts, gs, hs):
            worst = max(worst, isometry_residual(P, pt, g))
            a = g_action(g_action(pt, g), h).to_vector()
            b = g_action(pt, compose(h, g)).to_vector()
            worst_comp = max(worst_comp, float(np.max(np.abs(a - b))) / max(1.0, float(np.max(np.abs(a)))))
        pt = FSPoint(pts[0].phi, pts[0].sigma, np.ones(P.size), pts[0].B, pts[0].Z)
        control = min(control, pullback_residual(P, pt, *scale_A_only(pt, 0.5)))
    ok = worst <= 1e-10 and worst_comp <= 1e-12 and control > 0.1
    verdict(6, ok, f"pullback={worst:.2e} composition={worst_comp:.2e} corrupted control={control:.3f}")


def test_criterion_07_positivity():
    min_eig, violations, tested = np.inf, 0, 0
    for name, P in MODELS.items():
        r = rngs("c7")[name]
        for pt in sampling.fs_points(P, r, 100):
            min_eig = min(min_eig, float(np.linalg.eigvalsh(fs_metric(P, pt))[0]))
        box = default_box(P)
        for _ in range(100):
            Z = projective_point(r.uniform(*box["re"], P.n) + 1j * r.uniform(*box["im"], P.n))
            rep = domain_check(P, Z)
            if rep.positivity and rep.kahler_block_negdef:
                tested += 1
                violations += not rep.curlyN_sum_negdef
    verdict(7, min_eig > 0 and violations == 0 and tested > 0,
            f"min eigenvalue={min_eig:.3e} implication violations={violations}/{tested}")


def test_criterion_08_einstein():
    start = time.perf_counter()
    oracle = 0.0
    oracle = max(oracle, float(np.max(np.abs(christoffel(euclidean_metric(4), np.full(4, 0.3))))))
    oracle = max(oracle, float(np.max(np.abs(ricci(euclidean_metric(4), np.full(4, 0.3))))))
    x = np.array([np.pi / 3, 0.2])
    oracle = max(oracle, abs(christoffel(sphere_metric, x)[0, 1, 1] + np.sin(x[0]) * np.cos(x[0])))
    oracle = max(oracle, float(np.max(np.abs(ricci(sphere_metric, x) - sphere_metric(x)))))
    y = np.array([0.3, 1.2])
    oracle = max(oracle, float(np.max(np.abs(ricci(hyperbolic_metric, y) + hyperbolic_metric(y)))))

    P = MODELS["quadratic_n0"]

    def metric(v):
        return fs_metric(P, FSPoint.from_vector(v, 0), check_domain=False)

    res = [einstein_residual(metric, pt.to_vector())
           for pt in sampling.fs_points(P, rngs("c8")["quadratic_n0"], 5)]
    worst = max(r.residual for r in res)
    lams = [r.lam for r in res]
    spread = max(lams) - min(lams)
    elapsed = time.perf_counter() - start
    ok = oracle <= 1e-4 and worst <= 1e-3 and spread <= 1e-3 and elapsed < 60
    verdict(8, ok, f"oracles={oracle:.2e} residual={worst:.2e} lambda={np.mean(lams):.6f} "
                   f"spread={spread:.2e} time={elapsed:.1f}s")


def test_criterion_09_u1():
    worst, bit_identical = 0.0, True
    for name, P in MODELS.items():
        r = rngs("c9")[name]
        for pt in sampling.hkc_points(P, r, 50):
            worst = max(worst, u1_invariance_residual(P, pt).residual)
            moved = HKCPoint(pt.v, pt.w0 + 1j * r.uniform(-5, 5), pt.w + 1j * r.uniform(-5, 5, pt.w.size))
            bit_identical &= hk_potential(P, moved) == hk_potential(P, pt)
    verdict(9, worst <= 1e-8 and bit_identical,
            f"residual={worst:.2e} imaginary shifts bit-identical={bit_identical}")


def test_criterion_10_cli(capsys):
    good = str(CONFIGS / "quadratic_n0.json")
    code1 = main(["check", "--config", good])
    out1, _ = capsys.readouterr()
    code2 = main(["check", "--config", good])
    out2, _ = capsys.readouterr()
    code3 = main(["check", "--config", str(CONFIGS / "quadratic_n0_corrupted.json")])
    out3, err3 = capsys.readouterr()
    failing = json.loads(out3)["summary"]["failing"]
    ok = code1 == code2 == 0 and out1 == out2 and code3 == 1 and "homogeneity" in failing
    verdict(10, ok, f"exit={code1} deterministic={out1 == out2} corrupted exit={code3} failing={failing}")


@pytest.fixture(scope="module", autouse=True)
def _summary(request):
    yield
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")
    if reporter is not None:
        reporter.write_line("")
        for line in LINES:
            reporter.write_line(line)
