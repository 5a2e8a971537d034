"""Rigid and projective special Kähler data of a prepotential."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DegeneratePointError, OutsideDomainError
from .numerics import is_negative_definite, log, mixed_hessian
from .prepotential import Prepotential


@dataclass(frozen=True)
class SKData:
    K: float
    N: np.ndarray          # real symmetric (n+1)x(n+1)
    curlyN: np.ndarray     # complex symmetric (n+1)x(n+1)
    F: complex
    F_I: np.ndarray
    F_IJ: np.ndarray


def projective_point(Z_free, n: int | None = None) -> np.ndarray:
    """Full projective vector ``(1, Z^2, ..., Z^{n+1})`` from its free entries."""
    Z_free = np.atleast_1d(np.asarray(Z_free, dtype=complex))
    if n is not None and Z_free.size != n:
        raise ConfigurationError(f"expected {n} free projective coordinates, got {Z_free.size}")
    return np.concatenate([[1.0 + 0j], Z_free])


def _as_projective(P: Prepotential, Z) -> np.ndarray:
    Z = np.atleast_1d(np.asarray(Z, dtype=complex))
    if Z.size == P.n:
        Z = projective_point(Z)
    if Z.size != P.size or Z[0] != 1:
        raise ConfigurationError("projective point must have Z^1 = 1 and n + 1 entries")
    return Z


# -- generic pieces, valid for independent X and Xbar (duals allowed) -----------

def kahler_potential(P: Prepotential, X, Xbar):
    """``K = i (Xbar^I F_I(X) - X^I Fbar_I(Xbar))``."""
    Fi = P.jet(X, order=1).gradient
    Fbi = P.conj_jet(Xbar, order=1).gradient
    acc = 0
    for I in range(P.size):
        acc = acc + Xbar[I] * Fi[I] - X[I] * Fbi[I]
    return 1j * acc


def n_matrix(P: Prepotential, X, Xbar):
    """``N_IJ = i (F_IJ(X) - Fbar_IJ(Xbar))`` as nested lists."""
    H = P.jet(X).hessian
    Hb = P.conj_jet(Xbar).hessian
    m = P.size
    return [[1j * (H[I, J] - Hb[I, J]) for J in range(m)] for I in range(m)]


def quadratic_form(M, x, y):
    acc = 0
    for I, row in enumerate(M):
        for J, m in enumerate(row):
            acc = acc + x[I] * m * y[J]
    return acc


# -- numeric API -------------------------------------------------------------

def sk_data(P: Prepotential, X) -> SKData:
    """K, N and the matrix curlyN at a point ``X`` of the affine geometry.

    ``curlyN_IJ = -i conj(F_IJ) - (NX)_I (NX)_J / (X N X)`` with the
    holomorphic contraction ``X N X = X^I N_IJ X^J``.
    """
    X = np.asarray(X, dtype=complex)
    j = P.jet(X)
    F_IJ = j.hessian
    N = (1j * (F_IJ - F_IJ.conj())).real
    K = float((1j * (X.conj() @ j.gradient - X @ j.gradient.conj())).real)
    NX = N @ X
    XNX = X @ NX
    if abs(XNX) <= 1e-14 * max(1.0, float(np.max(np.abs(N))) * float(np.sum(np.abs(X) ** 2))):
        raise DegeneratePointError("X N X vanishes; curlyN is undefined")
    curlyN = -1j * F_IJ.conj() - np.outer(NX, NX) / XNX
    return SKData(K=K, N=N, curlyN=curlyN, F=complex(j.value), F_I=j.gradient, F_IJ=F_IJ)


def projective_potential(P: Prepotential, Z) -> tuple[float, np.ndarray]:
    """``calK = ln(Z N Zbar)`` and its hermitian block ``d^2 calK / dZ^A dZbar^B``.

    The block is differentiated through the full composition, including the
    dependence of N on Z.
    """
    Z = _as_projective(P, Z)
    ZNZ = _znz(P, Z)
    if not ZNZ > 0:
        raise OutsideDomainError(f"Z N Zbar = {ZNZ:.6g} is not positive", verdict="positivity")
    return float(np.log(ZNZ)), _kahler_block(P, Z)


def _znz(P, Z):
    N = np.array(n_matrix(P, list(Z), list(Z.conj())), dtype=complex)
    return float((Z @ N @ Z.conj()).real)


@dataclass(frozen=True)
class DomainReport:
    positivity: bool
    kahler_block_negdef: bool
    curlyN_sum_negdef: bool

    @property
    def ok(self) -> bool:
        return self.positivity and self.kahler_block_negdef and self.curlyN_sum_negdef

    @property
    def failing(self) -> str | None:
        for name in ("positivity", "kahler_block_negdef", "curlyN_sum_negdef"):
            if not getattr(self, name):
                return name
        return None

    def as_dict(self):
        return {
            "positivity": self.positivity,
            "kahler_block_negdef": self.kahler_block_negdef,
            "curlyN_sum_negdef": self.curlyN_sum_negdef,
        }


def domain_check(P: Prepotential, Z, margin: float = 1e-10) -> DomainReport:
    """Three independent verdicts on the positivity domain at ``Z``."""
    Z = _as_projective(P, Z)
    positivity = _znz(P, Z) > 0
    kahler = is_negative_definite(_kahler_block(P, Z), margin)
    try:
        sk = sk_data(P, Z)
        S = (sk.curlyN + sk.curlyN.conj()).real
        curly = is_negative_definite(S, margin)
    except DegeneratePointError:
        curly = False
    return DomainReport(bool(positivity), bool(kahler), bool(curly))


def _kahler_block(P, Z):
    m = P.size
    if m == 1:
        return np.zeros((0, 0), dtype=complex)

    def calK(args):
        z = args[:m]
        zb = args[m:]
        return log(quadratic_form(n_matrix(P, z, zb), z, zb))

    return mixed_hessian(calK, list(Z) + list(Z.conj()), range(1, m), range(m + 1, 2 * m))[1]


def require_domain(P: Prepotential, Z) -> DomainReport:
    rep = domain_check(P, Z)
    if not rep.ok:
        raise OutsideDomainError(f"point outside the positivity domain ({rep.failing})",
                                 verdict=rep.failing)
    return rep


def default_box(P: Prepotential) -> dict:
    """Sampling box for the free projective coordinates.

    Cubic positivity domains sit at negative imaginary parts for
    ``F = +d XXX/X^1`` (there ``Z N Zbar = -8 d(Im Z, Im Z, Im Z)``).
    """
    from .prepotential import CubicModel, ShiftedPrepotential

    base = P.base if isinstance(P, ShiftedPrepotential) else P
    if isinstance(base, CubicModel):
        return {"re": [-0.5, 0.5], "im": [-2.0, -0.5]}
    return {"re": [-0.6, 0.6], "im": [-0.6, 0.6]}


def sample_domain(P: Prepotential, rng: np.random.Generator, count: int,
                  box: dict | None = None, max_tries: int = 100_000) -> list[np.ndarray]:
    """Rejection-sample projective points passing all three domain verdicts."""
    box = box or default_box(P)
    out = []
    tries = 0
    while len(out) < count:
        if tries >= max_tries:
            raise OutsideDomainError(
                f"only {len(out)} of {count} domain points found in {max_tries} draws",
                verdict="positivity")
        tries += 1
        re = rng.uniform(*box["re"], size=P.n)
        im = rng.uniform(*box["im"], size=P.n)
        Z = projective_point(re + 1j * im)
        if domain_check(P, Z).ok:
            out.append(Z)
    return out
