"""Hyperkähler cone over the c-map image, on the gauge slice v^0 = 0.

Sign convention
---------------
``calL`` is what the residue of ``Im (1/2 pi i) oint F(zeta eta)/zeta^3`` gives,
``calL = (2K - N_IJ G^I G^J) / (4 G^0)``.  The Legendre transform pairs it with
``u = w + wbar`` through the signed weights ``s = (+1, -1, ..., -1)``::

    chi = calL - sum_hat s_hat u_hat G^hat,   u_hat = s_hat dcalL/dG^hat

With this choice the stationary point is ``G^I/G^0 = 2 N^IJ u_J`` and
``(G^0)^2 = K / (2 (u N^-1 u - u_0))`` and ``chi = K/G^0 > 0``.  Vectors ``G``
are stored as ``(G^0, G^1, ..., G^{n+1})``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ConfigurationError,
    ConsistencyError,
    ContourPlacementError,
    NumericalError,
    OutsideConeError,
    PoleError,
)
from .numerics import (
    circle_integral,
    directional_derivative,
    holomorphic_jet,
    mixed_hessian,
    solve,
    sqrt,
)
from .numerics.dual import primal
from .prepotential import Prepotential
from .special_kahler import kahler_potential, n_matrix, quadratic_form

DEFAULT_SAMPLES = 256


@dataclass(frozen=True)
class O2Section:
    """``eta^hat(zeta) = v^hat/zeta + G^hat - conj(v^hat) zeta`` with ``v^0 = 0``."""

    v: np.ndarray   # v^1..v^{n+1}
    G: np.ndarray   # G^0, G^1..G^{n+1}

    def eta(self, zeta) -> np.ndarray:
        v = np.concatenate([[0.0], self.v])
        return v / zeta + self.G - np.conj(v) * zeta


@dataclass(frozen=True)
class HKCPoint:
    v: np.ndarray
    w0: complex
    w: np.ndarray

    @property
    def wsum0(self) -> float:
        return 2.0 * float(np.real(self.w0))

    @property
    def wsum(self) -> np.ndarray:
        return 2.0 * np.real(np.asarray(self.w, dtype=complex))

    @classmethod
    def make(cls, v, w0, w) -> "HKCPoint":
        return cls(np.atleast_1d(np.asarray(v, dtype=complex)), complex(w0),
                   np.atleast_1d(np.asarray(w, dtype=complex)))


@dataclass(frozen=True)
class SU2Params:
    eps3: float = 0.0
    eps_plus: complex = 0j

    @property
    def eps_minus(self) -> complex:
        return complex(np.conj(self.eps_plus))


def legendre_signs(m: int) -> np.ndarray:
    return np.concatenate([[1.0], -np.ones(m)])


# -- generating function -------------------------------------------------------

def h_function(P: Prepotential, eta0, etaI):
    """``H = F(eta^I) / eta^0``, homogeneous of degree one."""
    if primal(eta0) == 0:
        raise PoleError("H has a pole at eta^0 = 0")
    return P(list(etaI)) / eta0


def h_boxed(P: Prepotential, eta0, etaI):
    """``F(eta^I / sqrt(eta^0))``: the same function written through X(eta)."""
    if primal(eta0) == 0:
        raise PoleError("H has a pole at eta^0 = 0")
    s = sqrt(complex(eta0) if not hasattr(eta0, "tag") else eta0)
    return P([e / s for e in etaI])


# -- calL ------------------------------------------------------------------------

def _calL(P: Prepotential, v, vbar, G):
    """Closed form with ``v``, ``vbar`` independent (duals allowed)."""
    K = kahler_potential(P, v, vbar)
    N = n_matrix(P, v, vbar)
    GI = G[1:]
    return (2 * K - quadratic_form(N, GI, GI)) / (4 * G[0])


def _check_G(G):
    G = np.asarray(G, dtype=float)
    if G[0] == 0:
        raise PoleError("calL has a pole at G^0 = 0")
    return G


def calL_closed(P: Prepotential, v, G) -> float:
    v = np.atleast_1d(np.asarray(v, dtype=complex))
    G = _check_G(G)
    return float(np.real(_calL(P, list(v), list(v.conj()), list(G))))


def section_roots(v, G) -> list[np.ndarray]:
    """Roots in zeta of ``zeta eta^I = v^I + zeta G^I - zeta^2 conj(v^I)``, per I."""
    out = []
    for vi, gi in zip(v, G[1:]):
        if vi == 0:
            out.append(np.array([0.0]) if gi != 0 else np.zeros(0))
        else:
            out.append(np.roots([-np.conj(vi), gi, vi]))
    return out


def contour_radius(v, G) -> float:
    """Half the smallest nonzero root modulus of the components of ``zeta eta``.

    Components with ``v^I = 0`` contribute a root at the origin only; ``F`` is
    analytic there for admissible points, so they are skipped.
    """
    mods = [abs(r) for I, rs in enumerate(section_roots(v, G)) if v[I] != 0 for r in rs]
    if not mods:
        raise ConfigurationError("the O(2) section needs some v^I != 0")
    return 0.5 * min(mods)


def calL_contour(P: Prepotential, v, G, radius: float | None = None,
                 samples: int = DEFAULT_SAMPLES) -> float:
    """``(1/G^0) Im (1/2 pi i) oint F(zeta eta^I) / zeta^3 d zeta`` by quadrature."""
    v = np.atleast_1d(np.asarray(v, dtype=complex))
    G = _check_G(G)
    P.check_admissible(v)
    if radius is None:
        radius = contour_radius(v, G)
    else:
        roots = section_roots(v, G)
        for k in P.singular_slots:
            bad = [r for r in roots[k] if abs(r) <= radius]
            if bad:
                raise ContourPlacementError(
                    f"contour |zeta| = {radius} encloses a zero of zeta eta^{k + 1} "
                    f"at |zeta| = {abs(bad[0]):.6g}, where F has a pole")

    GI = G[1:]

    def integrand(zeta):
        z_eta = [vi + zeta * gi - zeta * zeta * np.conj(vi) for vi, gi in zip(v, GI)]
        return P(z_eta) / zeta ** 3

    return circle_integral(integrand, radius, samples).imag / G[0]


# -- Legendre transform ----------------------------------------------------------

def _rigid_data(P: Prepotential, v):
    v = np.atleast_1d(np.asarray(v, dtype=complex))
    K = float(np.real(kahler_potential(P, list(v), list(v.conj()))))
    N = np.real(np.array(n_matrix(P, list(v), list(v.conj())), dtype=complex))
    return v, K, N


def cone_radicand(N, wsum0, wsum) -> float:
    """``(w+wbar)_I N^IJ (w+wbar)_J - (w+wbar)_0``."""
    u = np.asarray(wsum, dtype=float)
    return float(u @ np.linalg.solve(N, u) - wsum0)


def legendre_closed(P: Prepotential, v, wsum0: float, wsum) -> np.ndarray:
    v, K, N = _rigid_data(P, v)
    u = np.atleast_1d(np.asarray(wsum, dtype=float))
    rad = cone_radicand(N, wsum0, u)
    if not rad > 0:
        raise OutsideConeError(f"(w+wbar) N^-1 (w+wbar) - (w+wbar)_0 = {rad:.6g} is not positive")
    if not K > 0:
        raise OutsideConeError(f"K(v, vbar) = {K:.6g} is not positive")
    G0 = np.sqrt(K / (2 * rad))
    return np.concatenate([[G0], 2 * G0 * np.linalg.solve(N, u)])


def stationarity_residual(P: Prepotential, v, wsum0, wsum, G) -> np.ndarray:
    """``dcalL/dG - s * (w+wbar)``; vanishes at the Legendre point."""
    v = np.atleast_1d(np.asarray(v, dtype=complex))
    jet = holomorphic_jet(lambda g: _calL(P, list(v), list(v.conj()), g), list(G), hessian=False)
    u = np.concatenate([[wsum0], np.atleast_1d(wsum)])
    return np.real(jet.gradient) - legendre_signs(len(v)) * u


def legendre_newton(P: Prepotential, v, wsum0: float, wsum, G_start,
                    max_iter: int = 5, tol: float = 1e-13) -> tuple[np.ndarray, int]:
    """Damped Newton solve of the stationarity conditions.

    Returns ``(G, iterations)``; raises :class:`NumericalError` with the final
    residual if it has not converged within ``max_iter`` steps.
    """
    v = np.atleast_1d(np.asarray(v, dtype=complex))
    u = np.concatenate([[wsum0], np.atleast_1d(np.asarray(wsum, dtype=float))])
    s = legendre_signs(len(v))
    G = np.asarray(G_start, dtype=float).copy()

    def f(g):
        return _calL(P, list(v), list(v.conj()), g)

    def resid(g):
        jet = holomorphic_jet(f, list(g))
        return np.real(jet.gradient) - s * u, np.real(jet.hessian)

    r, H = resid(G)
    scale = max(1.0, float(np.max(np.abs(u))))
    for it in range(max_iter + 1):
        rn = float(np.max(np.abs(r)))
        if rn <= tol * scale:
            return G, it
        if it == max_iter:
            break
        step = np.linalg.solve(H, r)
        t = 1.0
        while True:
            trial = G - t * step
            if trial[0] > 0:
                r_new, H_new = resid(trial)
                if np.max(np.abs(r_new)) < rn or t < 1e-4:
                    break
            t *= 0.5
        G, r, H = trial, r_new, H_new
    raise NumericalError(f"Legendre Newton solve did not converge (residual {rn:.3e})", residual=rn)


def legendre_solve(P: Prepotential, v, wsum0: float, wsum, verify: bool = True,
                   tol: float = 1e-10) -> np.ndarray:
    """Stationary ``G = (G^0, G^I)`` of the Legendre transform, with ``G^0 > 0``.

    The closed form is cross-checked by Newton on the stationarity conditions.
    """
    G = legendre_closed(P, v, wsum0, wsum)
    if verify:
        Gn, _ = legendre_newton(P, v, wsum0, wsum, G)
        dev = float(np.max(np.abs(Gn - G)) / max(1.0, float(np.max(np.abs(G)))))
        if dev > tol:
            raise ConsistencyError(f"closed-form and Newton Legendre points differ by {dev:.3e}")
    return G


def legendre_value(P: Prepotential, v, wsum0: float, wsum, G) -> float:
    """``calL(G) - sum s u G``: the Legendre transform evaluated at ``G``."""
    u = np.concatenate([[wsum0], np.atleast_1d(wsum)])
    return calL_closed(P, v, G) - float(np.sum(legendre_signs(len(u) - 1) * u * G))


# -- hyperkähler potential -------------------------------------------------------

def _chi_explicit(P: Prepotential, v, vbar, wsum0, wsum):
    K = kahler_potential(P, v, vbar)
    N = n_matrix(P, v, vbar)
    Ninv_u = solve(N, list(wsum))
    rad = sum(u * x for u, x in zip(wsum, Ninv_u)) - wsum0
    return sqrt(2.0) * sqrt(K) * sqrt(rad)


@dataclass(frozen=True)
class ChiRoutes:
    explicit: float
    over_G0: float
    boxed: float
    G: np.ndarray

    @property
    def spread(self) -> float:
        vals = np.array([self.explicit, self.over_G0, self.boxed])
        return float((vals.max() - vals.min()) / abs(self.explicit))


def hk_potential_routes(P: Prepotential, pt: HKCPoint) -> ChiRoutes:
    v = pt.v
    G = legendre_solve(P, v, pt.wsum0, pt.wsum)
    _, K, N = _rigid_data(P, v)
    explicit = float(np.sqrt(2.0) * np.sqrt(K) * np.sqrt(cone_radicand(N, pt.wsum0, pt.wsum)))
    X = v / np.sqrt(G[0])
    boxed = float(np.real(kahler_potential(P, list(X), list(X.conj()))))
    return ChiRoutes(explicit, K / G[0], boxed, G)


def hk_potential(P: Prepotential, pt: HKCPoint, tol: float = 1e-10) -> float:
    """Hyperkähler potential, computed three ways and cross-asserted."""
    routes = hk_potential_routes(P, pt)
    if routes.spread > tol:
        raise ConsistencyError(f"hyperkähler potential routes disagree (spread {routes.spread:.3e})")
    return routes.explicit


def dilaton_data(P: Prepotential, v, G) -> tuple[np.ndarray, float]:
    """``(A^I, e^phi)`` from ``2 A^I = G^I/G^0`` and ``4 e^phi = K/(G^0)^2``."""
    _, K, _ = _rigid_data(P, v)
    return G[1:] / (2 * G[0]), K / (4 * G[0] ** 2)


# -- invariants ------------------------------------------------------------------

@dataclass(frozen=True)
class LaplaceResult:
    block: np.ndarray     # L_{G^I G^J} + L_{v^I vbar^J}, I, J >= 1
    index0: np.ndarray    # L_{G^0 G^hat}, hat = 0..n+1 (no v^0 partner on the slice)

    @property
    def residual(self) -> float:
        return float(np.max(np.abs(self.block)))


def laplace_residual(P: Prepotential, v, G) -> LaplaceResult:
    v = np.atleast_1d(np.asarray(v, dtype=complex))
    G = _check_G(G)
    m = v.size

    def f(args):
        return _calL(P, args[:m], args[m:2 * m], args[2 * m:])

    args = list(v) + list(v.conj()) + list(G)
    g_slots = range(2 * m, 3 * m + 1)
    _, LGG = mixed_hessian(f, args, g_slots, g_slots)
    _, Lvv = mixed_hessian(f, args, range(m), range(m, 2 * m))
    block = LGG[1:, 1:] + Lvv
    if np.max(np.abs(block.imag), initial=0.0) > 1e-8 * max(1.0, np.max(np.abs(block))):
        raise ConsistencyError("Laplace residual has an imaginary part")
    return LaplaceResult(block.real, LGG[0, :].real)


@dataclass(frozen=True)
class U1Result:
    calL_residual: float   # |v L_v - vbar L_vbar|
    flow_derivative: float  # d chi / dt along delta v = -i eps3 v, w fixed

    @property
    def residual(self) -> float:
        return max(self.calL_residual, abs(self.flow_derivative))


def u1_flow(pt: HKCPoint, params: SU2Params):
    """Infinitesimal variation ``(delta v, delta w)`` on the slice.

    Only the eps3 generator keeps ``v^0 = 0``; the eps+- variations are not
    available here.
    """
    if params.eps_plus != 0:
        raise NotImplementedError("eps+/- variations leave the v^0 = 0 gauge slice")
    return -1j * params.eps3 * pt.v, np.zeros_like(pt.w)


def u1_invariance_residual(P: Prepotential, pt: HKCPoint, eps3: float = 1.0) -> U1Result:
    v = pt.v
    m = v.size
    G = legendre_solve(P, v, pt.wsum0, pt.wsum)

    def f(args):
        return _calL(P, args[:m], args[m:], list(G))

    jet = holomorphic_jet(f, list(v) + list(v.conj()), hessian=False)
    Lv = jet.gradient[:m]
    Lvb = jet.gradient[m:]
    r1 = abs(complex(v @ Lv - v.conj() @ Lvb))

    if eps3 == 0:
        flow = 0.0
    else:
        dv, _ = u1_flow(pt, SU2Params(eps3=eps3))

        def chi(args):
            return _chi_explicit(P, args[:m], args[m:], pt.wsum0, list(pt.wsum))

        flow = directional_derivative(chi, list(v) + list(v.conj()),
                                      list(dv) + list(np.conj(dv)))
        flow = float(np.real(complex(flow)))
    return U1Result(r1, flow)
