"""Twistor-space description of the c-map metric and the two-route comparison.

Holomorphic coordinates are ordered ``z = (w_1, ..., w_{n+1}, w_0, Z^2, ..., Z^{n+1})``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import OutsideConeError, OutsideDomainError
from .hkc import legendre_solve, dilaton_data
from .numerics import exp, jacobian, line_element, log, mixed_hessian, solve
from .numerics.dual import primal
from .prepotential import Prepotential
from .qk_metric import FSPoint, fs_metric
from .special_kahler import n_matrix, projective_point, quadratic_form, require_domain

LOG_SQRT2 = 0.5 * np.log(2.0)


@dataclass(frozen=True)
class TwistorPoint:
    Z: np.ndarray    # full projective vector, Z[0] == 1
    w0: complex
    w: np.ndarray

    @property
    def n(self) -> int:
        return self.Z.size - 1

    def holomorphic(self) -> list:
        return list(self.w) + [self.w0] + list(self.Z[1:])

    @classmethod
    def from_holomorphic(cls, z, n: int) -> "TwistorPoint":
        m = n + 1
        z = np.asarray(z, dtype=complex)
        return cls(projective_point(z[m + 1:]), complex(z[m]), z[:m].copy())


def _unpack(z, m):
    return z[:m], z[m], [1.0] + list(z[m + 1:])


def _log_parts(P, z, zb):
    m = P.size
    w, w0, Z = _unpack(z, m)
    wb, w0b, Zb = _unpack(zb, m)
    N = n_matrix(P, Z, Zb)
    u = [a + b for a, b in zip(w, wb)]
    rad = sum(x * y for x, y in zip(u, solve(N, u))) - (w0 + w0b)
    return quadratic_form(N, Z, Zb), rad


def _KT(P, z, zb, include_constant=True):
    znz, rad = _log_parts(P, z, zb)
    out = 0.5 * (log(znz) + log(rad))
    return out + LOG_SQRT2 if include_constant else out


def twistor_potential(P: Prepotential, pt: TwistorPoint, include_constant: bool = True) -> float:
    """``K_T = (1/2)[calK + ln((w+wbar) N^-1 (w+wbar) - (w+wbar)_0)] + ln sqrt 2``."""
    z = pt.holomorphic()
    zb = list(np.conj(z))
    znz, rad = _log_parts(P, z, zb)
    if not np.real(znz) > 0:
        raise OutsideDomainError("Z N Zbar is not positive", verdict="positivity")
    if not np.real(rad) > 0:
        raise OutsideConeError(f"twistor log argument {np.real(rad):.6g} is not positive")
    return float(np.real(_KT(P, z, zb, include_constant)))


def holomorphic_one_form(pt: TwistorPoint) -> np.ndarray:
    """Components of ``2 Z^I dw_I`` over ``(w_I, w_0, Z^A)``."""
    m = pt.Z.size
    X = np.zeros(2 * m, dtype=complex)
    X[:m] = 2 * pt.Z
    return X


def qk_metric_from_twistor(P: Prepotential, pt: TwistorPoint,
                           include_constant: bool = True) -> np.ndarray:
    """``G = d dbar K_T - e^{-2 K_T} X Xbar`` as a hermitian matrix over ``z``."""
    KT = twistor_potential(P, pt, include_constant)
    z = pt.holomorphic()
    k = len(z)
    _, H = mixed_hessian(lambda a: _KT(P, a[:k], a[k:], include_constant),
                         z + list(np.conj(z)), range(k), range(k, 2 * k))
    X = holomorphic_one_form(pt)
    return H - np.exp(-2 * KT) * np.outer(X, X.conj())


def _fs_to_twistor_map(P: Prepotential, x):
    """Holomorphic twistor coordinates as functions of the real FS coordinates."""
    m = P.size
    phi, sigma = x[0], x[1]
    A = x[2:2 + m]
    B = x[2 + m:2 + 2 * m]
    zr = x[2 + 2 * m:]
    Z = [1.0] + [zr[2 * a] + 1j * zr[2 * a + 1] for a in range(m - 1)]
    F = P.jet(Z).hessian
    FA = [sum(F[I, J] * A[J] for J in range(m)) for I in range(m)]
    w = [1j * FA[I] - 0.5j * B[I] for I in range(m)]
    AFA = sum(A[I] * FA[I] for I in range(m))
    AB = sum(A[I] * B[I] for I in range(m))
    w0 = 1j * AFA - 1j * (sigma + 0.5 * AB) - exp(phi)
    return w + [w0] + Z[1:]


def coords_fs_to_twistor(P: Prepotential, pt: FSPoint) -> TwistorPoint:
    """``w_0 = i A F A - i(sigma + AB/2) - e^phi``, ``w_I = i F_IJ A^J - (i/2) B_I``."""
    z = _fs_to_twistor_map(P, list(pt.to_vector()))
    return TwistorPoint.from_holomorphic([complex(primal(c)) for c in z], P.n)


def fs_to_twistor_jacobian(P: Prepotential, pt: FSPoint) -> np.ndarray:
    """Exact complex Jacobian dz/dx by forward-mode differentiation of the map."""
    x = list(pt.to_vector())
    seeds = np.eye(len(x))
    _, J = jacobian(lambda a: _fs_to_twistor_map(P, a), x, seeds)
    return J


def twistor_to_fs(P: Prepotential, tp: TwistorPoint) -> FSPoint:
    """Invert the coordinate map through the Legendre point and the dilaton relations."""
    u = 2 * tp.w.real
    G = legendre_solve(P, tp.Z, 2 * tp.w0.real, u)
    A, ephi = dilaton_data(P, tp.Z, G)
    F = P.jet(tp.Z).hessian
    B = 2 * (F.real @ A - tp.w.imag)
    sigma = float(np.real(A @ F @ A) - 0.5 * A @ B - tp.w0.imag)
    return FSPoint(float(np.log(ephi)), sigma, A, B, tp.Z.copy())


def pulled_back_twistor_metric(P: Prepotential, pt: FSPoint,
                               include_constant: bool = True) -> np.ndarray:
    tp = coords_fs_to_twistor(P, pt)
    G = qk_metric_from_twistor(P, tp, include_constant)
    return line_element(G, fs_to_twistor_jacobian(P, pt))


@dataclass(frozen=True)
class MetricComparison:
    constant: float
    max_rel_dev: float
    worst_entry: tuple
    fs: np.ndarray
    twistor: np.ndarray

    def as_dict(self) -> dict:
        return {"constant": self.constant, "max_rel_dev": self.max_rel_dev,
                "worst_entry": list(self.worst_entry)}


#: entries smaller than this fraction of the largest one are compared absolutely
RELATIVE_FLOOR = 1e-6


def compare_metrics(P: Prepotential, pt: FSPoint, include_constant: bool = True) -> MetricComparison:
    """Best scalar ``c`` with ``c * M_twistor ~ M_FS`` and the worst deviation.

    The deviation of entry ``ab`` is ``|c Mt_ab - Mfs_ab| / max(|Mfs_ab|, floor)``
    with ``floor = RELATIVE_FLOOR * max |Mfs|``.
    """
    require_domain(P, pt.Z)
    Mfs = fs_metric(P, pt, check_domain=False)
    Mt = pulled_back_twistor_metric(P, pt, include_constant)
    c = float(np.sum(Mt * Mfs) / np.sum(Mt * Mt))
    floor = RELATIVE_FLOOR * float(np.max(np.abs(Mfs)))
    dev = np.abs(c * Mt - Mfs) / np.maximum(np.abs(Mfs), floor)
    worst = np.unravel_index(int(np.argmax(dev)), dev.shape)
    return MetricComparison(c, float(dev[worst]), tuple(int(i) for i in worst), Mfs, Mt)
