"""The explicit quaternion-Kähler metric of the c-map and its manifest isometries.

Real basis order (frozen): ``dphi, dsigma, dA^1..dA^{n+1}, dB_1..dB_{n+1},
Re dZ^2, Im dZ^2, ..., Re dZ^{n+1}, Im dZ^{n+1}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DegeneratePointError
from .numerics import line_element, sorted_eigenvalues
from .prepotential import Prepotential
from .special_kahler import projective_potential, projective_point, require_domain, sk_data


@dataclass(frozen=True)
class FSPoint:
    phi: float
    sigma: float
    A: np.ndarray
    B: np.ndarray
    Z: np.ndarray  # full projective vector, Z[0] == 1

    @property
    def n(self) -> int:
        return len(self.A) - 1

    @property
    def dim(self) -> int:
        return 4 * (self.n + 1)

    def to_vector(self) -> np.ndarray:
        zs = self.Z[1:]
        zr = np.empty(2 * zs.size)
        zr[0::2] = zs.real
        zr[1::2] = zs.imag
        return np.concatenate([[self.phi, self.sigma], self.A, self.B, zr])

    @classmethod
    def from_vector(cls, x, n: int) -> "FSPoint":
        x = np.asarray(x, dtype=float)
        m = n + 1
        A = x[2:2 + m].copy()
        B = x[2 + m:2 + 2 * m].copy()
        zr = x[2 + 2 * m:]
        Z = projective_point(zr[0::2] + 1j * zr[1::2])
        return cls(float(x[0]), float(x[1]), A, B, Z)

    @classmethod
    def make(cls, phi, sigma, A, B, Z_free=()) -> "FSPoint":
        A = np.atleast_1d(np.asarray(A, dtype=float))
        B = np.atleast_1d(np.asarray(B, dtype=float))
        return cls(float(phi), float(sigma), A, B, projective_point(Z_free))

    def as_dict(self) -> dict:
        return {
            "phi": self.phi,
            "sigma": self.sigma,
            "A": self.A.tolist(),
            "B": self.B.tolist(),
            "Z": [[z.real, z.imag] for z in self.Z[1:]],
        }


def basis_labels(n: int) -> list[str]:
    m = n + 1
    labels = ["phi", "sigma"]
    labels += [f"A^{I + 1}" for I in range(m)]
    labels += [f"B_{I + 1}" for I in range(m)]
    for A in range(2, m + 1):
        labels += [f"Re Z^{A}", f"Im Z^{A}"]
    return labels


@dataclass(frozen=True)
class GActionParams:
    beta: float = 0.0
    alpha: float = 0.0
    eps_up: np.ndarray = field(default_factory=lambda: np.zeros(0))    # shifts of A^I
    eps_down: np.ndarray = field(default_factory=lambda: np.zeros(0))  # shifts of B_I

    @classmethod
    def identity(cls, n: int) -> "GActionParams":
        return cls(0.0, 0.0, np.zeros(n + 1), np.zeros(n + 1))

    def _eps(self, m):
        up = self.eps_up if self.eps_up.size else np.zeros(m)
        down = self.eps_down if self.eps_down.size else np.zeros(m)
        return np.asarray(up, dtype=float), np.asarray(down, dtype=float)


def compose(g2: GActionParams, g1: GActionParams) -> GActionParams:
    """Parameters of ``g2 o g1`` (apply ``g1`` first)."""
    m = max(g1.eps_up.size, g2.eps_up.size, g1.eps_down.size, g2.eps_down.size)
    u1, d1 = g1._eps(m)
    u2, d2 = g2._eps(m)
    s = np.exp(-g1.beta)
    alpha = g1.alpha + np.exp(-2 * g1.beta) * g2.alpha + 0.5 * s * (u2 @ d1 - d2 @ u1)
    return GActionParams(g1.beta + g2.beta, float(alpha), u1 + s * u2, d1 + s * d2)


#: weight of beta in the dilaton shift phi -> phi + weight * beta.  Only weight 2
#: leaves the metric invariant; weight 1 is kept for the negative control.
ISOMETRIC_DILATON_WEIGHT = 2.0


def g_action(pt: FSPoint, g: GActionParams, dilaton_weight: float = ISOMETRIC_DILATON_WEIGHT) -> FSPoint:
    m = len(pt.A)
    up, down = g._eps(m)
    eb = np.exp(g.beta)
    sigma = np.exp(2 * g.beta) * (pt.sigma + g.alpha - 0.5 * down @ pt.A + 0.5 * up @ pt.B)
    return FSPoint(pt.phi + dilaton_weight * g.beta, float(sigma),
                   eb * (pt.A + up), eb * (pt.B + down), pt.Z.copy())


def action_jacobian(pt: FSPoint, g: GActionParams,
                    dilaton_weight: float = ISOMETRIC_DILATON_WEIGHT) -> np.ndarray:
    """d(g.x)/dx in the frozen real basis; block triangular, affine in (A, B, sigma)."""
    m = len(pt.A)
    up, down = g._eps(m)
    d = pt.dim
    J = np.eye(d)
    eb = np.exp(g.beta)
    e2b = np.exp(2 * g.beta)
    J[1, 1] = e2b
    J[1, 2:2 + m] = -0.5 * e2b * down
    J[1, 2 + m:2 + 2 * m] = 0.5 * e2b * up
    J[2:2 + 2 * m, 2:2 + 2 * m] *= eb
    return J


def fs_metric(P: Prepotential, pt: FSPoint, check_domain: bool = True) -> np.ndarray:
    """Real symmetric matrix of the c-map metric at ``pt`` in the frozen basis.

    The W and dZ terms use the ``W Wbar -> |W|^2`` realization
    (:func:`cmapgeom.numerics.line_element`).
    """
    if check_domain:
        require_domain(P, pt.Z)
    m = P.size
    n = P.n
    d = 4 * m
    sk = sk_data(P, pt.Z)
    S = (sk.curlyN + sk.curlyN.conj()).real
    try:
        Sinv = np.linalg.inv(S)
    except np.linalg.LinAlgError as exc:
        raise DegeneratePointError("curlyN + conj(curlyN) is singular") from exc
    if not np.all(np.isfinite(Sinv)) or np.linalg.cond(S) > 1e14:
        raise DegeneratePointError("curlyN + conj(curlyN) is singular")

    # W^I = S^{-1 IJ} (2 conj(curlyN)_JK dA^K - i dB_J)
    W = np.zeros((m, d), dtype=complex)
    W[:, 2:2 + m] = Sinv @ (2 * sk.curlyN.conj())
    W[:, 2 + m:2 + 2 * m] = -1j * Sinv

    theta = np.zeros(d)
    theta[1] = 1.0
    theta[2:2 + m] = 0.5 * pt.B
    theta[2 + m:2 + 2 * m] = -0.5 * pt.A

    M = np.zeros((d, d))
    M[0, 0] = 1.0
    M += -np.exp(-pt.phi) * line_element(S, W)
    M += np.exp(-2 * pt.phi) * np.outer(theta, theta)
    if n:
        _, block = projective_potential(P, pt.Z)
        JZ = np.zeros((n, d), dtype=complex)
        for a in range(n):
            JZ[a, 2 + 2 * m + 2 * a] = 1.0
            JZ[a, 2 + 2 * m + 2 * a + 1] = 1j
        M += line_element(-4 * block, JZ)
    return 0.5 * (M + M.T)


def pullback_residual(P: Prepotential, pt: FSPoint, image: FSPoint, J: np.ndarray) -> float:
    """``max |J^T g(image) J - g(pt)|``: zero when the map is an isometry."""
    return float(np.max(np.abs(J.T @ fs_metric(P, image) @ J - fs_metric(P, pt))))


def isometry_residual(P: Prepotential, pt: FSPoint, g: GActionParams,
                      dilaton_weight: float = ISOMETRIC_DILATON_WEIGHT) -> float:
    image = g_action(pt, g, dilaton_weight)
    return pullback_residual(P, pt, image, action_jacobian(pt, g, dilaton_weight))


def scale_A_only(pt: FSPoint, beta: float) -> tuple[FSPoint, np.ndarray]:
    """A deliberately non-isometric map: ``A -> e^beta A``, everything else fixed."""
    m = len(pt.A)
    J = np.eye(pt.dim)
    J[2:2 + m, 2:2 + m] *= np.exp(beta)
    return replace(pt, A=np.exp(beta) * pt.A), J


def signature_check(P: Prepotential, pt: FSPoint) -> np.ndarray:
    """Sorted eigenvalues of the metric; all positive on the domain."""
    return sorted_eigenvalues(fs_metric(P, pt))


def sigma_coefficient(M: np.ndarray) -> float:
    return float(M[1, 1])
