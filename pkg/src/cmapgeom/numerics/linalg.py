"""Small dense linear algebra for hermitian and real-symmetric forms."""

from __future__ import annotations

import numpy as np

from ..errors import ConsistencyError, DegeneratePointError
from .dual import Dual, primal


def hermiticity_residual(H) -> float:
    H = np.asarray(H, dtype=complex)
    return float(np.max(np.abs(H - H.conj().T), initial=0.0))


def complex_to_real_jacobian(m: int) -> np.ndarray:
    """Jacobian of z^a with respect to the real basis (Re z^1, Im z^1, Re z^2, ...)."""
    J = np.zeros((m, 2 * m), dtype=complex)
    for a in range(m):
        J[a, 2 * a] = 1.0
        J[a, 2 * a + 1] = 1j
    return J


def pullback_hermitian(H, J, tol: float = 1e-12) -> np.ndarray:
    """Real symmetric matrix of the form ``H_ab dz^a dzbar^b`` with ``dz = J dx``.

    ``J`` is the complex Jacobian of the holomorphic coordinates with respect to
    the real ones.  The real part of ``J^T H conj(J)`` is symmetric in exact
    arithmetic; its antisymmetric remainder is checked against ``tol`` (scaled
    by the largest entry) before symmetrizing.
    """
    H = np.asarray(H, dtype=complex)
    J = np.asarray(J, dtype=complex)
    P = (J.T @ H @ J.conj()).real
    scale = max(1.0, float(np.max(np.abs(P), initial=0.0)))
    asym = float(np.max(np.abs(P - P.T), initial=0.0))
    if asym > tol * scale:
        raise ConsistencyError(f"pulled-back form is not symmetric (residual {asym:.3e})")
    return 0.5 * (P + P.T)


def hermitian_to_real(H, tol: float = 1e-10) -> np.ndarray:
    """Real matrix of the line element ``2 H_ab dz^a dzbar^b``.

    Real coordinates are ordered (Re z^1, Im z^1, Re z^2, Im z^2, ...), so the
    dimension doubles.  ``H = [[1]]`` gives ``diag(2, 2)``.
    """
    H = np.atleast_2d(np.asarray(H, dtype=complex))
    res = hermiticity_residual(H)
    if res > tol * max(1.0, float(np.max(np.abs(H), initial=0.0))):
        raise ConsistencyError(f"matrix is not hermitian (residual {res:.3e})")
    return 2.0 * pullback_hermitian(H, complex_to_real_jacobian(H.shape[0]), tol=1e-10)


def line_element(H, J) -> np.ndarray:
    """Real matrix of ``H_ab W^a Wbar^b`` for one-forms ``W = J dx``.

    This is half of the :func:`hermitian_to_real` normalization and is the
    convention both metric routes use, so ``W Wbar`` reads as ``|W|^2``.
    """
    return pullback_hermitian(H, J)


def sorted_eigenvalues(M) -> np.ndarray:
    return np.linalg.eigvalsh(0.5 * (np.asarray(M) + np.asarray(M).T))


def is_negative_definite(M, margin: float = 1e-10) -> bool:
    """Strict negativity with a margin relative to the matrix norm."""
    M = np.asarray(M)
    if M.size == 0:
        return True
    ev = np.linalg.eigvalsh(0.5 * (M + M.conj().T))
    return bool(np.all(ev < -margin * max(np.max(np.abs(ev)), 1e-300)))


def solve(A, b):
    """Gaussian elimination with partial pivoting on entries that may be duals.

    ``A`` is a list of rows; ``b`` a list (vector) or list of rows (matrix).
    Pivots are chosen by the magnitude of the primal value.
    """
    n = len(A)
    M = [list(row) for row in A]
    vector = not isinstance(b[0], (list, tuple, np.ndarray))
    R = [[x] for x in b] if vector else [list(row) for row in b]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(primal(M[r][col])))
        if abs(primal(M[piv][col])) == 0:
            raise DegeneratePointError("singular matrix in linear solve")
        M[col], M[piv] = M[piv], M[col]
        R[col], R[piv] = R[piv], R[col]
        p = M[col][col]
        for r in range(n):
            if r == col:
                continue
            f = M[r][col] / p
            if _is_zero(f):
                continue
            M[r] = [M[r][k] - f * M[col][k] for k in range(n)]
            R[r] = [R[r][k] - f * R[col][k] for k in range(len(R[r]))]
    out = [[R[r][k] / M[r][r] for k in range(len(R[r]))] for r in range(n)]
    return [row[0] for row in out] if vector else out


def _is_zero(x) -> bool:
    return not isinstance(x, Dual) and x == 0
