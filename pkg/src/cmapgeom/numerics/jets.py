"""Value, gradient and Hessian of holomorphic functions via nested duals."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import SingularEvaluationError
from .dual import Dual, is_finite, new_tag, split


@dataclass(frozen=True)
class ComplexJet:
    """Second-order jet of a function at a point.

    Entries are complex numbers, or duals when the jet was evaluated at a
    point that itself carries perturbations (nested differentiation).
    """

    value: object
    gradient: np.ndarray
    hessian: np.ndarray

    @property
    def symmetry_residual(self) -> float:
        h = _as_complex(self.hessian)
        return float(np.max(np.abs(h - h.T), initial=0.0))


def _as_complex(a):
    a = np.asarray(a)
    if a.dtype == object:
        from .dual import primal

        return np.vectorize(primal, otypes=[complex])(a) if a.size else a.astype(complex)
    return a.astype(complex)


def _call(f, args, index):
    try:
        y = f(args)
    except (ZeroDivisionError, OverflowError) as exc:
        raise SingularEvaluationError(
            f"singular evaluation along coordinate {index}: {exc}", index=index
        ) from exc
    if not is_finite(y):
        raise SingularEvaluationError(
            f"singular evaluation along coordinate {index}: non-finite result", index=index
        )
    return y


def holomorphic_jet(f, X, hessian: bool = True) -> ComplexJet:
    """Jet of ``f`` at ``X``: value, gradient and (optionally) Hessian.

    ``f`` takes a list of ``m`` numbers and must be built from arithmetic and
    the elementary functions in :mod:`cmapgeom.numerics.dual`.  No truncation
    error is introduced.  Raises :class:`SingularEvaluationError` carrying the
    coordinate index whose pass first produced a non-finite value.
    """
    X = list(X)
    m = len(X)
    grad = np.empty(m, dtype=object)
    hess = np.empty((m, m), dtype=object)
    value = None
    if m == 0:
        value = _call(f, X, 0)
    if not hessian:
        for i in range(m):
            t = new_tag()
            args = [Dual(x, 1.0, t) if k == i else x for k, x in enumerate(X)]
            y = _call(f, args, i)
            value, grad[i] = split(y, t)
        return ComplexJet(value, _tidy(grad), np.zeros((m, m), dtype=complex))
    for i in range(m):
        for j in range(i, m):
            t1 = new_tag()
            t2 = new_tag()
            args = []
            for k, x in enumerate(X):
                if k == i:
                    x = Dual(x, 1.0, t1)
                if k == j:
                    x = Dual(x, 1.0, t2)
                args.append(x)
            y = _call(f, args, i)
            outer, d2 = split(y, t2)
            v, di = split(outer, t1)
            dj, dij = split(d2, t1)
            if i == j:
                # both seeds sit on the same slot: d/dx_i twice
                value, grad[i] = v, di
                hess[i, i] = dij
            else:
                hess[i, j] = hess[j, i] = dij
    return ComplexJet(value, _tidy(grad), _tidy(hess))


def _tidy(a):
    """Return a complex array when no entry carries a perturbation."""
    if any(isinstance(e, Dual) for e in a.flat):
        return a
    return a.astype(complex)


def derivative(f, x):
    """Derivative of a scalar function at ``x`` (real or complex direction 1)."""
    t = new_tag()
    return split(f(Dual(x, 1.0, t)), t)[1]


def directional_derivative(f, X, direction):
    """d/dt f(X + t*direction) at t = 0, for list-valued points."""
    t = new_tag()
    args = [x if d == 0 else x + Dual(0.0, d, t) for x, d in zip(X, direction)]
    return split(f(args), t)[1]


def jacobian(f, x, seeds):
    """Columns of the Jacobian of a list-valued ``f`` along each seed vector.

    Returns ``(value, J)`` with ``J[:, k] = d f / d seed_k``.
    """
    x = list(x)
    cols = []
    value = None
    for k, seed in enumerate(seeds):
        t = new_tag()
        args = [xi if s == 0 else xi + Dual(0.0, s, t) for xi, s in zip(x, seed)]
        out = f(args)
        parts = [split(o, t) for o in out]
        value = [p[0] for p in parts]
        cols.append([p[1] for p in parts])
    if value is None:
        value = f(x)
    J = np.array(cols, dtype=complex).T if cols else np.zeros((len(value), 0), complex)
    return np.array(value, dtype=complex), J


def mixed_hessian(f, X, rows, cols):
    """Matrix of second derivatives d^2 f / dX[r] dX[c] for r in rows, c in cols.

    Used for Wirtinger blocks: ``rows`` index holomorphic inputs, ``cols`` the
    independent antiholomorphic ones.
    """
    X = list(X)
    out = np.empty((len(rows), len(cols)), dtype=complex)
    value = None
    for a, r in enumerate(rows):
        for b, c in enumerate(cols):
            t1 = new_tag()
            t2 = new_tag()
            args = list(X)
            args[r] = args[r] + Dual(0.0, 1.0, t1)
            args[c] = args[c] + Dual(0.0, 1.0, t2)
            y = _call(f, args, r)
            outer, d2 = split(y, t2)
            value = split(outer, t1)[0]
            out[a, b] = complex(split(d2, t1)[1])
    return value, out
