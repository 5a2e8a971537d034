"""Central finite-difference stencils.

Used by the curvature module and as an independent oracle for the dual-number
derivatives; never on the path of a derivative that the metric routes compare.
"""

from __future__ import annotations

import numpy as np

# weights for offsets -2h, -h, h, 2h (fourth order)
_W4 = {-2: 1.0 / 12.0, -1: -8.0 / 12.0, 1: 8.0 / 12.0, 2: -1.0 / 12.0}
_W2 = {-1: -0.5, 1: 0.5}


def stencil_derivative(f, x, axis: int, step: float, order: int = 4):
    """Partial derivative of an array-valued ``f`` along coordinate ``axis``."""
    weights = _W4 if order == 4 else _W2
    x = np.asarray(x, dtype=float)
    acc = None
    for k, w in weights.items():
        xs = x.copy()
        xs[axis] += k * step
        term = w * np.asarray(f(xs))
        acc = term if acc is None else acc + term
    return acc / step


def central_gradient(f, x, step: float = 1e-5):
    """Second-order central-difference gradient of a scalar function.

    Works for complex points by stepping along the real axis of each slot,
    which for holomorphic ``f`` equals the complex derivative.
    """
    x = np.asarray(x, dtype=complex)
    g = np.empty(x.size, dtype=complex)
    for i in range(x.size):
        xp = x.copy()
        xm = x.copy()
        xp[i] += step
        xm[i] -= step
        g[i] = (f(xp) - f(xm)) / (2 * step)
    return g
