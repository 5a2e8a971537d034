"""Tagged forward-mode dual numbers.

A :class:`Dual` represents ``re + du*eps`` for one infinitesimal ``eps``
identified by an integer tag.  Components may themselves be duals with a
*smaller* tag, which is how higher derivatives are taken: the most recently
created perturbation is always the outermost layer.  The ordering keeps
nested differentiation free of perturbation confusion, so a function that
differentiates internally (e.g. a prepotential Hessian used inside a Kähler
potential) can itself be differentiated.

Conjugation acts componentwise and leaves ``eps`` alone.  With that rule
``conj(f(conj(y)))`` evaluated on duals gives the conjugate function
``fbar(y)`` together with its holomorphic derivatives, which is what lets us
treat ``z`` and ``zbar`` as independent variables.
"""

from __future__ import annotations

import cmath
import itertools
import math

import numpy as np

_tag_counter = itertools.count(1)


def new_tag() -> int:
    return next(_tag_counter)


class Dual:
    __slots__ = ("re", "du", "tag")
    # make numpy defer to our reflected operators
    __array_ufunc__ = None

    def __init__(self, re, du, tag: int):
        self.re = re
        self.du = du
        self.tag = tag

    def __repr__(self):
        return f"Dual[{self.tag}]({self.re!r}, {self.du!r})"

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        t = _top(self, other)
        a, da = _split(self, t)
        b, db = _split(other, t)
        return Dual(a + b, _add(da, db), t)

    __radd__ = __add__

    def __sub__(self, other):
        t = _top(self, other)
        a, da = _split(self, t)
        b, db = _split(other, t)
        return Dual(a - b, _sub(da, db), t)

    def __rsub__(self, other):
        t = _top(self, other)
        a, da = _split(other, t)
        b, db = _split(self, t)
        return Dual(a - b, _sub(da, db), t)

    def __neg__(self):
        return Dual(-self.re, -self.du, self.tag)

    def __pos__(self):
        return self

    def __mul__(self, other):
        t = _top(self, other)
        a, da = _split(self, t)
        b, db = _split(other, t)
        if db is None:
            return Dual(a * b, da * b, t)
        if da is None:
            return Dual(a * b, a * db, t)
        return Dual(a * b, a * db + da * b, t)

    __rmul__ = __mul__

    def __truediv__(self, other):
        t = _top(self, other)
        a, da = _split(self, t)
        b, db = _split(other, t)
        q = a / b
        if db is None:
            return Dual(q, da / b, t)
        if da is None:
            return Dual(q, -(q * db) / b, t)
        return Dual(q, (da - q * db) / b, t)

    def __rtruediv__(self, other):
        t = _top(self, other)
        a, da = _split(other, t)
        b, db = _split(self, t)
        q = a / b
        if da is None:
            return Dual(q, -(q * db) / b, t)
        return Dual(q, (da - q * db) / b, t)

    def __pow__(self, k):
        if isinstance(k, Dual):
            return exp(k * log(self))
        if k == 0:
            return Dual(self.re ** 0, 0 * self.du, self.tag)
        if k == 1:
            return self
        if k == 2:
            return Dual(self.re * self.re, 2 * self.re * self.du, self.tag)
        return Dual(self.re ** k, k * self.re ** (k - 1) * self.du, self.tag)

    def __rpow__(self, base):
        return exp(self * log(base))

    def conjugate(self):
        return Dual(conj(self.re), conj(self.du), self.tag)

    @property
    def primal(self):
        x = self.re
        while isinstance(x, Dual):
            x = x.re
        return x


def _top(x, y) -> int:
    tx = x.tag if isinstance(x, Dual) else 0
    ty = y.tag if isinstance(y, Dual) else 0
    return tx if tx > ty else ty


def _split(x, tag):
    if isinstance(x, Dual) and x.tag == tag:
        return x.re, x.du
    return x, None


def _add(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a + b


def _sub(a, b):
    if b is None:
        return a
    if a is None:
        return -b
    return a - b


# -- elementary functions ------------------------------------------------------

def conj(x):
    if isinstance(x, Dual):
        return x.conjugate()
    if isinstance(x, np.ndarray):
        return np.conj(x)
    if isinstance(x, (int, float)):
        return x
    return x.conjugate()


def exp(x):
    if isinstance(x, Dual):
        e = exp(x.re)
        return Dual(e, e * x.du, x.tag)
    if isinstance(x, np.ndarray):
        return np.exp(x)
    if isinstance(x, complex):
        return cmath.exp(x)
    return math.exp(x)


def log(x):
    if isinstance(x, Dual):
        return Dual(log(x.re), x.du / x.re, x.tag)
    if isinstance(x, np.ndarray):
        return np.log(x)
    if isinstance(x, complex) or x < 0:
        return cmath.log(x)
    return math.log(x)


def sqrt(x):
    if isinstance(x, Dual):
        s = sqrt(x.re)
        return Dual(s, x.du / (2 * s), x.tag)
    if isinstance(x, np.ndarray):
        return np.sqrt(x)
    if isinstance(x, complex) or x < 0:
        return cmath.sqrt(x)
    return math.sqrt(x)


def primal(x):
    while isinstance(x, Dual):
        x = x.re
    return x


def is_finite(x) -> bool:
    """True when every leaf of a (possibly nested) dual is finite."""
    if isinstance(x, Dual):
        return is_finite(x.re) and (x.du is None or is_finite(x.du))
    if isinstance(x, np.ndarray):
        if x.dtype == object:
            return all(is_finite(e) for e in x.flat)
        return bool(np.all(np.isfinite(x)))
    return cmath.isfinite(x)


def split(y, tag):
    """Return ``(value, derivative)`` of ``y`` with respect to perturbation ``tag``."""
    if isinstance(y, Dual):
        if y.tag == tag:
            return y.re, (0 if y.du is None else y.du)
        if y.tag > tag:
            raise RuntimeError("perturbation escaped its differentiation scope")
    return y, 0
