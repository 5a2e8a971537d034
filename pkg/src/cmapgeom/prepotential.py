"""Holomorphic prepotentials F(X) homogeneous of degree two.

Storage slot ``k`` holds the conventional label ``I = k + 1``; the special
index ``I = 1`` sits in slot 0.  Every public message speaks in labels.
"""

from __future__ import annotations

import itertools
import numpy as np

from .errors import ConfigurationError, SingularEvaluationError
from .numerics import holomorphic_jet
from .numerics.dual import conj, primal
from .numerics.jets import ComplexJet


class Prepotential:
    """Base class.  Subclasses implement :meth:`__call__` with plain arithmetic
    so that it accepts complex numbers, numpy arrays and duals alike."""

    n: int = 0
    #: slots where F has a pole when the coordinate vanishes
    singular_slots: tuple = ()

    @property
    def size(self) -> int:
        return self.n + 1

    def __call__(self, X):
        raise NotImplementedError

    def check_admissible(self, X):
        if len(X) != self.size:
            raise ConfigurationError(f"expected {self.size} coordinates, got {len(X)}")
        for k in self.singular_slots:
            if primal(X[k]) == 0:
                raise SingularEvaluationError(
                    f"prepotential is singular at X^{k + 1} = 0", index=k
                )

    def jet(self, X, order: int = 2) -> ComplexJet:
        """(F, F_I, F_IJ) at ``X``; ``X`` may carry dual perturbations."""
        self.check_admissible(X)
        return holomorphic_jet(self, list(X), hessian=order >= 2)

    def conj_jet(self, Xbar, order: int = 2) -> ComplexJet:
        """Jet of the conjugate function ``Fbar(Y) = conj(F(conj(Y)))`` at ``Xbar``.

        With duals this yields ``Fbar_I(Xbar)`` etc. as functions of an
        independent antiholomorphic variable.
        """
        j = self.jet([conj(x) for x in Xbar], order=order)
        return ComplexJet(conj(j.value), _conj_array(j.gradient), _conj_array(j.hessian))

    def describe(self) -> dict:
        raise NotImplementedError


def _conj_array(a):
    if a.dtype == object:
        out = np.empty(a.shape, dtype=object)
        for idx, e in np.ndenumerate(a):
            out[idx] = conj(e)
        return out
    return a.conj()


def eval_jet(P: Prepotential, X) -> ComplexJet:
    return P.jet(X)


class QuadraticModel(Prepotential):
    """``F = -i sum_I s_I (X^I)^2`` with ``s_1 = +1``.

    With signs ``(+1, -1, ..., -1)`` the positivity domain is the open unit
    ball in the projective coordinates.
    """

    def __init__(self, signs):
        signs = [int(s) for s in signs]
        if not signs or any(s not in (1, -1) for s in signs):
            raise ConfigurationError("quadratic signs must be a non-empty list of +1/-1")
        if signs[0] != 1:
            raise ConfigurationError("the first quadratic sign must be +1")
        self.signs = tuple(signs)
        self.n = len(signs) - 1

    def __call__(self, X):
        acc = 0
        for s, x in zip(self.signs, X):
            acc = acc + s * (x * x)
        return -1j * acc

    def describe(self):
        return {"kind": "quadratic", "n": self.n, "signs": list(self.signs)}

    def __repr__(self):
        return f"QuadraticModel(signs={list(self.signs)})"


class CubicModel(Prepotential):
    """``F = d_ABC X^A X^B X^C / X^1`` summed over all ``A, B, C`` in ``2..n+1``.

    ``d`` is either a full symmetric ``n x n x n`` array (axis ``k`` labels
    ``k + 2``) or a mapping ``{(A, B, C): value}`` with labels, expanded to
    all permutations.
    """

    singular_slots = (0,)

    def __init__(self, d, n: int | None = None):
        if isinstance(d, dict):
            labels = [lab for key in d for lab in key]
            if any(lab < 2 for lab in labels):
                raise ConfigurationError("cubic coefficient labels start at 2")
            n = n if n is not None else max(labels) - 1
            if max(labels) > n + 1:
                raise ConfigurationError(f"label {max(labels)} exceeds n + 1 = {n + 1}")
            tensor = np.zeros((n, n, n))
            for key, val in d.items():
                for perm in itertools.permutations([lab - 2 for lab in key]):
                    tensor[perm] = float(val)
        else:
            tensor = np.asarray(d, dtype=float)
            if tensor.ndim != 3 or len(set(tensor.shape)) != 1:
                raise ConfigurationError("cubic coefficients must form an n x n x n array")
            for perm in itertools.permutations(range(3)):
                if not np.allclose(tensor, tensor.transpose(perm), atol=0, rtol=1e-14):
                    raise ConfigurationError("cubic coefficients are not totally symmetric")
            n = tensor.shape[0]
        if n < 1:
            raise ConfigurationError("a cubic model needs n >= 1")
        self.n = n
        self.d = tensor
        # unique sorted triples with their permutation multiplicity
        self._terms = []
        for a, b, c in itertools.combinations_with_replacement(range(n), 3):
            if tensor[a, b, c] != 0.0:
                mult = len(set(itertools.permutations((a, b, c))))
                self._terms.append((a + 1, b + 1, c + 1, mult * float(tensor[a, b, c])))

    @classmethod
    def stu(cls):
        """``F = X^2 X^3 X^4 / X^1``."""
        return cls({(2, 3, 4): 1.0 / 6.0})

    def __call__(self, X):
        acc = 0
        for a, b, c, coef in self._terms:
            acc = acc + coef * (X[a] * X[b] * X[c])
        return acc / X[0]

    def describe(self):
        entries = [[a + 1, b + 1, c + 1, coef / len(set(itertools.permutations((a, b, c))))]
                   for a, b, c, coef in self._terms]
        return {"kind": "cubic", "n": self.n, "d": entries}

    def __repr__(self):
        return f"CubicModel(n={self.n}, terms={len(self._terms)})"


class UserPrepotential(Prepotential):
    """Wrap a user callable ``f(X)``; it must use only arithmetic and the
    functions from :mod:`cmapgeom.numerics.dual`."""

    def __init__(self, func, n: int, singular_slots=(), name: str = "user"):
        self.func = func
        self.n = int(n)
        self.singular_slots = tuple(singular_slots)
        self.name = name

    def __call__(self, X):
        return self.func(X)

    def describe(self):
        return {"kind": self.name, "n": self.n}


class ShiftedPrepotential(Prepotential):
    """``F + c``: breaks homogeneity; exists to exercise the homogeneity gate."""

    def __init__(self, base: Prepotential, constant: complex):
        self.base = base
        self.constant = constant
        self.n = base.n
        self.singular_slots = base.singular_slots

    def __call__(self, X):
        return self.base(X) + self.constant

    def describe(self):
        out = dict(self.base.describe())
        out["constant"] = _json_number(self.constant)
        return out


def _json_number(c):
    c = complex(c)
    return c.real if c.imag == 0 else [c.real, c.imag]


def homogeneity_residual(P: Prepotential, X) -> tuple[float, float]:
    """``(|X^I F_I - 2F|, max_I |F_IJ X^J - F_I|)``; both vanish for degree two."""
    X = np.asarray(X, dtype=complex)
    j = P.jet(X)
    euler1 = abs(complex(X @ j.gradient - 2 * j.value))
    euler2 = float(np.max(np.abs(j.hessian @ X - j.gradient), initial=0.0))
    return euler1, euler2


def homogeneity_scale(P: Prepotential, X) -> float:
    j = P.jet(X)
    return max(1.0, abs(complex(j.value)), float(np.max(np.abs(j.gradient), initial=0.0)))


def from_config(model: dict) -> Prepotential:
    """Build a prepotential from the declarative ``model`` block of a config."""
    if not isinstance(model, dict):
        raise ConfigurationError("model must be a JSON object")
    kind = model.get("kind")
    if kind == "quadratic":
        if "signs" in model:
            P = QuadraticModel(model["signs"])
        elif "n" in model:
            P = QuadraticModel([1] + [-1] * int(model["n"]))
        else:
            raise ConfigurationError("quadratic model needs 'signs' or 'n'")
    elif kind == "cubic":
        if model.get("preset") == "stu":
            P = CubicModel.stu()
        elif "d" in model:
            d = model["d"]
            if d and isinstance(d[0], (list, tuple)) and len(d[0]) == 4 and not isinstance(d[0][0], list):
                P = CubicModel({tuple(int(x) for x in e[:3]): float(e[3]) for e in d},
                               n=model.get("n"))
            else:
                P = CubicModel(d)
        else:
            raise ConfigurationError("cubic model needs 'd' or preset 'stu'")
    else:
        raise ConfigurationError(f"unknown model kind {kind!r}")
    if "n" in model and int(model["n"]) != P.n:
        raise ConfigurationError(f"declared n = {model['n']} but the model has n = {P.n}")
    c = model.get("constant")
    if c:
        c = complex(*c) if isinstance(c, list) else complex(c)
        P = ShiftedPrepotential(P, c)
    return P


BUILTINS = {
    "quadratic_n0": lambda: QuadraticModel([1]),
    "quadratic_n1": lambda: QuadraticModel([1, -1]),
    "stu": CubicModel.stu,
}
