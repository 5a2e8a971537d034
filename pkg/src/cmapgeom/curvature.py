"""Finite-difference Levi-Civita connection and Ricci tensor of a metric field."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePointError
from .numerics import stencil_derivative

DEFAULT_STEP = 1e-3


def _inverse(g):
    try:
        ginv = np.linalg.inv(g)
    except np.linalg.LinAlgError as exc:
        raise DegeneratePointError("metric is singular") from exc
    if np.linalg.cond(g) > 1e12:
        raise DegeneratePointError("metric is numerically singular")
    return ginv


def christoffel(metric_fn, x, step: float = DEFAULT_STEP, order: int = 4) -> np.ndarray:
    """``Gamma[a, b, c] = Gamma^a_{bc}``, symmetrized in ``(b, c)``."""
    x = np.asarray(x, dtype=float)
    g = np.asarray(metric_fn(x))
    d = g.shape[0]
    ginv = _inverse(g)
    dg = np.array([stencil_derivative(metric_fn, x, c, step, order) for c in range(d)])
    # lowered: Gamma_{d b c} = (d_b g_dc + d_c g_db - d_d g_bc) / 2
    low = 0.5 * (np.einsum("bdc->dbc", dg) + np.einsum("cdb->dbc", dg) - dg)
    gam = np.einsum("ad,dbc->abc", ginv, low)
    return 0.5 * (gam + gam.transpose(0, 2, 1))


def ricci(metric_fn, x, step: float = DEFAULT_STEP, order: int = 4) -> np.ndarray:
    """``R_bd = d_a G^a_bd - d_d G^a_ab + G^a_ae G^e_bd - G^a_de G^e_ab``."""
    x = np.asarray(x, dtype=float)
    d = x.size
    gam = christoffel(metric_fn, x, step, order)
    dgam = np.array([
        stencil_derivative(lambda y: christoffel(metric_fn, y, step, order), x, c, step, order)
        for c in range(d)
    ])  # dgam[c, a, b, e] = d_c Gamma^a_be
    R = (np.einsum("aabd->bd", dgam)
         - np.einsum("daab->bd", dgam)
         + np.einsum("aae,ebd->bd", gam, gam)
         - np.einsum("ade,eab->bd", gam, gam))
    return 0.5 * (R + R.T)


@dataclass(frozen=True)
class EinsteinResult:
    lam: float
    residual: float

    def as_dict(self):
        return {"lambda": self.lam, "residual": self.residual}


def einstein_residual(metric_fn, x, step: float = DEFAULT_STEP, order: int = 4) -> EinsteinResult:
    """``lambda = tr(g^-1 Ric)/dim`` and ``|Ric - lambda g|_max / |g|_max``."""
    x = np.asarray(x, dtype=float)
    g = np.asarray(metric_fn(x))
    Ric = ricci(metric_fn, x, step, order)
    lam = float(np.trace(_inverse(g) @ Ric) / g.shape[0])
    res = float(np.max(np.abs(Ric - lam * g)) / np.max(np.abs(g)))
    return EinsteinResult(lam, res)


def step_convergence(metric_fn, x, step: float = DEFAULT_STEP) -> tuple[EinsteinResult, EinsteinResult]:
    """Einstein data at ``step`` and ``step/2``, for reporting convergence."""
    return einstein_residual(metric_fn, x, step), einstein_residual(metric_fn, x, step / 2)


# -- reference geometries for the oracle suite ----------------------------------

def euclidean_metric(dim: int):
    return lambda x: np.eye(dim)


def sphere_metric(x):
    """Unit 2-sphere in (theta, phi)."""
    return np.diag([1.0, np.sin(x[0]) ** 2])


def hyperbolic_metric(x):
    """Upper half plane, ``(dx^2 + dy^2)/y^2``."""
    return np.eye(2) / x[1] ** 2
