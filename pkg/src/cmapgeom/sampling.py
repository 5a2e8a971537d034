"""Deterministic random points for sweeps.

All randomness comes from numpy's PCG64 bit generator (64-bit output,
128-bit state).  Each check draws from its own child stream obtained by
``SeedSequence(seed).spawn``, so adding a check never perturbs another's points.
"""

from __future__ import annotations

import numpy as np

from .hkc import HKCPoint
from .qk_metric import FSPoint, GActionParams
from .special_kahler import n_matrix, sample_domain

PRNG_NAME = "PCG64"


def streams(seed: int, names) -> dict:
    children = np.random.SeedSequence(seed).spawn(len(names))
    return {name: np.random.Generator(np.random.PCG64(ss)) for name, ss in zip(names, children)}


def fs_points(P, rng, count: int, box=None) -> list[FSPoint]:
    m = P.size
    out = []
    for Z in sample_domain(P, rng, count, box):
        phi, sigma = rng.uniform(-1, 1, size=2)
        out.append(FSPoint(float(phi), float(sigma), rng.uniform(-1, 1, m), rng.uniform(-1, 1, m), Z))
    return out


def group_elements(n: int, rng, count: int, bound: float = 1.0) -> list[GActionParams]:
    m = n + 1
    out = []
    for _ in range(count):
        beta, alpha = rng.uniform(-bound, bound, size=2)
        out.append(GActionParams(float(beta), float(alpha),
                                 rng.uniform(-bound, bound, m), rng.uniform(-bound, bound, m)))
    return out


def _rotated(Z, rng):
    r = rng.uniform(0.5, 2.0)
    theta = rng.uniform(0, 2 * np.pi)
    return r * np.exp(1j * theta) * Z


def section_points(P, rng, count: int, box=None) -> list[tuple[np.ndarray, np.ndarray]]:
    """``(v, G)`` pairs with ``v`` in the cone over the domain and ``G^0 > 0``."""
    out = []
    for Z in sample_domain(P, rng, count, box):
        v = _rotated(Z, rng)
        G = np.concatenate([[rng.uniform(0.5, 2.0)], rng.uniform(-1, 1, P.size)])
        out.append((v, G))
    return out


def hkc_points(P, rng, count: int, box=None) -> list[HKCPoint]:
    """Points with positive cone radicand ``u N^-1 u - u_0``."""
    out = []
    for Z in sample_domain(P, rng, count, box):
        v = _rotated(Z, rng)
        N = np.real(np.array(n_matrix(P, list(v), list(np.conj(v))), dtype=complex))
        u = rng.uniform(-1, 1, P.size)
        u0 = float(u @ np.linalg.solve(N, u)) - rng.uniform(0.5, 2.0)
        w = 0.5 * u + 1j * rng.uniform(-1, 1, P.size)
        w0 = 0.5 * u0 + 1j * rng.uniform(-1, 1)
        out.append(HKCPoint(v, complex(w0), w))
    return out
