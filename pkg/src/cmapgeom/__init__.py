"""Numerical c-map: quaternion-Kähler metrics, hyperkähler cones and twistor
potentials built from a degree-two prepotential, with cross-checks."""

from .errors import CMapError
from .hkc import (
    HKCPoint,
    O2Section,
    SU2Params,
    calL_closed,
    calL_contour,
    h_function,
    hk_potential,
    laplace_residual,
    legendre_solve,
    u1_invariance_residual,
)
from .prepotential import (
    CubicModel,
    Prepotential,
    QuadraticModel,
    UserPrepotential,
    eval_jet,
    homogeneity_residual,
)
from .qk_metric import FSPoint, GActionParams, fs_metric, g_action, isometry_residual, signature_check
from .special_kahler import domain_check, projective_potential, sk_data
from .twistor import (
    TwistorPoint,
    compare_metrics,
    coords_fs_to_twistor,
    holomorphic_one_form,
    qk_metric_from_twistor,
    twistor_potential,
)

__version__ = "0.1.0"

__all__ = [
    "CMapError",
    "CubicModel",
    "FSPoint",
    "GActionParams",
    "HKCPoint",
    "O2Section",
    "Prepotential",
    "QuadraticModel",
    "SU2Params",
    "TwistorPoint",
    "UserPrepotential",
    "calL_closed",
    "calL_contour",
    "compare_metrics",
    "coords_fs_to_twistor",
    "domain_check",
    "eval_jet",
    "fs_metric",
    "g_action",
    "h_function",
    "hk_potential",
    "holomorphic_one_form",
    "homogeneity_residual",
    "isometry_residual",
    "laplace_residual",
    "legendre_solve",
    "projective_potential",
    "qk_metric_from_twistor",
    "signature_check",
    "sk_data",
    "twistor_potential",
    "u1_invariance_residual",
]
