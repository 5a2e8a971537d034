"""Numerical substrate: dual-number jets, circle quadrature, hermitian forms."""

from .dual import Dual, conj, exp, log, sqrt, primal
from .jets import (
    ComplexJet,
    derivative,
    directional_derivative,
    holomorphic_jet,
    jacobian,
    mixed_hessian,
)
from .linalg import (
    complex_to_real_jacobian,
    hermitian_to_real,
    hermiticity_residual,
    is_negative_definite,
    line_element,
    pullback_hermitian,
    solve,
    sorted_eigenvalues,
)
from .quadrature import MIN_SAMPLES, circle_integral, circle_nodes
from .finite_diff import central_gradient, stencil_derivative

__all__ = [
    "Dual", "conj", "exp", "log", "sqrt", "primal",
    "ComplexJet", "derivative", "directional_derivative", "holomorphic_jet",
    "jacobian", "mixed_hessian",
    "complex_to_real_jacobian", "hermitian_to_real", "hermiticity_residual",
    "is_negative_definite", "line_element", "pullback_hermitian", "solve",
    "sorted_eigenvalues",
    "MIN_SAMPLES", "circle_integral", "circle_nodes",
    "central_gradient", "stencil_derivative",
]
