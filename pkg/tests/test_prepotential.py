import numpy as np
import pytest

from cmapgeom.errors import ConfigurationError, SingularEvaluationError
from cmapgeom.prepotential import (
    CubicModel,
    QuadraticModel,
    ShiftedPrepotential,
    UserPrepotential,
    eval_jet,
    from_config,
    homogeneity_residual,
)


def _admissible(P, rng):
    X = rng.uniform(-1, 1, P.size) + 1j * rng.uniform(-1, 1, P.size)
    X[0] = 1.0 + 0.5j * X[0].imag
    return X


def test_quadratic_n0_values():
    j = eval_jet(QuadraticModel([1]), [1])
    # F = -i X^2: F = -i, F_1 = -2i, F_11 = -2i
    assert j.value == -1j
    assert j.gradient[0] == -2j
    assert j.hessian[0, 0] == -2j


def test_quadratic_scaling_example():
    assert eval_jet(QuadraticModel([1]), [2]).value == -4j


def test_stu_value():
    assert eval_jet(CubicModel.stu(), [1, 1j, 1j, 1j]).value == -1j


def test_cubic_rejects_zero_special_coordinate():
    with pytest.raises(SingularEvaluationError) as info:
        eval_jet(CubicModel.stu(), [0, 1, 1, 1])
    assert info.value.index == 0


def test_cubic_full_tensor_matches_sparse():
    d = np.zeros((2, 2, 2))
    d[0, 0, 0] = 1.0
    for perm in [(0, 0, 1), (0, 1, 0), (1, 0, 0)]:
        d[perm] = 0.5
    a = CubicModel(d)
    b = CubicModel({(2, 2, 2): 1.0, (2, 2, 3): 0.5})
    X = [1.2 - 0.1j, 0.3 - 1j, -0.4 - 0.7j]
    assert a(X) == pytest.approx(b(X))


def test_cubic_rejects_asymmetric_tensor():
    d = np.zeros((2, 2, 2))
    d[0, 0, 1] = 1.0
    with pytest.raises(ConfigurationError):
        CubicModel(d)


def test_quadratic_needs_leading_plus():
    with pytest.raises(ConfigurationError):
        QuadraticModel([-1, 1])


def test_euler_identities(model, rng):
    for _ in range(100):
        X = _admissible(model, rng)
        r1, r2 = homogeneity_residual(model, X)
        scale = max(1.0, abs(model(list(X))))
        assert r1 <= 1e-12 * scale
        assert r2 <= 1e-12 * scale


@pytest.mark.parametrize("lam", [2.0, 3.0])
def test_jet_scaling(model, rng, lam):
    X = _admissible(model, rng)
    j1 = eval_jet(model, X)
    j2 = eval_jet(model, lam * X)
    assert abs(j2.value - lam ** 2 * j1.value) <= 1e-12 * abs(lam ** 2 * j1.value)
    np.testing.assert_allclose(j2.gradient, lam * j1.gradient, rtol=1e-12, atol=1e-14)
    np.testing.assert_allclose(j2.hessian, j1.hessian, rtol=1e-12, atol=1e-14)


def test_corrupted_model_residual():
    P = ShiftedPrepotential(QuadraticModel([1]), 1.0)
    r1, _ = homogeneity_residual(P, [0.7 + 0.2j])
    assert r1 == pytest.approx(2.0, abs=1e-14)


def test_quadratic_at_imaginary_point():
    assert homogeneity_residual(QuadraticModel([1]), [5j]) == (0.0, 0.0)


def test_user_prepotential():
    P = UserPrepotential(lambda X: -1j * X[0] ** 2 + X[1] ** 3 / X[0], n=1, singular_slots=(0,))
    r1, r2 = homogeneity_residual(P, [1.0, 0.5 - 0.2j])
    assert r1 < 1e-14 and r2 < 1e-14


def test_from_config():
    assert isinstance(from_config({"kind": "quadratic", "signs": [1, -1]}), QuadraticModel)
    stu = from_config({"kind": "cubic", "d": [[2, 3, 4, 1 / 6]]})
    assert stu.n == 3
    assert stu([1, 1j, 1j, 1j]) == pytest.approx(-1j)
    shifted = from_config({"kind": "quadratic", "signs": [1], "constant": 1.0})
    assert isinstance(shifted, ShiftedPrepotential)
    with pytest.raises(ConfigurationError):
        from_config({"kind": "quartic"})
    with pytest.raises(ConfigurationError):
        from_config({"kind": "quadratic", "signs": [1], "n": 2})
