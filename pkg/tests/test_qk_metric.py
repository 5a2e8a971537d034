import numpy as np
import pytest

from cmapgeom.errors import OutsideDomainError
from cmapgeom.qk_metric import (
    FSPoint,
    GActionParams,
    action_jacobian,
    basis_labels,
    compose,
    fs_metric,
    g_action,
    isometry_residual,
    pullback_residual,
    scale_A_only,
    signature_check,
)
from cmapgeom.prepotential import QuadraticModel
from cmapgeom.sampling import fs_points, group_elements


def test_origin_quadratic_n0(origin_n0):
    M = fs_metric(QuadraticModel([1]), origin_n0)
    np.testing.assert_allclose(M, np.diag([1.0, 1.0, 4.0, 0.25]), atol=1e-15)


def test_dilaton_scaling_quadratic_n0():
    M = fs_metric(QuadraticModel([1]), FSPoint.make(np.log(2), 0, [0], [0]))
    assert M[1, 1] == pytest.approx(0.25)
    assert M[2, 2] == pytest.approx(2.0)


def test_signature_origin(origin_n0):
    np.testing.assert_allclose(signature_check(QuadraticModel([1]), origin_n0), [0.25, 1, 1, 4])


def test_outside_domain_rejected():
    pt = FSPoint.make(0, 0, [0, 0], [0, 0], [1.5])
    with pytest.raises(OutsideDomainError) as info:
        fs_metric(QuadraticModel([1, -1]), pt)
    assert info.value.verdict == "positivity"


def test_vector_roundtrip(model, rng):
    pt = fs_points(model, rng, 1)[0]
    back = FSPoint.from_vector(pt.to_vector(), model.n)
    np.testing.assert_array_equal(back.to_vector(), pt.to_vector())
    assert len(basis_labels(model.n)) == pt.dim == 4 * (model.n + 1)


def test_metric_properties(model, rng):
    for pt in fs_points(model, rng, 100):
        M = fs_metric(model, pt)
        assert np.array_equal(M, M.T)
        assert np.linalg.eigvalsh(M)[0] > 0
        assert M[1, 1] == pytest.approx(np.exp(-2 * pt.phi), rel=1e-14)


def test_identity_action(origin_n0):
    g = GActionParams.identity(0)
    out = g_action(origin_n0, g)
    np.testing.assert_array_equal(out.to_vector(), origin_n0.to_vector())
    assert isometry_residual(QuadraticModel([1]), origin_n0, g) == 0.0


def test_beta_action():
    pt = FSPoint.make(0, 1, [1], [1])
    out = g_action(pt, GActionParams(np.log(2), 0, np.zeros(1), np.zeros(1)))
    # A, B scale by 2, sigma by 4; the dilaton shifts by twice beta
    assert out.A[0] == pytest.approx(2) and out.B[0] == pytest.approx(2)
    assert out.sigma == pytest.approx(4)
    assert out.phi == pytest.approx(2 * np.log(2))
    literal = g_action(pt, GActionParams(np.log(2), 0, np.zeros(1), np.zeros(1)), dilaton_weight=1.0)
    assert literal.phi == pytest.approx(np.log(2))


def test_B_shift_action():
    pt = FSPoint.make(0.2, 0.5, [0.3, -0.4], [1.0, 2.0], [0.1j])
    eps = np.array([0.7, -0.2])
    out = g_action(pt, GActionParams(0.0, 0.0, np.zeros(2), eps))
    np.testing.assert_allclose(out.B, pt.B + eps)
    assert out.sigma == pytest.approx(pt.sigma - 0.5 * eps @ pt.A)


def test_action_jacobian_matches_fd(rng):
    pt = FSPoint.make(0.2, 0.5, [0.3, -0.4], [1.0, 2.0], [0.1j])
    g = group_elements(1, rng, 1)[0]
    J = action_jacobian(pt, g)
    x = pt.to_vector()
    h = 1e-6
    for k in range(x.size):
        xp, xm = x.copy(), x.copy()
        xp[k] += h
        xm[k] -= h
        col = (g_action(FSPoint.from_vector(xp, 1), g).to_vector()
               - g_action(FSPoint.from_vector(xm, 1), g).to_vector()) / (2 * h)
        np.testing.assert_allclose(J[:, k], col, atol=1e-8)


def test_isometries(model, rng):
    pts = fs_points(model, rng, 50)
    for pt, g in zip(pts, group_elements(model.n, rng, 50)):
        assert isometry_residual(model, pt, g) <= 1e-10


def test_literal_dilaton_weight_is_not_isometric(model, rng):
    pt = fs_points(model, rng, 1)[0]
    g = GActionParams(0.5, 0.0, np.zeros(model.size), np.zeros(model.size))
    assert isometry_residual(model, pt, g, dilaton_weight=1.0) > 0.1


def test_corrupted_action_control(model, rng):
    pt = fs_points(model, rng, 1)[0]
    pt = FSPoint(pt.phi, pt.sigma, np.ones(model.size), pt.B, pt.Z)
    image, J = scale_A_only(pt, 0.5)
    assert pullback_residual(model, pt, image, J) > 0.1


def test_composition_law(rng):
    pt = FSPoint.make(0.2, 0.5, [0.3, -0.4], [1.0, 2.0], [0.1j])
    for g1, g2 in zip(group_elements(1, rng, 20), group_elements(1, rng, 20)):
        a = g_action(g_action(pt, g1), g2).to_vector()
        b = g_action(pt, compose(g2, g1)).to_vector()
        assert np.max(np.abs(a - b)) <= 1e-12 * max(1.0, np.max(np.abs(a)))
