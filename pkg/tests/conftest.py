import numpy as np
import pytest

from cmapgeom.prepotential import CubicModel, QuadraticModel
from cmapgeom.qk_metric import FSPoint

MODELS = {
    "quadratic_n0": lambda: QuadraticModel([1]),
    "quadratic_n1": lambda: QuadraticModel([1, -1]),
    "stu": CubicModel.stu,
}


@pytest.fixture(params=sorted(MODELS))
def model(request):
    return MODELS[request.param]()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def origin_n0():
    return FSPoint.make(0.0, 0.0, [0.0], [0.0])
