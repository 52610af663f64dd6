import numpy as np
import pytest

from vfe.geometry import SpaceForm
from vfe.verification import standard_curve

MODELS = {
    "euclidean": SpaceForm.euclidean(),
    "spherical": SpaceForm.sphere(),
    "hyperbolic": SpaceForm.hyperbolic(),
}


@pytest.fixture(params=list(MODELS), ids=list(MODELS))
def M(request):
    return MODELS[request.param]


@pytest.fixture
def curve(M):
    """Standard torsioned test curve on the parametrised model, N=64."""
    return standard_curve(M, 64)


def orders(errors):
    e = np.asarray(errors, dtype=float)
    return np.log2(e[:-1] / e[1:])
