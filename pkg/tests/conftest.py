import math

import numpy as np
import pytest
from hypothesis import settings

from tiltosc.coherent import TiltParams
from tiltosc.fock import TwoModeBasis

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")


@pytest.fixture(scope="session")
def basis24():
    return TwoModeBasis(24)


@pytest.fixture(scope="session")
def basis12():
    return TwoModeBasis(12)


def model_tilt(omega=4.0, lam=0.5, psi=0.0):
    # independent of the library: tanh(tau) = lambda / omega, theta = pi/2
    return TiltParams(math.atanh(lam / omega), psi, math.pi / 2, psi)


def interior_block(x, basis, buffer):
    x = getattr(x, "data", x)
    idx = basis.interior(buffer)
    return np.asarray(x)[np.ix_(idx, idx)]
