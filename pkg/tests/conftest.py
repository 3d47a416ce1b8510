import warnings

import pytest
from hypothesis import settings

from qcav.physical import SystemParams, desk_params

settings.register_profile("qcav", deadline=None, max_examples=60)
settings.load_profile("qcav")


@pytest.fixture
def desk():
    """Desk-scale branch dynamics: omega = 1, delta = 0.02, eta = 0.3, cutoff 60."""
    return desk_params()


@pytest.fixture
def strong():
    """Large-phi0 set where the cosine nonlinearity is visible at cutoff 40."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return SystemParams(e_c=4.0, e_j=1.0, n_g=0.5, phi_e=0.7, phi0=0.3, omega=1.0, cutoff=40)
