import numpy as np
import pytest
import scipy.linalg
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def jordan(lam, k):
    return lam * np.eye(k, dtype=complex) + np.diag(np.ones(k - 1), 1)


def direct_sum(*blocks):
    return scipy.linalg.block_diag(*blocks).astype(complex)


def pinv_drazin(a, k):
    """Independent oracle: ``A^D = A^k (A^(2k+1))^+ A^k``."""
    ak = np.linalg.matrix_power(a, k)
    return ak @ np.linalg.pinv(np.linalg.matrix_power(a, 2 * k + 1)) @ ak


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
