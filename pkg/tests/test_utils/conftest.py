import numpy as np
import pytest


@pytest.fixture
def samples():
    return np.arange(6) * (1 + 1j)


@pytest.fixture
def hermitian_like():
    return np.array([[1.0, 2.0 + 1j], [0.0, 3.0]])


@pytest.fixture
def fortran_array():
    return np.asfortranarray(np.arange(12).reshape(3, 4))
