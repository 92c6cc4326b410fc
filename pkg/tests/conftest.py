import numpy as np
import pytest

from surfemit import InterfaceConfig


@pytest.fixture
def cfg():
    return InterfaceConfig(n1=1.45, lambda0_nm=852.0)


@pytest.fixture
def rng():
    return np.random.default_rng(42)
