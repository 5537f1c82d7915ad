import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from orlicz_lorentz import PowerWeight, StepWeight

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture
def sqrt_weight():
    """w(t) = 1/(2 sqrt t), so W(t) = sqrt t."""
    return PowerWeight(0.5, 0.5)


@pytest.fixture
def unit_weight():
    return StepWeight.constant(1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
