import pytest
from hypothesis import HealthCheck, settings

from maxcore.matrix import TropicalMatrix, TropicalVector

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture
def M():
    """Shorthand constructor: ``M([[1, E], [0, 0]])``."""
    return TropicalMatrix


@pytest.fixture
def V():
    return TropicalVector
