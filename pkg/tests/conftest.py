import pytest
from hypothesis import HealthCheck, settings

from otk.matroid import VectorConfig

# derandomized so that every run draws the same examples
settings.register_profile(
    "default",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture
def config_a():
    """Two opposite vectors on a line."""
    return VectorConfig(1, ((1,), (-1,)), (0, -1))


@pytest.fixture
def config_b():
    """(1,0), (0,1), (1,1)."""
    return VectorConfig(2, ((1, 0), (0, 1), (1, 1)), (0, 0, 1))


@pytest.fixture
def config_d():
    """A non-unimodular rank-2 configuration with four circuits."""
    return VectorConfig(2, ((1, 0), (0, 1), (1, 1), (1, -1)))


@pytest.fixture
def basis_config():
    return VectorConfig(2, ((1, 0), (0, 1)), (0, 0))
