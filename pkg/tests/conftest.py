import functools

import pytest
from hypothesis import HealthCheck, settings

from zolorank.experiments import setup_figure

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def _setup(fig):
    return setup_figure(fig)


@pytest.fixture(scope="session")
def figure_setup():
    """Cached experiment setups; the matrix and its SVD are computed once per figure."""
    return _setup
