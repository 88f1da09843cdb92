from functools import lru_cache

import pytest

from fracqm.tfsolver import OdeConfig, shoot


@lru_cache(maxsize=None)
def _solve(alpha, x_max=400.0):
    return shoot(alpha, OdeConfig(x_max=x_max))


@pytest.fixture(scope="session")
def solve():
    """Cached converged screening solutions keyed by ``(alpha, x_max)``."""
    return _solve
