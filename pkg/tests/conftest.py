import pytest

from liediv.grt import grt_solve


@pytest.fixture(scope="session")
def solver_element():
    """Session cache for the one-dimensional solver outputs."""
    cache = {}

    def get(weight):
        if weight not in cache:
            sol = grt_solve(weight)
            assert sol.dimension == 1, (weight, sol.dimension)
            cache[weight] = sol.elements[0]
        return cache[weight]

    return get
