"""Shared fixtures: the parameter grids and a few well-known sequences."""

import pytest

from lucasdual import LucasParams
from lucasdual.grids import constructible_grid, nondegenerate_grid


@pytest.fixture(scope="session")
def fibonacci() -> LucasParams:
    return LucasParams(1, -1)


@pytest.fixture(scope="session")
def mersenne() -> LucasParams:
    # U_n(3,2) = 2^n - 1
    return LucasParams(3, 2)


@pytest.fixture(scope="session")
def grid() -> tuple[LucasParams, ...]:
    return constructible_grid()


@pytest.fixture(scope="session")
def nondegenerate() -> tuple[LucasParams, ...]:
    return nondegenerate_grid()
