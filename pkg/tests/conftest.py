"""Shared fixtures: catalog codes are built once per session."""

import numpy as np
import pytest

from iterstbc.catalog import alamouti, iter_silver, jafarkhani, silver


@pytest.fixture(scope="session")
def alamouti_code():
    return alamouti()


@pytest.fixture(scope="session")
def silver_code():
    return silver()


@pytest.fixture(scope="session")
def jafarkhani_code():
    return jafarkhani()


@pytest.fixture(scope="session")
def iter_silver_diverse():
    """Iterated Silver code with theta = -17."""
    return iter_silver("-17")


@pytest.fixture(scope="session")
def iter_silver_grouped():
    """Iterated Silver code with theta = -1 and its 4-group partition."""
    return iter_silver("-1")


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
