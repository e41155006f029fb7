import numpy as np
import pytest

from LinCodeProver.boundsTables import import_bounds, load_fixture
from LinCodeProver.smallCodes import exhaustive_table, load_generator

HAMMING_ROWS = "1000011\n0100101\n0010110\n0001111\n"
TWELVE_WEIGHTS = (992, 1008, 1024, 1056, 1088, 1152, 1216, 1280, 1344, 1984, 1986, 1988)
FIVE_WEIGHTS = (992, 1008, 1024, 1056, 1088)


@pytest.fixture(scope="session")
def fixture_table():
    return load_fixture()


@pytest.fixture(scope="session")
def small_table():
    """Exact dmax(n, k) for every n <= 8."""
    return exhaustive_table(8)


@pytest.fixture
def empty_table():
    return import_bounds("")


@pytest.fixture
def hamming():
    return load_generator(HAMMING_ROWS)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
