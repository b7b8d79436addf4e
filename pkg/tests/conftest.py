import numpy as np
import pytest

from toephankel import make_shift


@pytest.fixture(scope="session")
def shift2():
    return make_shift(2.0)


@pytest.fixture(scope="session")
def all_shifts():
    return [make_shift(b) for b in (2.0, 2.0j, 1.5 + 0.5j)]


@pytest.fixture
def rng():
    return np.random.default_rng(20250809)


def circle(n=512, offset=0.2371):
    return np.exp(2j * np.pi * (np.arange(n) + offset) / n)
