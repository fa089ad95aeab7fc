import random

import pytest

from core.gorenstein.contexts import GorensteinContextFactory
from core.linear.exact_linear import RingDesc

SEED = 20240601


@pytest.fixture
def z() -> RingDesc:
    return RingDesc.integers()


@pytest.fixture
def z2() -> RingDesc:
    return RingDesc.mod(2)


@pytest.fixture
def z4() -> RingDesc:
    return RingDesc.mod(4)


@pytest.fixture
def z6() -> RingDesc:
    return RingDesc.mod(6)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(SEED)


@pytest.fixture(autouse=True)
def fresh_contexts():
    yield
    GorensteinContextFactory.reset()
