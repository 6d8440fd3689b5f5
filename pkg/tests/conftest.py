import random

import pytest

from grouphandover.groups import P256, TOY


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture
def toy():
    return TOY


@pytest.fixture
def p256():
    return P256
