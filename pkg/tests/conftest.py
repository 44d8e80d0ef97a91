import random

import pytest


@pytest.fixture
def rng():
    # fresh deterministic generator per test
    return random.Random(987654321)
