import random

import pytest

from borderline.candidates import TestSet

# TestSet is library API, not a test class
TestSet.__test__ = False


@pytest.fixture
def rng():
    return random.Random(0xBEEF)


def make_rng(seed: int = 0xBEEF) -> random.Random:
    return random.Random(seed)
