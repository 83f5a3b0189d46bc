import random

import pytest
from hypothesis import settings

settings.register_profile("ci", max_examples=100, deadline=None)
settings.load_profile("ci")


@pytest.fixture
def rng():
    return random.Random(12345)
