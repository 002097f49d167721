import os
import random

import pytest

from cubeiso import gauss


def scale(full: int, reduced: int) -> int:
    """Sample count: the full-scale figure under CUBEISO_TEST_SCALE=full,
    a faster default otherwise."""
    return full if os.environ.get("CUBEISO_TEST_SCALE") == "full" else reduced


@pytest.fixture(scope="session")
def constants():
    return gauss.profile_constants()


@pytest.fixture()
def rng():
    return random.Random(0xC0FFEE)
