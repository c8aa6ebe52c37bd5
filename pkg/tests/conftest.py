import random

import pytest

from qbc.scalars import random_point


def make_point(seed, m=0, n=0, params="abcdqtu", fixed=None):
    names = list(params) + [f"x{i}" for i in range(1, m + 1)] + [f"y{k}" for k in range(1, n + 1)]
    return random_point(random.Random(seed), names, fixed)


@pytest.fixture
def point():
    return make_point
