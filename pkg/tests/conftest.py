import cmath
import random

import pytest
from hypothesis import settings

from kleinian.moebius import MoebiusMap

settings.register_profile("repro", derandomize=True, deadline=None)
settings.load_profile("repro")


def rand_complex(rng, bound=10.0):
    return complex(rng.uniform(-bound, bound), rng.uniform(-bound, bound))


def rand_map(rng, bound=10.0, min_c=1e-3):
    """A random normalized map with |c| bounded away from zero."""
    while True:
        a, b, c, d = (rand_complex(rng, bound) for _ in range(4))
        det = a * d - b * c
        if abs(det) > 1e-2 and abs(c / cmath.sqrt(det)) > min_c:
            return MoebiusMap(a, b, c, d)


@pytest.fixture
def rng():
    return random.Random(20240601)
