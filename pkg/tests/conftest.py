import itertools
import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from lmrm import kernels
from lmrm.perm import Permutation

settings.register_profile("default", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

BACKENDS = ["pure"] + (["compiled"] if kernels.compiled is not None else [])


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@st.composite
def perms(draw, n=None, max_n=8):
    if n is None:
        n = draw(st.integers(1, max_n))
    return Permutation(draw(st.permutations(range(1, n + 1))))


def brute_weights(n):
    """Max displacement of every permutation of [n], straight from itertools."""
    return [max(abs(v - i) for i, v in enumerate(p, 1)) for p in itertools.permutations(range(1, n + 1))]


def linf(f, g):
    return max(abs(a - b) for a, b in zip(f, g))


def random_perm(n, rng=None):
    rng = rng or random
    p = list(range(1, n + 1))
    rng.shuffle(p)
    return Permutation(p)
