import itertools
import random
from math import factorial

import pytest
from hypothesis import given, strategies as st

from lmrm import codec
from lmrm.constructions import congruence_size, construct_congruence, construct_direct_product, subgroup_closure
from lmrm.errors import LMRMError, UncorrectableError
from lmrm.perm import Permutation

from conftest import linf


def neighbours(f, radius):
    """Every permutation within ``radius`` of f, by filtering S_n."""
    n = len(f)
    return [Permutation(p) for p in itertools.permutations(range(1, n + 1)) if linf(p, f) <= radius]


def test_encode_zero_is_identity():
    for n in range(1, 9):
        for d in range(1, n + 1):
            assert codec.encode(n, d, 0).is_identity()


def test_encode_6_3_hits_the_code():
    words = {codec.encode(6, 3, m) for m in range(8)}
    assert words == set(construct_congruence(6, 3).members())


def test_encode_4_2_digits():
    assert codec.encode(4, 2, 3) == (3, 4, 1, 2)
    assert codec.encode(4, 2, 1) == (3, 2, 1, 4)
    assert codec.encode(4, 2, 2) == (1, 4, 3, 2)
    assert len({codec.encode(4, 2, m) for m in range(4)}) == 4


def test_encode_out_of_range():
    with pytest.raises(LMRMError):
        codec.encode(6, 3, 8)
    with pytest.raises(LMRMError):
        codec.encode(6, 3, -1)


@pytest.mark.parametrize("n", range(1, 9))
def test_roundtrip_exhaustive(n):
    for d in range(1, n + 1):
        if n % d:
            continue
        M = congruence_size(n, d)
        code = construct_congruence(n, d)
        for m in range(min(M, 5040)):
            f = codec.encode(n, d, m)
            assert f in code
            assert codec.decode(n, d, f) == (f, m)


@pytest.mark.parametrize("n,d", [(n, d) for n in range(2, 8) for d in range(1, n + 1) if n % d])
def test_roundtrip_non_divisible(n, d):
    M = congruence_size(n, d)
    image = {codec.encode(n, d, m) for m in range(M)}
    assert image == set(construct_congruence(n, d).members())
    for m in range(M):
        assert codec.message_of(n, d, codec.encode(n, d, m)) == m


@pytest.mark.parametrize("n,d", [(12, 3), (12, 4), (24, 6), (60, 10), (60, 3)])
def test_roundtrip_random_large(n, d):
    rng = random.Random(n * 100 + d)
    M = congruence_size(n, d)
    for _ in range(10_000 if n <= 24 else 2_000):
        m = rng.randrange(M)
        assert codec.decode(n, d, codec.encode(n, d, m))[1] == m


def test_decode_within_radius_6_3():
    for m in range(8):
        f = codec.encode(6, 3, m)
        for g in neighbours(f, 1):
            assert codec.decode(6, 3, g) == (f, m)


@pytest.mark.parametrize("n", range(1, 7))
def test_decode_guarantee_exhaustive(n):
    S = [Permutation(p) for p in itertools.permutations(range(1, n + 1))]
    for d in range(1, n + 1):
        t = (d - 1) // 2
        for f in construct_congruence(n, d).members():
            m = codec.message_of(n, d, f)
            for g in S:
                if linf(f, g) <= t:
                    assert codec.decode(n, d, g) == (f, m)


def test_decode_order_independent():
    rng = random.Random(3)
    n, d = 9, 3
    for _ in range(200):
        y = list(range(1, n + 1))
        rng.shuffle(y)
        forward = [codec.decode_coordinate(n, d, i, v) for i, v in enumerate(y, 1)]
        order = list(range(n))
        rng.shuffle(order)
        backward = {i: codec.decode_coordinate(n, d, i + 1, y[i]) for i in order}
        assert forward == [backward[i] for i in range(n)]


def test_decode_uncorrectable():
    # coordinate 3 reads 1: its candidates 3 and 6 are both more than 1 away
    with pytest.raises(UncorrectableError):
        codec.decode(6, 3, (2, 3, 1, 4, 5, 6))
    with pytest.raises(UncorrectableError):
        # every coordinate has a candidate but the result repeats a value
        codec.decode(6, 3, (2, 3, 6, 1, 5, 4))
    with pytest.raises(LMRMError):
        codec.decode(6, 3, (1, 2, 3))


def test_decode_coordinate_examples():
    assert codec.decode_coordinate(6, 3, 1, 2) == 1
    assert codec.decode_coordinate(6, 3, 1, 5) == 4
    assert codec.decode_coordinate(6, 3, 2, 4) == 5
    assert codec.decode_coordinate(6, 3, 3, 1) is None
    assert codec.decode_coordinate(5, 5, 1, 4) is None


def _c3xc3():
    c3 = subgroup_closure([(2, 3, 1)])
    return construct_direct_product([c3, c3], 6, 2)


def test_product_roundtrip():
    code = _c3xc3()
    for f in code.members():
        g, msgs = codec.decode_product(code, f)
        assert g == f and len(msgs) == 2


def test_product_corrects_radius_one():
    code = _c3xc3()
    for f in code.members():
        for g in neighbours(f, 1):
            assert codec.decode_product(code, g)[0] == f


def test_product_beyond_radius_never_crashes():
    # distance 4 means a word 2 away from f is at least 2 away from every other codeword,
    # so the decoder must either refuse or answer with a codeword within its radius
    code = _c3xc3()
    outcomes = {"refused": 0, "answered": 0}
    for f in code.members():
        for g in neighbours(f, 2):
            if linf(f, g) != 2:
                continue
            try:
                h = codec.decode_product(code, g)[0]
            except UncorrectableError:
                outcomes["refused"] += 1
                continue
            outcomes["answered"] += 1
            assert h in code and h != f and linf(h, g) <= 1
    assert outcomes["refused"] > 0


def test_product_of_congruence_constituents():
    a = construct_congruence(4, 2)
    b = construct_congruence(4, 2)
    code = construct_direct_product([a, b], 8, 2)
    assert code.distance == 4
    for f in code.members():
        assert codec.decode_product(code, f)[0] == f
    word = sorted(code.members())[5]
    for g in neighbours(word, 1):
        assert codec.decode_product(code, g)[0] == word


@given(st.integers(0, factorial(4) ** 3 - 1))
def test_encode_decode_hypothesis(m):
    assert codec.decode(12, 3, codec.encode(12, 3, m))[1] == m
