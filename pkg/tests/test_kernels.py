"""Both kernel backends must agree exactly; the pure one is the reference."""

import random

import numpy as np
import pytest

from lmrm import kernels
from lmrm.ballvolume import BinaryMatrix

from conftest import BACKENDS


def test_backend_selected():
    assert kernels.BACKEND in ("compiled", "pure")
    with pytest.raises(ValueError):
        kernels.band_permanent(5, 1, backend="gpu")


@pytest.mark.parametrize("n,r", [(1, 0), (5, 1), (8, 2), (20, 3), (40, 5), (90, 6), (25, 9)])
def test_band_parity(backend, n, r):
    assert kernels.band_permanent(n, r, backend=backend) == kernels.band_permanent(n, r, backend="pure")


def test_band_large_exact_value():
    # 2**k growth check against the pure big-int DP at a size beyond one 64-bit word
    v = kernels.band_permanent(120, 5)
    assert v.bit_length() > 200
    assert v == kernels.band_permanent(120, 5, backend="pure")


def test_ryser_parity(backend):
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(1, 12)
        rows = [rng.getrandbits(n) for _ in range(n)]
        assert kernels.ryser_permanent(rows, n, backend=backend) == kernels.ryser_permanent(rows, n, backend="pure")
    assert kernels.ryser_permanent(BinaryMatrix.ones(20).rows, 20, backend=backend) == 2432902008176640000


def test_pairwise_parity(backend):
    rng = np.random.default_rng(2)
    X = np.array([rng.permutation(7) + 1 for _ in range(60)])
    for minimize in (True, False):
        assert kernels.pairwise_linf(X, minimize, backend=backend) == kernels.pairwise_linf(X, minimize, backend="pure")
    assert kernels.pairwise_linf(X[:1], backend=backend) == -1


def _random_graph(nv, p, seed):
    rng = random.Random(seed)
    adj = [0] * nv
    for i in range(nv):
        for j in range(i + 1, nv):
            if rng.random() < p:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return adj


def _brute_clique(adj):
    import itertools

    nv = len(adj)
    for size in range(nv, 0, -1):
        for S in itertools.combinations(range(nv), size):
            if all(adj[a] >> b & 1 for a, b in itertools.combinations(S, 2)):
                return size
    return 0


@pytest.mark.parametrize("seed", range(8))
def test_clique_parity_and_truth(backend, seed):
    adj = _random_graph(16, 0.5, seed)
    clique, done, nodes = kernels.max_clique(adj, backend=backend)
    assert done and len(clique) == _brute_clique(adj)
    assert all(adj[a] >> b & 1 for a in clique for b in clique if a != b)
    assert (clique, done, nodes) == tuple(kernels.max_clique(adj, backend="pure"))


def test_clique_multiword(backend):
    adj = _random_graph(150, 0.6, 99)
    a = kernels.max_clique(adj, backend=backend)
    b = kernels.max_clique(adj, backend="pure")
    assert a[0] == b[0] and a[1] and a[2] == b[2]


def test_clique_budget_and_upper(backend):
    adj = _random_graph(120, 0.7, 3)
    clique, done, nodes = kernels.max_clique(adj, budget=50, backend=backend)
    assert not done and nodes > 50
    clique, done, nodes = kernels.max_clique(adj, upper=3, backend=backend)
    assert done and len(clique) == 3
