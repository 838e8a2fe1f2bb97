"""Backend selection for the hot loops.

The compiled extension ``lmrm._kernels`` is used when it imports; otherwise
the pure-Python module takes over. Set ``LMRM_PURE=1`` to force the fallback.
Both backends expose the same exact-integer API through this module.
"""

import os
from functools import lru_cache
from math import factorial, lgamma, log

import numpy as np

from . import _purekernels as pure

try:
    if os.environ.get("LMRM_PURE"):
        raise ImportError("pure backend forced")
    from . import _kernels as compiled
except ImportError:
    compiled = None

BACKEND = "compiled" if compiled is not None else "pure"

# Residues stay below 2**57 so that residue * rowsum (rowsum <= 64) fits in uint64.
_PRIME_CEILING = 1 << 56


@lru_cache(maxsize=None)
def _prime(i):
    from sympy import prevprime

    return prevprime(_PRIME_CEILING if i == 0 else _prime(i - 1))


def _primes_for(bits):
    """Enough primes that their product exceeds 2**bits."""
    primes = []
    modulus = 1
    while modulus.bit_length() <= bits + 1:
        primes.append(_prime(len(primes)))
        modulus *= primes[-1]
    return primes


def _crt(primes, residues):
    from sympy.ntheory.modular import crt

    value, _ = crt(primes, [int(x) for x in residues])
    return int(value)


def _bregman_bits(rowsums):
    """Upper bound on log2 of the permanent from row sums, padded against float error."""
    if any(s == 0 for s in rowsums):
        return 1
    total = sum(lgamma(s + 1) / s for s in rowsums) / log(2)
    return int(total * (1 + 1e-9)) + 8


def band_permanent(n, r, backend=None):
    """Number of permutations of [n] displacing no point by more than r."""
    if r >= n - 1:
        return factorial(n)
    if 2 * r + 1 > 62:
        raise ValueError("band window wider than 62 columns")
    if _use_compiled(backend):
        rowsums = [min(n, i + r) - max(1, i - r) + 1 for i in range(1, n + 1)]
        primes = _primes_for(_bregman_bits(rowsums))
        return _crt(primes, compiled.band_permanent_residues(n, r, primes))
    return pure.band_permanent(n, r)


def ryser_permanent(rows, n, backend=None):
    """Exact permanent of an n x n 0/1 matrix given as a list of row bitmasks."""
    rows = [int(x) for x in rows]
    if n == 0:
        return 1
    if _use_compiled(backend):
        rowsums = [bin(x).count("1") for x in rows]
        if 0 in rowsums:
            return 0
        primes = _primes_for(_bregman_bits(rowsums))
        return _crt(primes, [compiled.ryser_permanent_mod(rows, n, p) for p in primes])
    return pure.ryser_permanent(rows, n)


def pairwise_linf(rows, minimize=True, backend=None):
    """Min (``minimize``) or max l-infinity distance over distinct row pairs; -1 if < 2 rows."""
    X = np.ascontiguousarray(np.asarray(rows, dtype=np.int32).reshape(len(rows), -1))
    if _use_compiled(backend):
        return int(compiled.pairwise_linf(X, bool(minimize)))
    return pure.pairwise_linf(X, minimize)


def max_clique(adjacency, initial=(), upper=None, budget=10**6, backend=None):
    """Maximum clique of the graph with neighbour sets ``adjacency`` (list of int bitsets).

    ``initial`` is a known clique used as the starting incumbent and ``upper``
    a valid bound on the clique number; the search stops as soon as it is met.
    Returns ``(clique, completed, nodes)``.
    """
    nv = len(adjacency)
    upper = nv if upper is None else min(int(upper), nv)
    initial = sorted(initial)
    if _use_compiled(backend):
        words = max(1, (nv + 63) // 64)
        adj = np.zeros((nv, words), dtype=np.uint64)
        for v, bits in enumerate(adjacency):
            for w in range(words):
                adj[v, w] = (bits >> (64 * w)) & 0xFFFFFFFFFFFFFFFF
        clique, completed, nodes = compiled.max_clique(adj, nv, initial, upper, budget)
        return list(clique), bool(completed), int(nodes)
    return pure.max_clique(list(adjacency), nv, initial, upper, budget)


def _use_compiled(backend):
    if backend is None:
        return compiled is not None
    if backend == "compiled":
        if compiled is None:
            raise RuntimeError("compiled kernels are not built")
        return True
    if backend == "pure":
        return False
    raise ValueError(f"unknown backend {backend!r}")
