"""Permutations of [1, n] in one-line notation and the l-infinity metric.

A :class:`Permutation` is an immutable tuple of 1-indexed images:
``Permutation([2, 3, 1])`` maps 1 -> 2, 2 -> 3, 3 -> 1. The product ``f * g``
maps ``i -> f(g(i))``.
"""

from dataclasses import dataclass
from math import factorial


class Permutation(tuple):
    """A bijection on [1, n] stored as its one-line image tuple."""

    __slots__ = ()

    def __new__(cls, images):
        self = tuple.__new__(cls, images)
        n = len(self)
        if n < 1:
            raise ValueError("a permutation needs degree at least 1")
        if sorted(self) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of [1, {n}]: {list(self)}")
        return self

    @classmethod
    def identity(cls, n):
        return tuple.__new__(cls, range(1, n + 1))

    @classmethod
    def _trusted(cls, images):
        # skips validation; callers guarantee a bijection on [1, n]
        return tuple.__new__(cls, images)

    @property
    def n(self):
        return len(self)

    def __call__(self, i):
        return self[i - 1]

    def __mul__(self, other):
        return compose(self, other)

    def __invert__(self):
        return inverse(self)

    def __repr__(self):
        return f"Permutation({list(self)})"

    def __str__(self):
        return " ".join(map(str, self))

    def is_identity(self):
        return all(v == i for i, v in enumerate(self, 1))


def _check_degree(f, g):
    if len(f) != len(g):
        raise ValueError(f"degree mismatch: {len(f)} vs {len(g)}")


def dist_inf(f, g):
    """Largest displacement max_i |f(i) - g(i)| between two permutations."""
    _check_degree(f, g)
    return max(abs(a - b) for a, b in zip(f, g))


def weight(f):
    return max(abs(v - i) for i, v in enumerate(f, 1))


def compose(f, g):
    """The product ``fg``: i -> f(g(i))."""
    _check_degree(f, g)
    return Permutation._trusted(f[j - 1] for j in g)


def inverse(f):
    out = [0] * len(f)
    for i, v in enumerate(f, 1):
        out[v - 1] = i
    return Permutation._trusted(out)


def reverse(n):
    """The permutation i -> n + 1 - i (maximum weight n - 1)."""
    return Permutation._trusted(range(n, 0, -1))


def rank(f):
    """Lehmer-code rank of ``f``: its index in lexicographic order, identity -> 0."""
    n = len(f)
    remaining = list(range(1, n + 1))
    m = 0
    for pos, v in enumerate(f):
        idx = remaining.index(v)
        m += idx * factorial(n - 1 - pos)
        del remaining[idx]
    return m


def unrank(n, m):
    """Inverse of :func:`rank`: the permutation of degree n with Lehmer rank m."""
    if n < 1:
        raise ValueError("degree must be positive")
    if not 0 <= m < factorial(n):
        raise ValueError(f"rank {m} outside [0, {n}! - 1]")
    remaining = list(range(1, n + 1))
    out = []
    for pos in range(n - 1, -1, -1):
        q, m = divmod(m, factorial(pos))
        out.append(remaining.pop(q))
    return Permutation._trusted(out)


def all_permutations(n):
    """Every permutation of degree n, in Lehmer rank order."""
    from itertools import permutations

    for p in permutations(range(1, n + 1)):
        yield Permutation._trusted(p)


@dataclass(frozen=True)
class LabeledPermutation:
    """A permutation of an arbitrary finite set of positive integers.

    ``images[j]`` is the image of ``support[j]``; ``support`` is sorted.
    """

    support: tuple
    images: tuple

    def __post_init__(self):
        if list(self.support) != sorted(set(self.support)):
            raise ValueError("support must be strictly increasing")
        if sorted(self.images) != list(self.support):
            raise ValueError("images must be a bijection of the support")

    def __call__(self, a):
        return self.images[self.support.index(a)]

    def as_dict(self):
        return dict(zip(self.support, self.images))


def relabel(f, support):
    """Transport ``f`` onto the sorted set ``support``: a_i -> a_{f(i)}."""
    A = tuple(sorted(support))
    if len(A) != len(f):
        raise ValueError(f"support has {len(A)} points, permutation has degree {len(f)}")
    return LabeledPermutation(A, tuple(A[v - 1] for v in f))
