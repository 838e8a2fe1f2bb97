"""Sizes of l-infinity balls in S_n, 0/1 permanents and the Bregman bound.

The ball of radius r about any centre has the size of the permanent of
the n x n band matrix with ones where |i - j| <= r. Exact values come from
a sliding-window subset DP over that band; the closed-form estimates are
evaluated in high precision and rounded outward.
"""

import math
from dataclasses import dataclass
from math import factorial

import mpmath

from . import kernels
from .errors import InfeasibleError

MAX_WINDOW = 30
MAX_RYSER = 26
_GUARD_BITS = 128


@dataclass(frozen=True)
class BinaryMatrix:
    """Square 0/1 matrix stored as row bitmasks (bit j-1 of ``rows[i-1]`` is entry (i, j))."""

    n: int
    rows: tuple

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} rows, got {len(self.rows)}")
        if any(not 0 <= r < (1 << self.n) for r in self.rows):
            raise ValueError("row bitmask wider than the matrix")

    @classmethod
    def from_rows(cls, rows):
        rows = [list(r) for r in rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        if any(x not in (0, 1) for r in rows for x in r):
            raise ValueError("entries must be 0 or 1")
        return cls(n, tuple(sum(1 << j for j, x in enumerate(r) if x) for r in rows))

    @classmethod
    def band(cls, n, r):
        return cls(n, tuple(sum(1 << j for j in range(max(0, i - r), min(n, i + r + 1))) for i in range(n)))

    @classmethod
    def ones(cls, n):
        return cls(n, ((1 << n) - 1,) * n)

    @classmethod
    def identity(cls, n):
        return cls(n, tuple(1 << i for i in range(n)))

    def to_lists(self):
        return [[(row >> j) & 1 for j in range(self.n)] for row in self.rows]

    def row_sums(self):
        return [bin(row).count("1") for row in self.rows]

    def band_radius(self):
        """r if this is exactly the band matrix |i-j| <= r, else None."""
        sums = self.row_sums()
        if not sums or sums[0] == 0:
            return None
        r = sums[0] - 1
        return r if self == BinaryMatrix.band(self.n, r) else None


@dataclass(frozen=True)
class BallVolume:
    n: int
    r: int
    exact: int | None
    lower: int
    upper: int

    def to_json(self):
        return {
            "n": self.n,
            "r": self.r,
            "exact": None if self.exact is None else str(self.exact),
            "lower": str(self.lower),
            "upper": str(self.upper),
        }


def ball_exact_feasible(n, r):
    return r >= n - 1 or min(2 * r + 1, n) <= MAX_WINDOW


def ball_exact(n, r):
    """Exact number of permutations within l-infinity distance r of a fixed one."""
    if n < 1 or r < 0:
        raise ValueError(f"need n >= 1 and r >= 0, got n={n}, r={r}")
    if r >= n - 1:
        return factorial(n)
    if not ball_exact_feasible(n, r):
        raise InfeasibleError(
            f"band window {2 * r + 1} exceeds {MAX_WINDOW}; use ball_lower/ball_upper instead"
        )
    return kernels.band_permanent(n, r)


def _log2_estimate(log_value):
    return float(log_value) / math.log(2)


def _round(log_fn, up):
    """Round exp(log_fn()) outward to an integer.

    Precision tracks the magnitude so the integer part is exact; values
    within 2**-64 of an integer snap to it before rounding.
    """
    with mpmath.workprec(256):
        bits = _log2_estimate(log_fn())
    prec = max(256, int(max(bits, 0)) + _GUARD_BITS)
    with mpmath.workprec(prec):
        value = mpmath.exp(log_fn())
        nearest = mpmath.nint(value)
        if abs(value - nearest) <= mpmath.mpf(2) ** -64:
            return int(nearest)
        return int(mpmath.ceil(value) if up else mpmath.floor(value))


def _log_factorial(m):
    return mpmath.loggamma(m + 1)


def ball_lower(n, r):
    """Floor of sqrt(2 pi n) / 4**r * ((2r+1)/e)**n, never below 1.

    The estimate is stated for 0 <= r <= (n-1)/2; larger radii reuse the
    value at r = floor((n-1)/2), which stays valid because balls grow with r.
    """
    if 2 * r > n - 1:
        r = (n - 1) // 2

    def log_value():
        return (
            mpmath.log(2 * mpmath.pi * n) / 2
            - 2 * r * mpmath.log(2)
            + n * (mpmath.log(2 * r + 1) - 1)
        )

    return max(1, _round(log_value, up=False))


def _log_ball_upper(n, r):
    if 2 * r <= n - 1:
        total = mpmath.mpf(n - 2 * r) / (2 * r + 1) * _log_factorial(2 * r + 1)
        top = 2 * r
    else:
        total = mpmath.mpf(2 * r + 2 - n) / n * _log_factorial(n)
        top = n - 1
    for i in range(r + 1, top + 1):
        total += 2 * _log_factorial(i) / i
    return total


def ball_upper(n, r):
    """Ceiling of the Bregman estimate of the band permanent (two branches in r)."""
    if r >= n - 1:
        return factorial(n)
    return _round(lambda: _log_ball_upper(n, r), up=True)


def ball_volume(n, r):
    exact = ball_exact(n, r) if ball_exact_feasible(n, r) else None
    return BallVolume(n, r, exact, ball_lower(n, r), ball_upper(n, r))


def permanent(mx):
    """Exact permanent of a 0/1 matrix; band matrices go through the window DP."""
    r = mx.band_radius()
    if r is not None:
        return ball_exact(mx.n, r)
    if mx.n > MAX_RYSER:
        raise InfeasibleError(f"Ryser permanent capped at n={MAX_RYSER}, got {mx.n}")
    return kernels.ryser_permanent(mx.rows, mx.n)


def bregman_bound(mx):
    """Ceiling of prod_i (r_i!)**(1/r_i) over the row sums r_i; 0 if a row is empty."""
    sums = mx.row_sums()
    if 0 in sums:
        return 0
    counts = {}
    for s in sums:
        counts[s] = counts.get(s, 0) + 1
    return _round(lambda: sum(mpmath.mpf(c) / s * _log_factorial(s) for s, c in counts.items()), up=True)
