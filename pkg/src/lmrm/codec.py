"""Encoding and bounded-magnitude decoding for congruence codes.

A message ``m`` in ``[0, M)`` is written in mixed radix with digit ``i``
ranging over ``|A_{i+1}|!`` (least significant first, classes ordered
A_1, ..., A_d). Digit ``i`` is unranked in Lehmer order and transported
onto A_{i+1}; the codeword is the product of the pieces. When d divides n
every radix is ``(n/d)!``.
"""

import math
from fractions import Fraction
from math import factorial

from .constructions import congruence_size, residue_classes
from .errors import LMRMError, UncorrectableError
from .perm import Permutation, rank, unrank


def encode(n, d, m):
    """Codeword of the (n, d) congruence code carrying message ``m``."""
    M = congruence_size(n, d)
    if not 0 <= m < M:
        raise LMRMError(f"message {m} outside [0, {M})")
    out = [0] * n
    for A in residue_classes(n, d).classes:
        m, digit = divmod(m, factorial(len(A)))
        g = unrank(len(A), digit)
        for pos, v in zip(A, g):
            out[pos - 1] = A[v - 1]
    return Permutation._trusted(out)


def message_of(n, d, codeword):
    """Inverse of :func:`encode` on codewords."""
    m = 0
    scale = 1
    for A in residue_classes(n, d).classes:
        where = {a: idx for idx, a in enumerate(A, 1)}
        try:
            local = [where[codeword[a - 1]] for a in A]
        except KeyError:
            raise LMRMError(f"{list(codeword)} is not a codeword of the ({n},{d}) congruence code")
        m += rank(local) * scale
        scale *= factorial(len(A))
    return m


def decode_coordinate(n, d, i, value, radius=None):
    """The unique v in [1, n] with v = i (mod d) and |v - value| <= radius, or None.

    ``value`` may be fractional (used when decoding inside a product code).
    The default radius is floor((d - 1) / 2).
    """
    if radius is None:
        radius = (d - 1) // 2
    t = Fraction(value - i) / d
    for v in (i + d * math.floor(t), i + d * math.ceil(t)):
        if 1 <= v <= n and abs(v - value) <= radius:
            return v
    return None


def decode_word(n, d, y, radius=None):
    """Nearest codeword, coordinate by coordinate, for a possibly fractional word."""
    out = []
    for i, value in enumerate(y, 1):
        v = decode_coordinate(n, d, i, value, radius)
        if v is None:
            raise UncorrectableError(f"coordinate {i}: no value = {i} (mod {d}) within radius of {value}")
        out.append(v)
    if sorted(out) != list(range(1, n + 1)):
        raise UncorrectableError("coordinate decisions do not form a permutation")
    return Permutation._trusted(out)


def decode(n, d, received):
    """Recover ``(codeword, message)`` from a permutation within floor((d-1)/2) of a codeword."""
    if len(received) != n:
        raise LMRMError(f"received word has degree {len(received)}, expected {n}")
    f = decode_word(n, d, received)
    return f, message_of(n, d, f)


def decode_product(code, received):
    """Decode an interleaved product code constituent by constituent.

    Returns ``(codeword, messages)`` with one message per constituent.
    Corrects every error of magnitude at most floor((d - 1) / 2), d the
    product's distance.
    """
    d = code.distance
    radius = math.inf if d == math.inf else (d - 1) // 2
    f = code.decode_vector(tuple(received), radius)
    return f, code.message_of(f)
