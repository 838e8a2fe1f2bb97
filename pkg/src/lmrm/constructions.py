"""LMRM code constructions and exact minimum-distance verification.

Three families are built here: the congruence code
``{f : f(i) = i (mod d)}``, interleaved direct products of smaller codes
(constituent ``i`` lives on the residue class ``i mod k``), and products
``HK`` of a subgroup ``H`` normalised by a subgroup ``K``.
"""

import bisect
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

from . import kernels
from .errors import (
    ConstructionError,
    GroupTooLargeError,
    NontrivialIntersectionError,
    NotASubgroupError,
    NotNormalizedError,
    UncorrectableError,
)
from .perm import Permutation, compose, inverse, weight

VERIFY_CAP = 10_000
INF = math.inf


@dataclass(frozen=True)
class ResidueClasses:
    """The classes A_i = {j in [n] : j = i (mod d)}, i = 1..d."""

    n: int
    d: int
    classes: tuple

    def class_of(self, j):
        return (j - 1) % self.d


def residue_classes(n, d):
    if not 1 <= d <= n:
        raise ConstructionError(f"need 1 <= d <= n, got n={n}, d={d}")
    return ResidueClasses(n, d, tuple(tuple(range(i, n + 1, d)) for i in range(1, d + 1)))


def congruence_size(n, d):
    q, r = divmod(n, d)
    return factorial(q + 1) ** r * factorial(q) ** (d - r)


def _fmt_distance(d):
    if d is None:
        return None
    return "inf" if d == INF else int(d)


class Code:
    """A set of permutations of [n] with a claimed minimum l-infinity distance.

    ``verified_distance`` is the exact minimum distance when it has been
    computed (``inf`` for a single codeword) and ``None`` otherwise.
    """

    kind = "abstract"

    def __init__(self, n, claimed_distance, is_subgroup=False):
        self.n = n
        self.claimed_distance = claimed_distance
        self.is_subgroup = is_subgroup
        self.verified_distance = None

    @property
    def M(self):
        raise NotImplementedError

    def members(self):
        raise NotImplementedError

    def __iter__(self):
        return self.members()

    def __contains__(self, f):
        raise NotImplementedError

    @property
    def distance(self):
        """Best known minimum distance: verified if available, else claimed."""
        if self.verified_distance is not None:
            return self.verified_distance
        return self.claimed_distance

    @property
    def distance_status(self):
        return "verified" if self.verified_distance is not None else "by construction"

    def decode_vector(self, y, radius):
        """The unique codeword within ``radius`` of the (possibly fractional) word ``y``."""
        for g in self.members():
            if max(abs(a - b) for a, b in zip(g, y)) <= radius:
                return g
        raise UncorrectableError("no codeword within the decoding radius")

    def message_of(self, codeword):
        """Index of ``codeword`` in rank order of the members."""
        for idx, g in enumerate(sorted(self.members())):
            if g == codeword:
                return idx
        raise ValueError("not a codeword")

    def to_json(self, include_members=False):
        doc = {
            "n": self.n,
            "d_claimed": _fmt_distance(self.claimed_distance),
            "d_verified": _fmt_distance(self.verified_distance),
            "M": str(self.M),
            "repr": self.kind,
        }
        if include_members:
            doc["members"] = [str(f) for f in sorted(self.members())]
        return doc

    def __repr__(self):
        return f"<{type(self).__name__} n={self.n} M={self.M} d={_fmt_distance(self.distance)}>"


class ExplicitCode(Code):
    kind = "explicit"

    def __init__(self, members, claimed_distance=None, is_subgroup=False, n=None):
        members = sorted(set(Permutation(f) for f in members))
        if not members and n is None:
            raise ConstructionError("an empty code needs an explicit degree")
        n = len(members[0]) if members else n
        if any(len(f) != n for f in members):
            raise ConstructionError("codewords of mixed degree")
        super().__init__(n, claimed_distance, is_subgroup)
        self._members = tuple(members)
        self._set = frozenset(members)
        if claimed_distance is None:
            self.claimed_distance = verify_min_distance(self, cap=math.inf)
            self.verified_distance = self.claimed_distance

    @property
    def M(self):
        return len(self._members)

    def members(self):
        return iter(self._members)

    def __contains__(self, f):
        return tuple(f) in self._set

    def message_of(self, codeword):
        idx = bisect.bisect_left(self._members, tuple(codeword))
        if idx == len(self._members) or self._members[idx] != tuple(codeword):
            raise ValueError("not a codeword")
        return idx


class CongruenceCode(Code):
    """``{f in S_n : f(i) = i (mod d)}``, the direct product of S_{A_i}."""

    kind = "residue"

    def __init__(self, n, d):
        super().__init__(n, d, is_subgroup=True)
        self.d = d
        self.classes = residue_classes(n, d)

    @property
    def M(self):
        return congruence_size(self.n, self.d)

    def members(self):
        per_class = [list(itertools.permutations(A)) for A in self.classes.classes]
        for choice in itertools.product(*per_class):
            out = [0] * self.n
            for A, images in zip(self.classes.classes, choice):
                for a, b in zip(A, images):
                    out[a - 1] = b
            yield Permutation._trusted(out)

    def __contains__(self, f):
        return (
            len(f) == self.n
            and sorted(f) == list(range(1, self.n + 1))
            and all((v - i) % self.d == 0 for i, v in enumerate(f, 1))
        )

    def decode_vector(self, y, radius):
        from .codec import decode_word

        return decode_word(self.n, self.d, y, radius)

    def message_of(self, codeword):
        from .codec import message_of

        return message_of(self.n, self.d, codeword)

    def to_json(self, include_members=False):
        doc = super().to_json(include_members)
        doc["params"] = {"n": self.n, "d": self.d}
        return doc


class ProductCode(Code):
    """Interleaved direct product: constituent i acts on the class (k Z + i) of [n]."""

    kind = "product"

    def __init__(self, n, k, constituents, claimed_distance):
        is_group = all(c.is_subgroup for c in constituents)
        super().__init__(n, claimed_distance, is_subgroup=is_group)
        self.k = k
        self.constituents = tuple(constituents)
        self.supports = residue_classes(n, k).classes

    @property
    def M(self):
        return math.prod(c.M for c in self.constituents)

    def _assemble(self, parts):
        out = [0] * self.n
        for A, g in zip(self.supports, parts):
            for pos, v in zip(A, g):
                out[pos - 1] = A[v - 1]
        return Permutation._trusted(out)

    def _split(self, f):
        """Fragments of f on each class, relabelled to [1, |A_i|]; None if f leaves a class."""
        parts = []
        for A in self.supports:
            where = {a: idx for idx, a in enumerate(A, 1)}
            try:
                parts.append(tuple(where[f[a - 1]] for a in A))
            except KeyError:
                return None
        return parts

    def members(self):
        for parts in itertools.product(*(c.members() for c in self.constituents)):
            yield self._assemble(parts)

    def __contains__(self, f):
        if len(f) != self.n or sorted(f) != list(range(1, self.n + 1)):
            return False
        parts = self._split(f)
        return parts is not None and all(p in c for p, c in zip(parts, self.constituents))

    def decode_vector(self, y, radius):
        parts = []
        for i, (A, c) in enumerate(zip(self.supports, self.constituents), 1):
            # value v on class i sits at position (v - i)/k + 1 of A_i
            frag = [Fraction(y[a - 1] - i, self.k) + 1 for a in A]
            sub_radius = radius if radius == INF else Fraction(radius) / self.k
            parts.append(c.decode_vector(frag, sub_radius))
        f = self._assemble(parts)
        if sorted(f) != list(range(1, self.n + 1)):
            raise UncorrectableError("reassembled word is not a permutation")
        return f

    def message_of(self, codeword):
        parts = self._split(codeword)
        if parts is None:
            raise ValueError("not a codeword")
        return tuple(c.message_of(Permutation._trusted(p)) for p, c in zip(parts, self.constituents))

    def to_json(self, include_members=False):
        doc = super().to_json(include_members)
        doc["params"] = {"k": self.k, "constituents": [c.to_json() for c in self.constituents]}
        return doc


class SemidirectCode(ExplicitCode):
    """The group HK for H normalised by K with trivial intersection."""

    kind = "semidirect"

    def __init__(self, members, claimed_distance, H, K, design_distance):
        super().__init__(members, claimed_distance=claimed_distance, is_subgroup=True)
        self.H = H
        self.K = K
        self.design_distance = design_distance
        self.design_vacuous = design_distance <= 0

    def to_json(self, include_members=False):
        doc = super().to_json(include_members)
        doc["params"] = {
            "H_size": str(self.H.M),
            "K_size": str(self.K.M),
            "design_distance": _fmt_distance(self.design_distance),
            "design_vacuous": self.design_vacuous,
        }
        return doc


def verify_min_distance(code, cap=VERIFY_CAP):
    """Exact minimum distance of ``code`` if it has at most ``cap`` members, else None.

    Subgroup codes use the minimum nonidentity weight (right invariance);
    other codes compare every pair. A single codeword has distance ``inf``.
    """
    if code.M > cap:
        return None
    if code.M <= 1:
        return INF
    if code.is_subgroup:
        return min(weight(f) for f in code.members() if not f.is_identity())
    return kernels.pairwise_linf(list(code.members()), minimize=True)


def diameter(code):
    """Largest pairwise distance (0 for a single codeword)."""
    if code.M <= 1:
        return 0
    X = np.asarray(list(code.members()), dtype=np.int64)
    # the widest column range is the largest pairwise distance
    return int((X.max(axis=0) - X.min(axis=0)).max())


def _autoverify(code):
    code.verified_distance = verify_min_distance(code)
    return code


def construct_congruence(n, d):
    """Code of all f with f(i) = i (mod d); minimum distance d (inf when d = n)."""
    if not 1 <= d <= n:
        raise ConstructionError(f"need 1 <= d <= n, got n={n}, d={d}")
    return _autoverify(CongruenceCode(n, d))


def construct_direct_product(constituents, n, k):
    """Interleave ``constituents`` on the residue classes mod k of [n].

    The result has size prod(M_i) and distance min(k * d_i) over constituents
    with at least two codewords.
    """
    constituents = list(constituents)
    if not 1 <= k <= n:
        raise ConstructionError(f"need 1 <= k <= n, got n={n}, k={k}")
    if len(constituents) != k:
        raise ConstructionError(f"expected {k} constituents, got {len(constituents)}")
    classes = residue_classes(n, k).classes
    for i, (A, c) in enumerate(zip(classes, constituents), 1):
        if c.n != len(A):
            raise ConstructionError(f"constituent {i} has degree {c.n}, class A_{i} has {len(A)} points")
    if k == 1:
        return constituents[0]
    scaled = [k * c.distance for c in constituents if c.M >= 2]
    claimed = min(scaled) if scaled else INF
    return _autoverify(ProductCode(n, k, constituents, claimed))


def _members_of(code):
    if code.M > VERIFY_CAP:
        raise ConstructionError(f"group of size {code.M} exceeds verification cap {VERIFY_CAP}")
    return set(code.members())


def _check_subgroup(code, name):
    elems = _members_of(code)
    ident = Permutation.identity(code.n)
    if ident not in elems:
        raise NotASubgroupError(f"{name} does not contain the identity")
    if not code.is_subgroup:
        for a in elems:
            for b in elems:
                if compose(a, b) not in elems:
                    raise NotASubgroupError(f"{name} is not closed under composition")
    return elems


def construct_semidirect(H, K):
    """Build HK from subgroups H, K of S_n with K normalising H and H n K = {id}."""
    if H.n != K.n:
        raise ConstructionError(f"H has degree {H.n}, K has degree {K.n}")
    hs = _check_subgroup(H, "H")
    ks = _check_subgroup(K, "K")
    for k in ks:
        kinv = inverse(k)
        for h in hs:
            if compose(compose(k, h), kinv) not in hs:
                raise NotNormalizedError("H^K != H: conjugation by K leaves H")
    if len(hs & ks) != 1:
        raise NontrivialIntersectionError(f"H and K share {len(hs & ks) - 1} nonidentity elements")
    if len(ks) == 1:
        return H
    if len(hs) == 1:
        return K

    design = max(H.distance - diameter(K), K.distance - diameter(H))
    product = {compose(h, k) for h in hs for k in ks}
    assert len(product) == len(hs) * len(ks)
    # any two distinct permutations are at distance >= 1, so a vacuous design bound floors at 1
    code = SemidirectCode(product, claimed_distance=max(design, 1), H=H, K=K, design_distance=design)
    exact = verify_min_distance(code)
    if exact is not None:
        code.claimed_distance = code.verified_distance = exact
    return code


def subgroup_closure(generators, n=None, cap=VERIFY_CAP):
    """The subgroup of S_n generated by ``generators``, as an explicit code."""
    gens = [Permutation(g) for g in generators]
    if gens:
        degrees = {len(g) for g in gens}
        if len(degrees) != 1 or (n is not None and n not in degrees):
            raise ConstructionError(f"generators of mixed degree {sorted(degrees)}")
        n = gens[0].n
    elif n is None:
        raise ConstructionError("empty generator list needs an explicit degree")
    ident = Permutation.identity(n)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise GroupTooLargeError(cap, len(seen))
        frontier = nxt
    code = ExplicitCode(seen, claimed_distance=INF, is_subgroup=True)
    code.claimed_distance = code.verified_distance = verify_min_distance(code, cap=math.inf)
    return code
