"""Exhaustive ground truth for small degrees.

Everything here enumerates S_n in Lehmer rank order (which is the
lexicographic order of one-line images), so results are reproducible.
Maximum codes and anticodes are found as maximum cliques; by right
invariance the identity can always be assumed to belong to the set, so
the search runs over its neighbourhood only.
"""

import itertools
from dataclasses import dataclass, field
from math import factorial

import numpy as np

from . import bounds, kernels
from .constructions import ExplicitCode
from .errors import LMRMError
from .perm import Permutation

MAX_ENUM = 9
MAX_PROVE = 7


def permutation_array(n):
    """All of S_n as an (n!, n) int8 array in rank order."""
    if n > MAX_ENUM:
        raise LMRMError(f"enumeration of S_n capped at n={MAX_ENUM}, got {n}")
    return np.array(list(itertools.permutations(range(1, n + 1))), dtype=np.int8).reshape(-1, n)


def _weights(P):
    n = P.shape[1]
    return np.abs(P - np.arange(1, n + 1, dtype=np.int8)).max(axis=1)


def rank_array(P):
    """Lehmer ranks of each row of ``P``."""
    N, n = P.shape
    out = np.zeros(N, dtype=np.int64)
    for i in range(n):
        smaller_after = (P[:, i + 1:] < P[:, i:i + 1]).sum(axis=1)
        out += smaller_after * factorial(n - 1 - i)
    return out


def brute_ball(n, r):
    """Count permutations within distance r of the identity by full enumeration."""
    if r < 0:
        raise LMRMError(f"radius must be nonnegative, got {r}")
    return int((_weights(permutation_array(n)) <= r).sum())


def greedy_gv(n, d):
    """Greedy code: scan S_n in rank order, keep anything not yet covered, cover its (d-1)-ball."""
    if not 1 <= d <= n:
        raise LMRMError(f"need 1 <= d <= n, got n={n}, d={d}")
    P = permutation_array(n)
    ball = P[_weights(P) <= d - 1].astype(np.int64) - 1
    marked = np.zeros(len(P), dtype=bool)
    chosen = []
    pos = 0
    N = len(P)
    while pos < N:
        if marked[pos]:
            pos += 1
            continue
        chosen.append(pos)
        f = P[pos].astype(np.int64) - 1
        # ball(f) = {b o f}: right translation of the identity ball
        marked[rank_array(ball[:, f])] = True
        pos += 1
    members = [Permutation._trusted(P[i].tolist()) for i in chosen]
    return ExplicitCode(members, claimed_distance=d, n=n)


def _distance_matrix(Q):
    V = len(Q)
    D = np.empty((V, V), dtype=np.int8)
    step = max(1, 2_000_000 // max(V, 1))
    for s in range(0, V, step):
        D[s:s + step] = np.abs(Q[s:s + step, None, :] - Q[None, :, :]).max(axis=2)
    return D


def _bitsets(A):
    packed = np.packbits(A, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


@dataclass
class SearchResult:
    n: int
    d: int
    kind: str
    best_size: int
    witness: list
    exactness: str
    upper_bound: int | None = None
    nodes: int = 0
    notes: list = field(default_factory=list)

    @property
    def proved(self):
        return self.exactness == "proved-maximum"

    def to_json(self):
        return {
            "n": self.n,
            "d": self.d,
            "kind": self.kind,
            "best_size": str(self.best_size),
            "exactness": self.exactness,
            "upper_bound": None if self.upper_bound is None else str(self.upper_bound),
            "nodes": self.nodes,
            "witness": [" ".join(map(str, f)) for f in self.witness],
        }


def _clique_search(P, keep, adjacent, initial_ranks, upper, budget):
    """Max clique among rows ``keep`` of P, with the identity implicitly included.

    Vertices are ordered by degree (descending) then rank; that order is
    the colouring order of the branch and bound.
    """
    idx = np.flatnonzero(keep)
    Q = P[idx].astype(np.int16)
    A = adjacent(_distance_matrix(Q))
    np.fill_diagonal(A, False)
    deg = A.sum(axis=1)
    order = np.lexsort((idx, -deg))
    A = A[np.ix_(order, order)]
    idx = idx[order]
    where = {int(r): v for v, r in enumerate(idx)}
    initial = [where[r] for r in initial_ranks if r in where]
    clique, completed, nodes = kernels.max_clique(_bitsets(A), initial=initial, upper=upper, budget=budget)
    ranks = sorted([0] + [int(idx[v]) for v in clique])
    return [Permutation._trusted(P[r].tolist()) for r in ranks], completed, nodes


def max_code_search(n, d, budget=2_000_000, prove=True):
    """Largest code of minimum distance d in S_n.

    With ``prove`` (n <= 7) the clique search certifies optimality unless
    the node budget runs out, in which case the best code found is
    returned flagged lower-bound-only. Without it the greedy code is
    returned.
    """
    if not 1 <= d <= n:
        raise LMRMError(f"need 1 <= d <= n, got n={n}, d={d}")
    greedy = greedy_gv(n, d) if n <= MAX_ENUM else None
    upper = min(bounds.ballpacking_upper(n, d), bounds.anticode_upper(n, d), bounds.refined_anticode_upper(n, d))
    if greedy is None:
        raise LMRMError(f"search needs n <= {MAX_ENUM}, got {n}")
    if not prove or n > MAX_PROVE:
        exact = "proved-maximum" if greedy.M >= upper else "lower-bound-only"
        return SearchResult(n, d, "code", greedy.M, list(greedy.members()), exact, upper)
    if greedy.M >= upper:
        return SearchResult(n, d, "code", greedy.M, list(greedy.members()), "proved-maximum", upper)
    P = permutation_array(n)
    initial = [int(r) for r in rank_array(np.array(list(greedy.members()), dtype=np.int8))][1:]
    witness, completed, nodes = _clique_search(
        P, _weights(P) >= d, lambda D: D >= d, initial, upper - 1, budget
    )
    exact = "proved-maximum" if completed else "lower-bound-only"
    result = SearchResult(n, d, "code", len(witness), witness, exact, upper, nodes)
    assert verify_witness(result)
    return result


def max_anticode_search(n, dmax, budget=2_000_000):
    """Largest set in S_n with all pairwise distances at most ``dmax``."""
    if not 0 <= dmax:
        raise LMRMError(f"maximum distance must be nonnegative, got {dmax}")
    if dmax >= n - 1:
        P = permutation_array(n)
        return SearchResult(n, dmax, "anticode", factorial(n), [Permutation._trusted(p.tolist()) for p in P],
                            "proved-maximum", factorial(n))
    if n > MAX_PROVE:
        raise LMRMError(f"anticode search capped at n={MAX_PROVE}, got {n}")
    upper = bounds.max_anticode_upper(n, dmax + 1)
    stair = bounds.build_staircase_anticode(n, dmax + 1)
    P = permutation_array(n)
    initial = []
    if stair.members is not None and Permutation.identity(n) in stair.members:
        initial = [int(r) for r in rank_array(np.array(stair.members, dtype=np.int8)) if r != 0]
    w = _weights(P)
    witness, completed, nodes = _clique_search(
        P, (w <= dmax) & (w > 0), lambda D: D <= dmax, initial, upper - 1, budget
    )
    exact = "proved-maximum" if completed else "lower-bound-only"
    result = SearchResult(n, dmax, "anticode", len(witness), witness, exact, upper, nodes)
    assert verify_witness(result)
    return result


def verify_witness(result):
    """Check the witness has the defining distance property and the reported size."""
    W = result.witness
    if len(W) != result.best_size or len(set(W)) != len(W):
        return False
    if len(W) < 2:
        return True
    if result.kind == "code":
        return kernels.pairwise_linf(W, minimize=True) >= result.d
    return bounds.spread(W) <= result.d
