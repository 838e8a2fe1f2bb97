"""Upper and lower bounds on the size of LMRM codes, and the anticodes behind them."""

from dataclasses import dataclass, field
from math import comb, factorial, lcm

import numpy as np
from sympy import integer_nthroot

from . import ballvolume
from .constructions import subgroup_closure
from .errors import LMRMError
from .perm import Permutation


def spread(perms):
    """Largest pairwise l-infinity distance, computed as the widest column range.

    max over pairs of max over i of |f(i) - g(i)| is the max over i of
    (max f(i) - min f(i)), so no pairwise scan is needed.
    """
    X = np.asarray(perms, dtype=np.int64)
    if len(X) < 2:
        return 0
    return int((X.max(axis=0) - X.min(axis=0)).max())


def _check(n, d):
    if not 1 <= d <= n:
        raise LMRMError(f"need 1 <= d <= n, got n={n}, d={d}")


def gv_lower(n, d):
    """Size guaranteed by the greedy (Gilbert-Varshamov-like) argument: ceil(n! / |B_{d-1,n}|)."""
    _check(n, d)
    if ballvolume.ball_exact_feasible(n, d - 1):
        ball = ballvolume.ball_exact(n, d - 1)
    else:
        ball = ballvolume.ball_upper(n, d - 1)
    return -(-factorial(n) // ball)


def ballpacking_upper(n, d):
    """floor(n! / |B_{t,n}|) with t = floor((d-1)/2)."""
    _check(n, d)
    t = (d - 1) // 2
    if ballvolume.ball_exact_feasible(n, t):
        ball = ballvolume.ball_exact(n, t)
    else:
        ball = ballvolume.ball_lower(n, t)
    return factorial(n) // ball


def block_anticode_size(n, d):
    return factorial(d) ** (n // d) * factorial(n % d)


def anticode_upper(n, d):
    """n! / ((d!)^floor(n/d) (n mod d)!), the block-anticode bound."""
    _check(n, d)
    q, rem = divmod(factorial(n), block_anticode_size(n, d))
    assert rem == 0
    return q


def staircase_anticode_size(n, d):
    r = n % d
    lo, hi = (d + r) // 2, (d + r + 1) // 2
    num = factorial(d) ** (n // d - 1) * factorial(d - r) * factorial(lo) * factorial(hi)
    den = factorial(lo - r) * factorial(hi - r)
    assert num % den == 0
    return num // den


def refined_anticode_upper(n, d):
    """floor(n! / size of the staircase anticode); equals anticode_upper when d | n."""
    _check(n, d)
    return factorial(n) // staircase_anticode_size(n, d)


def max_anticode_upper(n, d):
    """floor((d!)^(n/d)): no anticode of maximum distance d-1 is larger.

    Exact statement when d | n; otherwise the same Bregman argument still
    gives the real-valued bound, floored here.
    """
    _check(n, d)
    root, _ = integer_nthroot(factorial(d) ** n, d)
    return int(root)


def homogeneity_modulus(n, k):
    """lcm of C(n, k), C(n, k-1), ..., C(n, 1)."""
    if not 1 <= k <= n:
        raise LMRMError(f"need 1 <= k <= n, got n={n}, k={k}")
    return lcm(*(comb(n, j) for j in range(1, k + 1)))


@dataclass(frozen=True)
class SieveStep:
    candidate: int
    test: str
    verdict: str

    def to_json(self):
        return {"candidate": str(self.candidate), "test": self.test, "verdict": self.verdict}


def subgroup_sieve(n, d):
    """Largest size a subgroup code could have, after divisibility tests.

    A subgroup attaining the block-anticode bound B must be d-homogeneous;
    when 2d <= n + 1 this forces lcm{K_{n-id,d}} | B (hence also n | B).
    Every subgroup size divides n!, which filters candidates below B.
    Returns ``(upper, trace)``.
    """
    _check(n, d)
    nfact = factorial(n)
    B = anticode_upper(n, d)
    trace = []
    alive = True
    if n - 2 * d + 1 >= 0:
        imax = (n - 2 * d + 1) // d
        ok = B % n == 0
        trace.append(SieveStep(B, f"transitivity: {n} | M", "pass" if ok else "fail"))
        alive &= ok
        L = lcm(*(homogeneity_modulus(n - i * d, d) for i in range(imax + 1)))
        ok = B % L == 0
        trace.append(SieveStep(B, f"homogeneity: lcm K_(n-id,d) over 0<=i<={imax} = {L} | M", "pass" if ok else "fail"))
        alive &= ok
    else:
        trace.append(SieveStep(B, "homogeneity: 2d > n+1, no lcm constraint", "skipped"))
    ok = nfact % B == 0
    trace.append(SieveStep(B, f"lagrange: M | {n}!", "pass" if ok else "fail"))
    if alive and ok:
        return B, trace
    M = B - 1
    while M > 1:
        ok = nfact % M == 0
        trace.append(SieveStep(M, f"lagrange: M | {n}!", "pass" if ok else "fail"))
        if ok:
            return M, trace
        M -= 1
    return 1, trace


@dataclass
class Anticode:
    """A set of permutations with pairwise distance at most ``max_distance``."""

    n: int
    max_distance: int
    size: int
    kind: str
    members: tuple | None = None
    verified: bool = False
    permanent_check: int | None = None
    blocks: tuple = field(default=())

    def verify(self):
        """Check every pair of materialised members against ``max_distance``."""
        if self.members is None:
            raise LMRMError("anticode has no explicit members to verify")
        if len(self.members) != self.size:
            return False
        if spread(self.members) > self.max_distance:
            return False
        self.verified = True
        return True

    def to_json(self, include_members=False):
        doc = {"n": self.n, "max_distance": self.max_distance, "size": str(self.size), "repr": self.kind}
        if include_members and self.members is not None:
            doc["members"] = [" ".join(map(str, f)) for f in self.members]
        return doc


def _enumerate_allowed(allowed):
    """All permutations f with f(i) in allowed[i-1] (sets of columns), in lexicographic order."""
    n = len(allowed)
    out = []
    cur = [0] * n
    used = [False] * (n + 1)

    def rec(i):
        if i == n:
            out.append(Permutation._trusted(cur))
            return
        for j in sorted(allowed[i]):
            if not used[j]:
                used[j] = True
                cur[i] = j
                rec(i + 1)
                used[j] = False

    rec(0)
    return tuple(out)


def _contiguous_blocks(n, d):
    return tuple(tuple(range(s, min(s + d, n + 1))) for s in range(1, n + 1, d))


def build_block_anticode(n, d, materialize_up_to=8):
    """Product of S_A over contiguous blocks of length d; maximum distance d - 1."""
    _check(n, d)
    blocks = _contiguous_blocks(n, d)
    code = Anticode(n, d - 1, block_anticode_size(n, d), "block", blocks=blocks)
    if n <= materialize_up_to:
        allowed = [set(B) for B in blocks for _ in B]
        code.members = _enumerate_allowed(allowed)
        code.verify()
    return code


def staircase_matrix(n, d):
    """Rows of the 0/1 matrix whose permanent terms form the staircase anticode."""
    q, r = divmod(n, d)
    allowed = []
    for b in range(q - 1):
        cols = set(range(b * d + 1, b * d + d + 1))
        allowed.extend([cols] * d)
    off = (q - 1) * d
    top = (d + r + 1) // 2
    bottom = (d + r) // 2
    allowed.extend([set(range(off + 1, off + d + 1))] * top)
    allowed.extend([set(range(off + r + 1, off + r + d + 1))] * bottom)
    return allowed


def build_staircase_anticode(n, d, materialize_up_to=10, permanent_up_to=20):
    """Anticode of maximum distance d - 1 at least as large as the block anticode.

    The last d + r coordinates (r = n mod d) use two overlapping windows of
    d columns instead of a d-block and an r-block.
    """
    _check(n, d)
    if n % d == 0:
        code = build_block_anticode(n, d, materialize_up_to=min(8, materialize_up_to))
        code.kind = "staircase"
        return code
    allowed = staircase_matrix(n, d)
    code = Anticode(n, d - 1, staircase_anticode_size(n, d), "staircase")
    if n <= permanent_up_to:
        mx = ballvolume.BinaryMatrix(n, tuple(sum(1 << (j - 1) for j in cols) for cols in allowed))
        code.permanent_check = ballvolume.permanent(mx)
    r = n % d
    if n <= materialize_up_to and d + r <= 10:
        code.members = _enumerate_allowed(allowed)
        code.verify()
    return code


def ball_anticode(n, t, materialize_up_to=8):
    """The ball of radius t about the identity; its diameter is at most 2t."""
    size = ballvolume.ball_exact(n, t)
    code = Anticode(n, min(2 * t, n - 1), size, "ball")
    if n <= materialize_up_to:
        allowed = [set(range(max(1, i - t), min(n, i + t) + 1)) for i in range(1, n + 1)]
        code.members = _enumerate_allowed(allowed)
        code.verify()
    return code


def code_anticode_upper(n, d, anticode):
    """floor(n! / |A|) for an anticode A of maximum distance at most d - 1."""
    _check(n, d)
    if anticode.n != n:
        raise LMRMError(f"anticode has degree {anticode.n}, expected {n}")
    if anticode.max_distance > d - 1:
        raise LMRMError(f"anticode diameter {anticode.max_distance} exceeds d - 1 = {d - 1}")
    if anticode.members is not None and not anticode.verified and not anticode.verify():
        raise LMRMError("explicit anticode fails its pairwise distance check")
    return factorial(n) // anticode.size


def optimal_nminus1_code(n):
    """The optimal (n, 3, n-1) code: the 3-cycle (1, 2, n) and its powers."""
    if n < 3:
        raise LMRMError(f"need n >= 3, got {n}")
    cycle = list(range(1, n + 1))
    cycle[0], cycle[1], cycle[n - 1] = 2, n, 1
    code = subgroup_closure([cycle])
    code.optimal = code.M == refined_anticode_upper(n, n - 1)
    code.upper_bound = refined_anticode_upper(n, n - 1)
    return code


@dataclass
class BoundReport:
    n: int
    d: int
    r: int
    gv_lower: int
    ballpacking_upper: int
    anticode_upper: int
    refined_anticode_upper: int
    max_anticode_upper: int
    subgroup_upper_after_sieve: int | None = None
    sieve_trace: list = field(default_factory=list)

    @property
    def best_upper(self):
        return min(self.ballpacking_upper, self.anticode_upper, self.refined_anticode_upper)

    @property
    def gv_meets_upper(self):
        return self.gv_lower == self.best_upper

    def to_json(self):
        def s(x):
            return None if x is None else str(x)

        return {
            "n": self.n,
            "d": self.d,
            "r": self.r,
            "gv_lower": s(self.gv_lower),
            "ballpacking_upper": s(self.ballpacking_upper),
            "anticode_upper": s(self.anticode_upper),
            "refined_anticode_upper": s(self.refined_anticode_upper),
            "max_anticode_upper": s(self.max_anticode_upper),
            "max_anticode_exact_statement": self.n % self.d == 0,
            "subgroup_upper_after_sieve": s(self.subgroup_upper_after_sieve),
            "sieve_trace": [step.to_json() for step in self.sieve_trace],
            "gv_meets_upper": self.gv_meets_upper,
        }


def bound_report(n, d, subgroup=False):
    _check(n, d)
    report = BoundReport(
        n=n,
        d=d,
        r=n % d,
        gv_lower=gv_lower(n, d),
        ballpacking_upper=ballpacking_upper(n, d),
        anticode_upper=anticode_upper(n, d),
        refined_anticode_upper=refined_anticode_upper(n, d),
        max_anticode_upper=max_anticode_upper(n, d),
    )
    if subgroup:
        report.subgroup_upper_after_sieve, report.sieve_trace = subgroup_sieve(n, d)
    return report
