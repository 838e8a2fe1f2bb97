import math

import pytest

from lmrm import asymptotics as A
from lmrm.constructions import congruence_size
from lmrm.errors import LMRMError


def test_construction1_examples():
    assert A.rate_construction1(0.5) == pytest.approx(0.5, abs=1e-12)
    assert A.rate_construction1(1) == 0
    assert A.rate_construction1(1 / 3) == pytest.approx(math.log2(6) / 3, abs=1e-12)
    for k in range(1, 12):
        assert A.rate_construction1(1 / k) == pytest.approx(math.log2(math.factorial(k)) / k, abs=1e-12)


def test_construction1_finite_n_limit():
    for k in (2, 3, 4):
        limit = A.rate_construction1(1 / k)
        # d = n/k exactly: the finite rate already equals the limit
        assert abs(math.log2(congruence_size(120, 120 // k)) / 120 - limit) < 1e-12
        # d = ceil(n/k) with k not dividing n: the gap shrinks with n
        errs = [abs(math.log2(congruence_size(n, -(-n // k))) / n - limit) for n in (13, 25, 49, 97, 121)]
        assert errs == sorted(errs, reverse=True)
        assert errs[-1] < 0.05


def test_construction1_matches_finite_rate_at_its_own_delta():
    for n in range(5, 60, 7):
        for d in range(1, n + 1):
            finite = math.log2(congruence_size(n, d)) / n
            assert finite == pytest.approx(A.rate_construction1(d / n), abs=1e-9)


def test_gv_examples():
    assert A.gv_rate(1) == pytest.approx(0, abs=1e-15)
    lo = math.log2(2) + 2 * 0.5 * (math.log2(math.e) - 1) - 1
    hi = -2 * 0.5 * math.log2(2) + 2 * 0.5 * math.log2(math.e)
    assert lo == pytest.approx(hi, abs=1e-12)
    assert A.gv_rate(0.5) == pytest.approx(math.log2(math.e) - 1, abs=1e-12)
    assert A.gv_rate(0.2) == pytest.approx(math.log2(5) + 0.4 * (math.log2(math.e) - 1) - 1, abs=1e-12)
    assert A.gv_rate(0.2) == pytest.approx(1.499006, abs=1e-6)
    assert A.gv_rate(0.2) > A.gv_rate(0.3) > A.gv_rate(0.6)


def test_gv_continuous_at_seam():
    assert abs(A.gv_rate(0.5 - 1e-12) - A.gv_rate(0.5 + 1e-12)) < 1e-9


def test_anticode_examples():
    assert A.anticode_rate_upper(0.5) == pytest.approx(1.0, abs=1e-12)
    assert A.anticode_rate_upper(1) == pytest.approx(0.0, abs=1e-12)
    assert abs(A.anticode_rate_upper(0.5 - 1e-9) - 1) < 1e-6
    assert abs(A.anticode_rate_upper(0.5 + 1e-9) - 1) < 1e-6


def test_ballpacking_examples():
    assert A.ballpacking_rate_upper(1) == 1
    assert A.ballpacking_rate_upper(0.5) == 1.5


def test_domain():
    for f in (A.rate_construction1, A.gv_rate, A.anticode_rate_upper, A.ballpacking_rate_upper):
        for bad in (0, -0.1, 1.01):
            with pytest.raises(LMRMError):
                f(bad)


def test_crossover():
    x = A.gv_crossover()
    assert abs(x - 0.34904) < 1e-4
    # construction beats the greedy bound above the crossover, not below
    assert A.rate_construction1(0.2) < A.gv_rate(0.2)
    assert A.rate_construction1(0.45) > A.gv_rate(0.45)
    with pytest.raises(LMRMError):
        A.gv_crossover(0.5, 0.6)


def test_dominance_on_grid():
    for delta in A.grid(1e-3):
        c, d, e, f = (A._CURVE_FUNCS[k](delta) for k in "cdef")
        assert f >= e - 1e-12
        assert e >= c - 1e-12
        assert all(math.isfinite(v) and v >= -1e-12 for v in (c, d, e, f))


def test_construction_jumps_at_reciprocals():
    for k in (2, 3, 4):
        x = 1 / k
        left, right = A.rate_construction1(x - 1e-9), A.rate_construction1(x)
        assert right == pytest.approx(math.log2(math.factorial(k)) / k, abs=1e-12)
        # the curve is continuous in value across 1/k but its slope changes
        slope_l = (A.rate_construction1(x - 1e-6) - A.rate_construction1(x - 2e-6)) / 1e-6
        slope_r = (A.rate_construction1(x + 2e-6) - A.rate_construction1(x + 1e-6)) / 1e-6
        assert abs(left - right) < 1e-6
        assert abs(slope_l - slope_r) > 0.1


def test_emit_curves_and_csv():
    rows = A.emit_curves(0.01)
    assert {r[1] for r in rows} == set("cdef")
    assert len(rows) == 4 * 100
    text = A.curves_csv(0.25)
    lines = text.splitlines()
    assert lines[0] == "delta,curve,R" and len(lines) == 17
    assert text == A.curves_csv(0.25)
    with pytest.raises(LMRMError):
        A.grid(0)
