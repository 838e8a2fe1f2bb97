"""Limit rate curves (bits per cell against normalized distance).

All o(1) terms are dropped. At delta = 1/k the floor is taken literally,
so the curves are right-continuous at reciprocal integers.
"""

import csv
import io
import math

from .errors import LMRMError

_SNAP = 1e-12
CURVES = ("c", "d", "e", "f")
CURVE_NAMES = {
    "c": "congruence construction rate",
    "d": "greedy existence bound",
    "e": "code-anticode upper bound",
    "f": "ball-packing upper bound",
}


def _check(delta):
    if not 0 < delta <= 1:
        raise LMRMError(f"delta must lie in (0, 1], got {delta}")


def _floor_inv(delta):
    """floor(1/delta), snapping 1/delta to an integer within rounding noise."""
    x = 1 / delta
    k = round(x)
    return k if abs(x - k) < _SNAP * x else math.floor(x)


def _ceil_inv(delta):
    x = 1 / delta
    k = round(x)
    return k if abs(x - k) < _SNAP * x else math.ceil(x)


def _log2_factorial(k):
    return math.lgamma(k + 1) / math.log(2)


def _h2(p):
    if p <= 0 or p >= 1:
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def rate_construction1(delta):
    _check(delta)
    k = _floor_inv(delta)
    big = 1 - delta * k
    small = delta + delta * k - 1
    # at delta = 1/k the first weight vanishes and ceil(1/delta) is irrelevant
    if abs(big) < _SNAP:
        big = 0.0
    return big * _log2_factorial(_ceil_inv(delta)) + small * _log2_factorial(k)


def gv_rate(delta):
    _check(delta)
    if delta <= 0.5:
        return math.log2(1 / delta) + 2 * delta * (math.log2(math.e) - 1) - 1
    return -2 * delta * math.log2(1 / delta) + 2 * (1 - delta) * math.log2(math.e)


def anticode_rate_upper(delta):
    _check(delta)
    k = _floor_inv(delta)
    p = delta * k - delta
    spread = p * math.log2(k - 1) if k > 1 else 0.0
    return spread + _h2(p) + 2 - 2 * delta * k


def ballpacking_rate_upper(delta):
    _check(delta)
    return delta + math.log2(1 / delta)


_CURVE_FUNCS = {
    "c": rate_construction1,
    "d": gv_rate,
    "e": anticode_rate_upper,
    "f": ballpacking_rate_upper,
}


def gv_crossover(lo=0.3, hi=0.4, tol=1e-8):
    """Where the congruence construction overtakes the greedy bound, by bisection."""

    def gap(x):
        return rate_construction1(x) - gv_rate(x)

    glo, ghi = gap(lo), gap(hi)
    if glo * ghi > 0:
        raise LMRMError(f"no sign change of the rate gap on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        gmid = gap(mid)
        if (gmid > 0) == (glo > 0):
            lo, glo = mid, gmid
        else:
            hi = mid
    return (lo + hi) / 2


def grid(step):
    if not 0 < step <= 1:
        raise LMRMError(f"grid step must lie in (0, 1], got {step}")
    count = int(math.floor(1 / step + 1e-9))
    points = [round(i * step, 12) for i in range(1, count + 1)]
    if points[-1] < 1:
        points.append(1.0)
    return points


def emit_curves(grid_step):
    """Rows ``(delta, curve, R)`` for every grid point and curve, delta-major."""
    rows = []
    for delta in grid(grid_step):
        for cid in CURVES:
            rows.append((delta, cid, _CURVE_FUNCS[cid](delta)))
    return rows


def curves_csv(grid_step):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["delta", "curve", "R"])
    for delta, cid, R in emit_curves(grid_step):
        w.writerow([f"{delta:.12g}", cid, f"{R:.12f}"])
    return buf.getvalue()
