"""Time the compiled and pure-Python kernels on the same inputs.

    python benchmarks/bench_kernels.py            # default sizes
    python benchmarks/bench_kernels.py --quick    # seconds, for CI

Every row also checks that both backends return the same value.
"""

import argparse
import time

import numpy as np

from lmrm import kernels
from lmrm.oracle import _bitsets, _distance_matrix, _weights, permutation_array


def timed(fn, *args, **kw):
    t = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t


def clique_graph(n, d):
    P = permutation_array(n)
    Q = P[_weights(P) >= d].astype(np.int16)
    A = _distance_matrix(Q) >= d
    np.fill_diagonal(A, False)
    return _bitsets(A)


def cases(quick):
    if quick:
        yield "band_permanent n=40 r=4", kernels.band_permanent, (40, 4), {}
        yield "ryser_permanent band n=14 r=3", kernels.ryser_permanent, (
            [sum(1 << j for j in range(max(0, i - 3), min(14, i + 4))) for i in range(14)], 14), {}
        yield "pairwise_linf S_6", kernels.pairwise_linf, (permutation_array(6),), {}
        yield "max_clique (6,4) code", kernels.max_clique, (clique_graph(6, 4),), {"upper": 9}
        return
    yield "band_permanent n=200 r=8", kernels.band_permanent, (200, 8), {}
    yield "band_permanent n=40 r=10", kernels.band_permanent, (40, 10), {}
    yield "ryser_permanent all-ones n=18", kernels.ryser_permanent, ([(1 << 18) - 1] * 18, 18), {}
    yield "pairwise_linf S_7 max", kernels.pairwise_linf, (permutation_array(7),), {"minimize": False}
    yield "max_clique (6,4) code", kernels.max_clique, (clique_graph(6, 4),), {"upper": 9}
    yield "max_clique (7,5) code, 200k nodes", kernels.max_clique, (clique_graph(7, 5),), {"upper": 10, "budget": 200_000}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    if kernels.compiled is None:
        raise SystemExit("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
    print(f"{'case':40s} {'compiled s':>11s} {'pure s':>9s} {'speedup':>8s}  agree")
    for name, fn, a, kw in cases(args.quick):
        fast, tc = timed(fn, *a, backend="compiled", **kw)
        slow, tp = timed(fn, *a, backend="pure", **kw)
        print(f"{name:40s} {tc:11.3f} {tp:9.3f} {tp / max(tc, 1e-9):8.1f}  {fast == slow}", flush=True)


if __name__ == "__main__":
    main()
