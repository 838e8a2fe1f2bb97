"""Pure-Python versions of the compiled kernels.

Each function returns exactly what its compiled counterpart in
``_kernels.pyx`` returns (for the counting kernels, the exact integer
rather than a residue). The clique search follows the same branching
order, so witnesses and node counts agree between backends.
"""

import numpy as np


def band_permanent(n, r):
    """Exact permanent of the n x n band matrix |i-j| <= r (requires r < n - 1).

    Sliding-window subset DP: bit k of a state marks column ``i - r + k`` as
    consumed before row ``i`` is placed. Columns outside [1, n] start
    consumed, and column ``i - r`` is forced at row ``i`` (its last chance).
    """
    w = 2 * r + 1
    full = (1 << w) - 1
    top = 1 << (w - 1)
    mask = 0
    for k in range(w):
        col = 1 - r + k
        if col < 1 or col > n:
            mask |= 1 << k
    cur = {mask: 1}
    for i in range(1, n + 1):
        nxt = {}
        spill = top if i + 1 + r > n else 0
        for mask, cnt in cur.items():
            free = ~mask & full
            if free & 1:
                free = 1
            while free:
                low = free & -free
                free ^= low
                key = ((mask | low) >> 1) | spill
                nxt[key] = nxt.get(key, 0) + cnt
        cur = nxt
    return sum(cur.values())


def ryser_permanent(rows, n):
    """Exact permanent of a 0/1 matrix given as row bitmasks (Ryser with Gray code)."""
    if n == 0:
        return 1
    rowsum = [0] * n
    total = 0
    prev = 0
    for s in range(1, 1 << n):
        gray = s ^ (s >> 1)
        diff = gray ^ prev
        bit = diff.bit_length() - 1
        step = 1 if gray & diff else -1
        for i in range(n):
            if rows[i] >> bit & 1:
                rowsum[i] += step
        prev = gray
        prod = 1
        for v in rowsum:
            if v == 0:
                prod = 0
                break
            prod *= v
        if prod:
            if (n - bin(gray).count("1")) & 1:
                total -= prod
            else:
                total += prod
    return total


def pairwise_linf(X, minimize):
    X = np.asarray(X, dtype=np.int32)
    m = X.shape[0]
    if m < 2:
        return -1
    best = None
    for a in range(m - 1):
        d = np.abs(X[a + 1:] - X[a]).max(axis=1)
        v = int(d.min() if minimize else d.max())
        if best is None or (v < best if minimize else v > best):
            best = v
    return best


def max_clique(adj, nv, initial, upper, budget):
    """Branch-and-bound maximum clique over ``adj`` (list of int bitsets).

    Returns ``(clique, completed, nodes)``.
    """
    best = [len(initial), sorted(initial)]
    state = {"nodes": 0, "aborted": False, "done": False}
    if best[0] >= upper or nv == 0:
        return best[1], True, 0
    current = []

    def color_sort(P):
        order, colors = [], []
        U = P
        k = 0
        while U:
            k += 1
            Q = U
            while Q:
                low = Q & -Q
                v = low.bit_length() - 1
                Q &= ~low
                U &= ~low
                Q &= ~adj[v]
                order.append(v)
                colors.append(k)
        return order, colors

    def expand(depth, P):
        state["nodes"] += 1
        if state["nodes"] > budget:
            state["aborted"] = True
            return
        order, colors = color_sort(P)
        for idx in range(len(order) - 1, -1, -1):
            if depth + colors[idx] <= best[0]:
                return
            v = order[idx]
            del current[depth:]
            current.append(v)
            NP = P & adj[v]
            if not NP or depth + 1 >= upper:
                if depth + 1 > best[0]:
                    best[0] = depth + 1
                    best[1] = sorted(current)
                    if best[0] >= upper:
                        state["done"] = True
            else:
                expand(depth + 1, NP)
            if state["aborted"] or state["done"]:
                return
            P &= ~(1 << v)

    expand(0, (1 << nv) - 1)
    return best[1], not state["aborted"], state["nodes"]
