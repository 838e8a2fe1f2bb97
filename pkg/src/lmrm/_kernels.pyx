# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled hot loops.

Counting kernels work modulo a caller-supplied prime; the Python layer in
:mod:`lmrm.kernels` runs several primes and reconstructs the exact integer
with the Chinese remainder theorem. Primes must be below 2**57.
"""

from libc.stdint cimport uint64_t, int64_t, int32_t
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector
from cython.operator cimport dereference as deref, preincrement as inc


def band_permanent_residues(int n, int r, list primes):
    """Permanent of the n x n band matrix |i-j| <= r modulo each prime in ``primes``.

    Requires 0 <= r < n - 1 and 2r + 1 <= 62. One pass carries every residue.
    """
    cdef int w = 2 * r + 1
    cdef uint64_t full = (<uint64_t>1 << w) - 1
    cdef uint64_t top = <uint64_t>1 << (w - 1)
    cdef uint64_t mask, free, low, key, spill, s
    cdef Py_ssize_t kp = len(primes), j, a, b, nstates
    cdef int i, k, col
    cdef vector[uint64_t] P
    cdef vector[uint64_t] states, nstates_v, counts, ncounts
    cdef unordered_map[uint64_t, Py_ssize_t] index
    cdef unordered_map[uint64_t, Py_ssize_t].iterator found

    for j in range(kp):
        P.push_back(<uint64_t>primes[j])

    mask = 0
    for k in range(w):
        col = 1 - r + k
        if col < 1 or col > n:
            mask |= <uint64_t>1 << k
    states.push_back(mask)
    for j in range(kp):
        counts.push_back(1 % P[j])

    for i in range(1, n + 1):
        spill = top if i + 1 + r > n else 0
        index.clear()
        nstates_v.clear()
        ncounts.clear()
        for a in range(<Py_ssize_t>states.size()):
            mask = states[a]
            free = (~mask) & full
            if free & 1:
                free = 1
            while free:
                low = free & (~free + 1)
                free ^= low
                key = ((mask | low) >> 1) | spill
                found = index.find(key)
                if found == index.end():
                    b = <Py_ssize_t>nstates_v.size()
                    index[key] = b
                    nstates_v.push_back(key)
                    for j in range(kp):
                        ncounts.push_back(counts[a * kp + j])
                else:
                    b = deref(found).second
                    for j in range(kp):
                        s = ncounts[b * kp + j] + counts[a * kp + j]
                        if s >= P[j]:
                            s -= P[j]
                        ncounts[b * kp + j] = s
        states.swap(nstates_v)
        counts.swap(ncounts)

    out = []
    for j in range(kp):
        s = 0
        for a in range(<Py_ssize_t>states.size()):
            s = (s + counts[a * kp + j]) % P[j]
        out.append(s)
    return out


def ryser_permanent_mod(list rows, int n, uint64_t p):
    """Permanent of a 0/1 matrix given as row bitmasks, modulo p (Ryser, Gray code)."""
    cdef vector[uint64_t] rowbits
    cdef vector[int64_t] rowsum
    cdef int i, j, sign
    cdef uint64_t gray, prev_gray, diff, subset_count, s
    cdef uint64_t prod, total = 0
    cdef int adding, bit

    for i in range(n):
        rowbits.push_back(<uint64_t>rows[i])
        rowsum.push_back(0)

    subset_count = <uint64_t>1 << n
    prev_gray = 0
    for s in range(1, subset_count):
        gray = s ^ (s >> 1)
        diff = gray ^ prev_gray
        bit = 0
        while not (diff >> bit) & 1:
            bit += 1
        adding = (gray >> bit) & 1
        for i in range(n):
            if (rowbits[i] >> bit) & 1:
                if adding:
                    rowsum[i] += 1
                else:
                    rowsum[i] -= 1
        prev_gray = gray
        prod = 1
        for i in range(n):
            if rowsum[i] == 0:
                prod = 0
                break
            prod = (prod * <uint64_t>rowsum[i]) % p
        if prod == 0:
            continue
        # sign (-1)^(n - |S|)
        if (n - _popcount(gray)) & 1:
            total = (total + p - prod) % p
        else:
            total = (total + prod) % p
    return total


cdef inline int _popcount(uint64_t x) nogil:
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c


def pairwise_linf(int32_t[:, ::1] X, bint minimize):
    """Min (or max) over row pairs of the l-infinity distance; -1 when fewer than two rows."""
    cdef Py_ssize_t m = X.shape[0], n = X.shape[1]
    cdef Py_ssize_t a, b, k
    cdef int32_t best, dist, diff
    if m < 2:
        return -1
    best = 2147483647 if minimize else -1
    with nogil:
        for a in range(m):
            for b in range(a + 1, m):
                dist = 0
                for k in range(n):
                    diff = X[a, k] - X[b, k]
                    if diff < 0:
                        diff = -diff
                    if diff > dist:
                        dist = diff
                        if minimize and dist >= best:
                            break
                if minimize:
                    if dist < best:
                        best = dist
                elif dist > best:
                    best = dist
    return best


cdef class _CliqueSearch:
    cdef Py_ssize_t nv, words
    cdef uint64_t[:, ::1] adj
    cdef vector[uint64_t] pbuf
    cdef vector[int] order, colors, current, best_set
    cdef int best, upper
    cdef long long nodes, budget
    cdef Py_ssize_t levels
    cdef bint aborted, done

    def __init__(self, uint64_t[:, ::1] adj, Py_ssize_t nv, int upper, long long budget):
        self.adj = adj
        self.nv = nv
        self.words = adj.shape[1]
        self.upper = upper
        self.budget = budget
        self.nodes = 0
        self.aborted = False
        self.done = False
        self.best = 0

    cdef int _color_sort(self, int depth):
        cdef Py_ssize_t W = self.words, w
        cdef uint64_t* P = &self.pbuf[depth * W]
        cdef int* order = &self.order[depth * self.nv]
        cdef int* colors = &self.colors[depth * self.nv]
        cdef vector[uint64_t] U, Q
        cdef int k = 0, cnt = 0, v
        cdef Py_ssize_t k2
        cdef uint64_t low
        cdef bint any_u, any_q
        U.assign(P, P + W)
        Q.resize(W)
        while True:
            any_u = False
            for w in range(W):
                if U[w]:
                    any_u = True
                    break
            if not any_u:
                break
            k += 1
            for w in range(W):
                Q[w] = U[w]
            w = 0
            while w < W:
                if Q[w] == 0:
                    w += 1
                    continue
                low = Q[w] & (~Q[w] + 1)
                v = <int>(w * 64 + _ctz(low))
                Q[w] ^= low
                U[w] &= ~low
                for k2 in range(w, W):
                    Q[k2] &= ~self.adj[v, k2]
                order[cnt] = v
                colors[cnt] = k
                cnt += 1
        return cnt

    cdef void _expand(self, int depth):
        cdef Py_ssize_t W = self.words, w
        cdef uint64_t* P
        cdef uint64_t* NP
        cdef int cnt, idx, v, c
        cdef bint empty
        self.nodes += 1
        if self.nodes > self.budget or depth + 2 >= self.levels:
            # the second test is a safety net; extension stops at the upper bound
            self.aborted = True
            return
        cnt = self._color_sort(depth)
        idx = cnt - 1
        while idx >= 0:
            c = self.colors[depth * self.nv + idx]
            if depth + c <= self.best:
                return
            v = self.order[depth * self.nv + idx]
            self.current[depth] = v
            P = &self.pbuf[depth * W]
            NP = &self.pbuf[(depth + 1) * W]
            empty = True
            for w in range(W):
                NP[w] = P[w] & self.adj[v, w]
                if NP[w]:
                    empty = False
            # a clique reaching the upper bound cannot be beaten, so stop extending it
            if empty or depth + 1 >= self.upper:
                if depth + 1 > self.best:
                    self.best = depth + 1
                    self.best_set.assign(&self.current[0], &self.current[0] + depth + 1)
                    if self.best >= self.upper:
                        self.done = True
            else:
                self._expand(depth + 1)
            if self.aborted or self.done:
                return
            P[v >> 6] &= ~(<uint64_t>1 << (v & 63))
            idx -= 1

    def run(self, list initial):
        cdef Py_ssize_t v, w
        self.best = len(initial)
        self.best_set.clear()
        for v in initial:
            self.best_set.push_back(<int>v)
        if self.best >= self.upper or self.nv == 0:
            return sorted(self.best_set), True
        # depth never exceeds the clique size, which is at most min(upper, nv)
        self.levels = min(<Py_ssize_t>self.upper, self.nv) + 2
        self.pbuf.resize(self.levels * self.words, 0)
        self.order.resize(self.levels * self.nv, 0)
        self.colors.resize(self.levels * self.nv, 0)
        self.current.resize(self.levels, 0)
        for w in range(self.words):
            self.pbuf[w] = 0
        for v in range(self.nv):
            self.pbuf[v >> 6] |= <uint64_t>1 << (v & 63)
        self._expand(0)
        return sorted(self.best_set), not self.aborted

    @property
    def node_count(self):
        return self.nodes


cdef inline int _ctz(uint64_t x) nogil:
    cdef int c = 0
    while not (x & 1):
        x >>= 1
        c += 1
    return c


def max_clique(uint64_t[:, ::1] adj, Py_ssize_t nv, list initial, int upper, long long budget):
    """Branch-and-bound maximum clique (bitset greedy-colouring bound).

    Returns ``(clique, completed, nodes)``; ``completed`` is False when the
    node budget ran out before the search space was exhausted.
    """
    search = _CliqueSearch(adj, nv, upper, budget)
    clique, completed = search.run(initial)
    return clique, completed, search.node_count
