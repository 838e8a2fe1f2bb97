"""A rank-modulation cell array with bounded spike noise.

Cell i of a codeword f is written at charge (n - f(i) + 1) * gap, so f(i)
is the rank of cell i (rank 1 = highest charge). Reading sorts charges in
descending order and returns each cell's rank; equal charges rank the
lower cell index first. Noise is i.i.d. Uniform[-spike, spike] per cell,
drawn from a generator seeded by ``(seed, trial)`` so every trial is
reproducible on its own.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import codec
from .constructions import congruence_size
from .errors import LMRMError, UncorrectableError
from .perm import Permutation, dist_inf


@dataclass(frozen=True)
class ChannelConfig:
    n: int
    gap: float = 1.0
    spike: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise LMRMError(f"need at least one cell, got n={self.n}")
        if not self.gap > 0:
            raise LMRMError(f"charge gap must be positive, got {self.gap}")
        if not self.spike >= 0:
            raise LMRMError(f"spike magnitude must be nonnegative, got {self.spike}")
        if not 0 <= self.seed < 2**64:
            raise LMRMError("seed must be a 64-bit unsigned integer")

    @property
    def crossing_reach(self):
        """Largest rank displacement the noise can cause: floor(2L/gap), or one less at exact multiples.

        Two cells k ranks apart start k*gap apart and can only swap if
        2L > k*gap, so no cell moves past a neighbour more than this many ranks away.
        """
        q = 2 * self.spike / self.gap
        k = math.floor(q)
        return k - 1 if k == q and k > 0 else k


def write(codeword, cfg):
    if len(codeword) != cfg.n:
        raise LMRMError(f"codeword has degree {len(codeword)}, channel has {cfg.n} cells")
    return np.array([(cfg.n - v + 1) * cfg.gap for v in codeword], dtype=float)


def noise(cfg, trial):
    rng = np.random.default_rng([cfg.seed, trial])
    return rng.uniform(-cfg.spike, cfg.spike, size=cfg.n)


def perturb(state, cfg, trial=0):
    if cfg.spike == 0:
        return np.array(state, dtype=float)
    return np.asarray(state, dtype=float) + noise(cfg, trial)


def read(state):
    charges = np.asarray(state, dtype=float)
    # stable sort on -charge keeps ties in cell-index order
    order = np.argsort(-charges, kind="stable")
    ranks = np.empty(len(charges), dtype=int)
    ranks[order] = np.arange(1, len(charges) + 1)
    return Permutation._trusted(ranks.tolist())


def _random_codeword(n, d, rng):
    M = congruence_size(n, d)
    m = int(rng.integers(0, M)) if M < 2**63 else int.from_bytes(rng.bytes(M.bit_length() // 8 + 1), "little") % M
    return m, codec.encode(n, d, m)


def displacement_bound_check(cfg, trials, d=None):
    """Largest rank displacement over ``trials`` noisy writes of random permutations.

    Asserts the observed value never exceeds :attr:`ChannelConfig.crossing_reach`,
    and, when ``d`` is given with d > 2L/gap, never exceeds d - 1.
    """
    worst = 0
    for t in range(trials):
        rng = np.random.default_rng([cfg.seed, t, 1])
        f = Permutation._trusted((rng.permutation(cfg.n) + 1).tolist())
        moved = dist_inf(f, read(perturb(write(f, cfg), cfg, t)))
        assert moved <= cfg.crossing_reach
        if d is not None and d > 2 * cfg.spike / cfg.gap:
            assert moved <= d - 1
        worst = max(worst, moved)
    return worst


@dataclass
class SimulationReport:
    trials: int
    decode_successes: int
    max_displacement: int
    within_radius: int

    def to_json(self):
        return {
            "trials": self.trials,
            "decode_successes": self.decode_successes,
            "max_displacement": self.max_displacement,
            "within_radius": self.within_radius,
        }


def simulate(n, d, gap=1.0, spike=0.0, trials=1000, seed=0):
    """Encode random messages with the (n, d) congruence code, pass them through the channel and decode.

    A trial whose displacement is within floor((d - 1) / 2) must decode to
    the sent message; that is asserted per trial.
    """
    cfg = ChannelConfig(n, gap, spike, seed)
    if not 1 <= d <= n:
        raise LMRMError(f"need 1 <= d <= n, got n={n}, d={d}")
    if trials < 0:
        raise LMRMError(f"trial count must be nonnegative, got {trials}")
    radius = (d - 1) // 2
    successes = worst = within = 0
    for t in range(trials):
        rng = np.random.default_rng([seed, t, 2])
        m, f = _random_codeword(n, d, rng)
        received = read(perturb(write(f, cfg), cfg, t))
        moved = dist_inf(f, received)
        worst = max(worst, moved)
        try:
            g, m_hat = codec.decode(n, d, received)
            ok = g == f and m_hat == m
        except UncorrectableError:
            ok = False
        if moved <= radius:
            within += 1
            assert ok, f"trial {t}: displacement {moved} within radius {radius} but decoding failed"
        successes += ok
    return SimulationReport(trials, successes, worst, within)
