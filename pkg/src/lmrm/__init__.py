"""Permutation codes under the l-infinity metric, for rank-modulation storage."""

from .ballvolume import BinaryMatrix, ball_exact, ball_lower, ball_upper, ball_volume, bregman_bound, permanent
from .bounds import (
    anticode_upper,
    ballpacking_upper,
    bound_report,
    build_block_anticode,
    build_staircase_anticode,
    gv_lower,
    refined_anticode_upper,
    subgroup_sieve,
)
from .codec import decode, decode_product, encode
from .constructions import (
    Code,
    construct_congruence,
    construct_direct_product,
    construct_semidirect,
    subgroup_closure,
    verify_min_distance,
)
from .errors import LMRMError, UncorrectableError
from .kernels import BACKEND
from .perm import Permutation, compose, dist_inf, inverse, rank, relabel, unrank, weight

__version__ = "0.1.0"
