"""Evolutionary construction of permutation codes.

A permutation code of length ``n`` and minimum distance ``d`` is a set of
permutations of ``1..n`` whose pairwise Hamming distances are all at least
``d``.  Codes are grown one permutation at a time by a steady-state genetic
algorithm or by random sampling, optionally with random resets.
"""

from .code_store import PermutationCode, read_code, write_code
from .combinatorics import (
    bounds_report,
    derangements,
    gv_lower_bound,
    known_best,
    log10_search_space,
    sphere_packing_upper_bound,
)
from .config import SearchConfig
from .driver import RunRecord, run
from .estimator import PermutationCodeSearch
from .fitness import FitnessSpec, fit1, fit2, fit3, fit4
from .oracle import exact_max_code, greedy_clique
from .perm_core import cyclic_latin_square, hamming_distance, random_permutation

__all__ = [
    "PermutationCode",
    "PermutationCodeSearch",
    "RunRecord",
    "SearchConfig",
    "FitnessSpec",
    "bounds_report",
    "cyclic_latin_square",
    "derangements",
    "exact_max_code",
    "fit1",
    "fit2",
    "fit3",
    "fit4",
    "greedy_clique",
    "gv_lower_bound",
    "hamming_distance",
    "known_best",
    "log10_search_space",
    "random_permutation",
    "read_code",
    "run",
    "sphere_packing_upper_bound",
    "write_code",
]
