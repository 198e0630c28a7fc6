"""Crossover and mutation operators that map permutations to permutations.

Cut points are 0-based inclusive positions ``i <= j`` in the explicit-cut
helpers; the randomized versions draw both cuts uniformly and sort them.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from ._validation import check_permutation, check_random_state, check_same_length, debug_enabled

CROSSOVERS = {"pmx": _kernels.PMX, "cx": _kernels.CX, "ox": _kernels.OX}
MUTATIONS = {"swap": _kernels.SWAP, "inversion": _kernels.INVERSION, "scramble": _kernels.SCRAMBLE}


def _arr(p):
    return np.ascontiguousarray(p, dtype=np.int64)


def _checked(out):
    if debug_enabled():
        check_permutation(out)
    return out


def _pair(a, b):
    a, b = _arr(a), _arr(b)
    check_same_length(a, b)
    return a, b


def _cuts(n, rng):
    i, j = sorted(int(x) for x in rng.integers(0, n, size=2))
    return i, j


def pmx_with_cuts(a, b, i, j):
    a, b = _pair(a, b)
    out = np.empty_like(a)
    _kernels.pmx(a, b, i, j, out)
    return _checked(out)


def order_with_cuts(a, b, i, j):
    a, b = _pair(a, b)
    out = np.empty_like(a)
    _kernels.ox(a, b, i, j, out)
    return _checked(out)


def pmx_crossover(a, b, rng=None):
    """Partially mapped crossover; the child keeps a segment of ``a``."""
    a, b = _pair(a, b)
    return pmx_with_cuts(a, b, *_cuts(a.size, check_random_state(rng)))


def cycle_crossover(a, b, rng=None):
    """Cycle crossover: alternate cycles of ``a[i] -> b[i]`` between the parents.

    Deterministic; ``rng`` is accepted for a uniform operator signature.
    """
    a, b = _pair(a, b)
    out = np.empty_like(a)
    _kernels.cx(a, b, out)
    return _checked(out)


def order_crossover(a, b, rng=None):
    """Order crossover: keep a segment of ``a``, fill the rest in ``b``'s cyclic order."""
    a, b = _pair(a, b)
    return order_with_cuts(a, b, *_cuts(a.size, check_random_state(rng)))


def swap_at(p, i, k):
    p = _arr(p)
    out = np.empty_like(p)
    _kernels.swap(p, i, k, out)
    return out


def invert_segment(p, i, j):
    p = _arr(p)
    out = np.empty_like(p)
    _kernels.inversion(p, i, j, out)
    return out


def swap_mutation(p, rng=None):
    p = _arr(p)
    if p.size < 2:
        return p.copy()
    i, k = check_random_state(rng).choice(p.size, size=2, replace=False)
    return _checked(swap_at(p, int(i), int(k)))


def inversion_mutation(p, rng=None):
    p = _arr(p)
    if p.size < 2:
        return p.copy()
    return _checked(invert_segment(p, *_cuts(p.size, check_random_state(rng))))


def scramble_mutation(p, rng=None):
    p = _arr(p)
    if p.size < 2:
        return p.copy()
    rng = check_random_state(rng)
    i, j = _cuts(p.size, rng)
    out = p.copy()
    out[i : j + 1] = rng.permutation(out[i : j + 1])
    return _checked(out)


@dataclass
class OperatorPool:
    """Operators picked uniformly for each offspring, plus the mutation probability."""

    crossovers: tuple = ("pmx", "cx", "ox")
    mutations: tuple = ("swap", "inversion", "scramble")
    mutation_rate: float = 0.3
    _xo_ids: np.ndarray = field(init=False, repr=False)
    _mut_ids: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.crossovers = tuple(self.crossovers)
        self.mutations = tuple(self.mutations)
        if not self.crossovers or not self.mutations:
            raise ValueError("operator pools must not be empty")
        for name in self.crossovers:
            if name not in CROSSOVERS:
                raise ValueError(f"unknown crossover {name!r}; choose from {sorted(CROSSOVERS)}")
        for name in self.mutations:
            if name not in MUTATIONS:
                raise ValueError(f"unknown mutation {name!r}; choose from {sorted(MUTATIONS)}")
        if not 0.0 <= self.mutation_rate <= 1.0:
            raise ValueError(f"mutation_rate must lie in [0, 1], got {self.mutation_rate}")
        self._xo_ids = np.array([CROSSOVERS[c] for c in self.crossovers], dtype=np.int64)
        self._mut_ids = np.array([MUTATIONS[m] for m in self.mutations], dtype=np.int64)

    def kernel_args(self):
        return self._xo_ids, self._mut_ids, float(self.mutation_rate)


def make_offspring(pool, a, b, rng=None, trace=None):
    """Cross ``a`` with ``b`` using a random pool crossover, then maybe mutate.

    When ``trace`` is a list, ``(crossover, mutation or None)`` names are
    appended to it.
    """
    a, b = _pair(a, b)
    rng = check_random_state(rng)
    u = rng.random(_kernels.offspring_stride(a.size))
    out = np.empty_like(a)
    tmp = np.empty_like(a)
    xo_ids, mut_ids, rate = pool.kernel_args()
    mut = _kernels.offspring(a, b, u, xo_ids, mut_ids, rate, out, tmp)
    if trace is not None:
        xo = pool.crossovers[min(int(u[0] * len(xo_ids)), len(xo_ids) - 1)]
        trace.append((xo, None if mut < 0 else _NAMES[mut]))
    return _checked(out)


_NAMES = {v: k for k, v in MUTATIONS.items()}
