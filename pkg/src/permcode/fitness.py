"""Scores for a candidate permutation against the current code.

With ``h_i`` the distance from the candidate to row ``i``:

* ``f1`` sums the ``h_i`` that reach ``d``;
* ``f2`` also counts the short ones, discounted by ``2 ** (h_i - d)``;
* ``f3`` is the smallest ``h_i``;
* ``f4`` counts the rows with ``h_i < d`` and is the only one minimized.

Against an empty code every candidate is already optimal: ``f1 = f2 = 0``,
``f3 = n`` and ``f4 = 0``.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels


class FitnessKind(enum.IntEnum):
    F1 = _kernels.F1
    F2 = _kernels.F2
    F3 = _kernels.F3
    F4 = _kernels.F4

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        if isinstance(value, int) and value in cls._value2member_map_:
            return cls(value)
        if isinstance(value, str):
            try:
                return cls[value.upper()]
            except KeyError:
                pass
        raise ValueError(f"unknown fitness {value!r}; expected one of f1, f2, f3, f4")

    @property
    def label(self):
        return self.name.lower()


@dataclass(frozen=True)
class FitnessSpec:
    kind: FitnessKind = FitnessKind.F3

    def __post_init__(self):
        object.__setattr__(self, "kind", FitnessKind.parse(self.kind))

    @property
    def maximize(self):
        return self.kind is not FitnessKind.F4

    def evaluate(self, code, p):
        return FITNESS_FUNCTIONS[self.kind](code, p)


def _distances(code, p):
    p = np.asarray(p)
    if p.shape != (code.n,):
        raise ValueError(f"expected a permutation of length {code.n}, got shape {p.shape}")
    return np.count_nonzero(code.rows != p, axis=1)


def fit1(code, p):
    h = _distances(code, p)
    return int(h[h >= code.d].sum())


def fit2(code, p):
    h = _distances(code, p)
    short = h[h < code.d]
    return float(h[h >= code.d].sum()) + math.fsum(
        math.ldexp(float(x), int(x) - code.d) for x in short
    )


def fit3(code, p):
    h = _distances(code, p)
    return int(h.min()) if h.size else code.n


def fit4(code, p):
    h = _distances(code, p)
    return int(np.count_nonzero(h < code.d))


FITNESS_FUNCTIONS = {
    FitnessKind.F1: fit1,
    FitnessKind.F2: fit2,
    FitnessKind.F3: fit3,
    FitnessKind.F4: fit4,
}


def better(spec, a, b):
    """Strict improvement of ``a`` over ``b``; ties are not improvements."""
    return a > b if spec.maximize else a < b
