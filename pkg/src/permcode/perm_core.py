"""Permutations as 1-based integer vectors, Hamming distance, basic constructions.

A permutation of length ``n`` is stored as a one-dimensional ``int64`` numpy
array holding each of ``1..n`` exactly once.  Arrays handed out by this
package are marked read-only.
"""

import numpy as np

from . import _kernels
from ._validation import check_length, check_permutation, check_random_state, check_same_length


def as_permutation(values, n=None):
    """Validate untrusted input and return it as a read-only permutation array."""
    arr = check_permutation(values, n)
    arr.flags.writeable = False
    return arr


def identity(n):
    n = check_length(n)
    arr = np.arange(1, n + 1, dtype=np.int64)
    arr.flags.writeable = False
    return arr


def hamming_distance(a, b):
    """Number of positions where ``a`` and ``b`` differ."""
    a = np.asarray(a)
    b = np.asarray(b)
    check_same_length(a, b)
    return int(np.count_nonzero(a != b))


def random_permutation(n, rng=None):
    """Uniform random permutation of ``1..n`` drawn from ``rng``."""
    n = check_length(n)
    rng = check_random_state(rng)
    arr = rng.permutation(n).astype(np.int64) + 1
    arr.flags.writeable = False
    return arr


def random_permutations(count, n, rng):
    """``count`` independent uniform permutations as the rows of a matrix."""
    base = np.broadcast_to(np.arange(1, n + 1, dtype=np.int64), (count, n))
    return rng.permuted(base, axis=1)


def cyclic_latin_square(n):
    """All cyclic shifts of the identity; row ``i`` maps ``j`` to ``((i + j - 1) mod n) + 1``.

    Any two rows differ everywhere, so the result is a code of length ``n``
    and minimum distance ``n`` with ``n`` rows.
    """
    n = check_length(n)
    i = np.arange(n).reshape(-1, 1)
    j = np.arange(1, n + 1).reshape(1, -1)
    return [row for row in ((i + j - 1) % n + 1).astype(np.int64)]


def min_distance_to(rows, p):
    """Smallest Hamming distance from ``p`` to any row; ``len(p)`` when ``rows`` is empty."""
    rows = np.asarray(rows, dtype=np.int64)
    p = np.ascontiguousarray(p, dtype=np.int64)
    if rows.shape[0] == 0:
        return int(p.shape[0])
    check_same_length(rows[0], p)
    return int(_kernels.fitness(np.ascontiguousarray(rows), rows.shape[0], p, 0, _kernels.F3))
