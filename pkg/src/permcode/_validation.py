"""Input validation helpers shared by the public API."""

import numbers
import os

import numpy as np

_DEBUG = os.environ.get("PERMCODE_DEBUG", "") not in ("", "0")


def set_debug(flag):
    """Turn revalidation of internally produced permutations on or off."""
    global _DEBUG
    _DEBUG = bool(flag)


def debug_enabled():
    return _DEBUG


def check_random_state(seed):
    """Turn ``seed`` into a ``numpy.random.Generator``.

    ``None`` gives a fresh unseeded generator, an int seeds a new one and an
    existing Generator is passed through untouched.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is None or isinstance(seed, (numbers.Integral, np.integer)):
        return np.random.default_rng(seed)
    raise TypeError(f"{seed!r} cannot be used to seed a numpy Generator")


def check_length(n, name="n"):
    if not isinstance(n, (numbers.Integral, np.integer)) or isinstance(n, bool):
        raise TypeError(f"{name} must be an integer, got {type(n).__name__}")
    if n < 1:
        raise ValueError(f"{name} must be >= 1, got {n}")
    return int(n)


def check_length_distance(n, d):
    n = check_length(n)
    d = check_length(d, "d")
    if d > n:
        raise ValueError(f"minimum distance d={d} exceeds length n={n}")
    return n, d


def check_permutation(p, n=None):
    """Validate a single 1-based permutation and return it as an int64 array."""
    arr = np.asarray(p)
    if arr.ndim != 1:
        raise ValueError(f"a permutation must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError("a permutation must have length >= 1")
    if not np.issubdtype(arr.dtype, np.integer):
        if not np.all(np.equal(np.mod(arr, 1), 0)):
            raise ValueError("permutation entries must be integers")
    arr = arr.astype(np.int64)
    if n is not None and arr.size != n:
        raise ValueError(f"expected a permutation of length {n}, got {arr.size}")
    m = arr.size
    if arr.min() < 1 or arr.max() > m or np.unique(arr).size != m:
        raise ValueError(f"{arr.tolist()} is not a permutation of 1..{m}")
    return arr


def check_permutations(X, n=None):
    """Validate a 2-D array whose rows are 1-based permutations of the same length."""
    arr = np.asarray(X)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D array of permutations, got shape {arr.shape}")
    if n is not None and arr.shape[1] != n:
        raise ValueError(f"expected rows of length {n}, got {arr.shape[1]}")
    if arr.shape[0] == 0:
        return np.empty((0, arr.shape[1]), dtype=np.int64)
    arr = arr.astype(np.int64)
    width = arr.shape[1]
    if width == 0:
        raise ValueError("a permutation must have length >= 1")
    target = np.arange(1, width + 1)
    bad = np.flatnonzero(~np.all(np.sort(arr, axis=1) == target, axis=1))
    if bad.size:
        i = int(bad[0])
        raise ValueError(f"row {i + 1} {arr[i].tolist()} is not a permutation of 1..{width}")
    return arr


def check_same_length(a, b):
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} != {len(b)}")
