"""The permutation code under construction, its verifier and its file format.

File format::

    # optional comment lines
    n d m
    p11 p12 ... p1n
    ...
    pm1 pm2 ... pmn

All values are 1-based decimal integers separated by single spaces and the
file ends with a newline.
"""

import itertools

import numpy as np

from . import _kernels
from .combinatorics import floor_fraction, sphere_packing_upper_bound
from ._validation import check_length_distance, check_permutation, check_random_state, debug_enabled


class CodeFormatError(ValueError):
    """A code file could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CodeVerificationError(ValueError):
    """A set of rows violates the minimum distance."""

    def __init__(self, pair, distance, d):
        self.pair = pair
        self.distance = distance
        self.d = d
        super().__init__(
            f"rows {pair[0]} and {pair[1]} are at distance {distance} < d={d}"
        )


class PermutationCode:
    """Ordered set of permutations of ``1..n`` with pairwise distance at least ``d``.

    Rows keep insertion order.  Mutating methods keep the distance invariant:
    :meth:`add_row` refuses incompatible rows and removal cannot break it.
    """

    def __init__(self, n, d, rows=None):
        self.n, self.d = check_length_distance(n, d)
        self._buf = np.empty((8, self.n), dtype=np.int64)
        self._m = 0
        if rows is not None:
            for row in rows:
                self.add_row(check_permutation(row, self.n))

    def __len__(self):
        return self._m

    def __iter__(self):
        return iter(self.rows)

    def __eq__(self, other):
        if not isinstance(other, PermutationCode):
            return NotImplemented
        return (self.n, self.d) == (other.n, other.d) and np.array_equal(self.rows, other.rows)

    def __repr__(self):
        return f"PermutationCode(n={self.n}, d={self.d}, m={self._m})"

    @property
    def rows(self):
        view = self._buf[: self._m]
        view.flags.writeable = False
        return view

    def _raw_rows(self):
        # contiguous buffer plus row count, for the kernels
        return self._buf, self._m

    def copy(self):
        new = PermutationCode.__new__(PermutationCode)
        new.n, new.d = self.n, self.d
        new._buf = self._buf[: max(self._m, 8)].copy()
        new._m = self._m
        return new

    def is_compatible(self, p):
        """True iff ``p`` is at distance ``>= d`` from every row."""
        p = np.ascontiguousarray(p, dtype=np.int64)
        if p.shape != (self.n,):
            raise ValueError(f"expected a permutation of length {self.n}, got shape {p.shape}")
        return bool(_kernels.is_compatible(self._buf, self._m, p, self.d))

    def add_row(self, p):
        p = np.ascontiguousarray(p, dtype=np.int64)
        if debug_enabled():
            check_permutation(p, self.n)
            if self._m + 1 > floor_fraction(sphere_packing_upper_bound(self.n, self.d)):
                raise AssertionError("code size exceeds the sphere-packing bound")
        if not self.is_compatible(p):
            raise ValueError(f"{p.tolist()} is closer than d={self.d} to a row of the code")
        if self._m == self._buf.shape[0]:
            grown = np.empty((2 * self._m, self.n), dtype=np.int64)
            grown[: self._m] = self._buf[: self._m]
            self._buf = grown
        self._buf[self._m] = p
        self._m += 1
        return self

    def remove_random_rows(self, count, rng=None):
        """Drop ``count`` distinct rows chosen uniformly; at least one row always stays."""
        count = int(count)
        if not 1 <= count <= self._m - 1:
            raise ValueError(
                f"can remove between 1 and {max(0, self._m - 1)} rows from a code of size "
                f"{self._m}, got {count}"
            )
        rng = check_random_state(rng)
        drop = rng.choice(self._m, size=count, replace=False)
        keep = np.ones(self._m, dtype=bool)
        keep[drop] = False
        kept = self._buf[: self._m][keep]
        self._m = kept.shape[0]
        self._buf[: self._m] = kept
        return self

    def verify(self):
        """Full pairwise recheck.

        Returns ``(True, None)`` or ``(False, (i, j, distance))`` for the first
        offending pair, with 1-based row numbers.
        """
        return verify_rows(self.rows, self.d)


def verify_rows(rows, d):
    """Check all pairs of ``rows`` independently of any bookkeeping."""
    rows = [tuple(int(v) for v in r) for r in rows]
    for (i, a), (j, b) in itertools.combinations(enumerate(rows, start=1), 2):
        dist = sum(x != y for x, y in zip(a, b))
        if dist < d:
            return False, (i, j, dist)
    return True, None


def write_code(path, code, comments=()):
    lines = [f"# {c}" for c in comments]
    lines.append(f"{code.n} {code.d} {len(code)}")
    lines.extend(" ".join(str(int(v)) for v in row) for row in code.rows)
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def format_code(code):
    body = [f"{code.n} {code.d} {len(code)}"]
    body.extend(" ".join(str(int(v)) for v in row) for row in code.rows)
    return "\n".join(body) + "\n"


def parse_code(text):
    """Parse the text format and verify the result."""
    if text and not text.endswith("\n"):
        raise CodeFormatError("missing trailing newline")
    entries = [
        (lineno, line)
        for lineno, line in enumerate(text.split("\n")[:-1], start=1)
        if not line.startswith("#")
    ]
    if not entries:
        raise CodeFormatError("missing header line 'n d m'")
    lineno, header = entries[0]
    fields = _ints(header, lineno)
    if len(fields) != 3:
        raise CodeFormatError(f"header must be 'n d m', got {header!r}", lineno)
    n, d, m = fields
    try:
        check_length_distance(n, d)
    except ValueError as exc:
        raise CodeFormatError(str(exc), lineno) from None
    body = entries[1:]
    if len(body) != m:
        raise CodeFormatError(f"header announces {m} rows but {len(body)} follow", lineno)
    rows = np.empty((m, n), dtype=np.int64)
    for k, (lineno, line) in enumerate(body):
        values = _ints(line, lineno)
        if len(values) != n:
            raise CodeFormatError(f"row {k + 1} has {len(values)} entries, expected {n}", lineno)
        if sorted(values) != list(range(1, n + 1)):
            raise CodeFormatError(f"row {k + 1} is not a permutation of 1..{n}", lineno)
        rows[k] = values
    ok, bad = verify_rows(rows, d)
    if not ok:
        raise CodeVerificationError((bad[0], bad[1]), bad[2], d)
    code = PermutationCode(n, d)
    for row in rows:
        code.add_row(row)
    return code


def read_code(path):
    with open(path, encoding="ascii") as fh:
        return parse_code(fh.read())


def _ints(line, lineno):
    try:
        return [int(tok) for tok in line.split(" ")]
    except ValueError:
        raise CodeFormatError(f"expected space-separated integers, got {line!r}", lineno) from None
