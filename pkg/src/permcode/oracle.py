"""Exact answers for tiny lengths.

The largest code of length ``n`` and minimum distance ``d`` is a maximum
clique of the graph on all ``n!`` permutations whose edges join pairs at
distance ``>= d``.  For ``n <= 5`` that graph has at most 120 vertices and an
exact branch-and-bound search is quick.
"""

import itertools

import numpy as np

from ._validation import check_length, check_length_distance, check_random_state
from .code_store import PermutationCode

ENUMERATION_CAP = 8
EXACT_CAP = 5


class InstanceTooLarge(ValueError):
    """The requested instance is beyond the configured exact-search cap."""


def enumerate_sn(n, cap=ENUMERATION_CAP):
    """All permutations of ``1..n`` in lexicographic order, one per row."""
    n = check_length(n)
    if n > cap:
        raise InstanceTooLarge(f"refusing to enumerate {n}! permutations (cap is n <= {cap})")
    return np.array(list(itertools.permutations(range(1, n + 1))), dtype=np.int64).reshape(-1, n)


class CompatGraph:
    """Permutations of ``1..n`` joined when at Hamming distance ``>= d``."""

    def __init__(self, n, d, cap=ENUMERATION_CAP):
        self.n, self.d = check_length_distance(n, d)
        self.nodes = enumerate_sn(self.n, cap)
        size = self.nodes.shape[0]
        self.adjacency = np.zeros((size, size), dtype=bool)
        for i in range(size):
            dist = np.count_nonzero(self.nodes != self.nodes[i], axis=1)
            self.adjacency[i] = dist >= self.d

    def __len__(self):
        return self.nodes.shape[0]

    def degrees(self):
        return self.adjacency.sum(axis=1)

    def code_from(self, vertices):
        code = PermutationCode(self.n, self.d)
        for v in vertices:
            code.add_row(self.nodes[v])
        return code


def _to_bits(indices):
    bits = 0
    for i in indices:
        bits |= 1 << int(i)
    return bits


def degeneracy_order(adjacency):
    """Smallest-last vertex ordering."""
    adjacency = np.asarray(adjacency, dtype=bool)
    deg = adjacency.sum(axis=1).astype(np.int64)
    alive = np.ones(len(deg), dtype=bool)
    order = []
    for _ in range(len(deg)):
        cand = np.flatnonzero(alive)
        v = int(cand[np.argmin(deg[cand])])
        order.append(v)
        alive[v] = False
        deg[adjacency[v] & alive] -= 1
    return order[::-1]


class _CliqueSearch:
    # Branch and bound with a greedy colouring bound.  Vertices are relabelled
    # so that the lowest set bit is the first vertex in the search order.

    def __init__(self, neighbours, lower=()):
        self.nbr = neighbours
        self.best = list(lower)

    def colour_sort(self, cand):
        # vertices of cand with non-decreasing colour numbers
        verts, bounds = [], []
        colour = 0
        while cand:
            colour += 1
            avail = cand
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                avail &= ~self.nbr[v] & ~low
                cand &= ~low
                verts.append(v)
                bounds.append(colour)
        return verts, bounds

    def expand(self, clique, cand):
        verts, bounds = self.colour_sort(cand)
        for k in range(len(verts) - 1, -1, -1):
            if len(clique) + bounds[k] <= len(self.best):
                return
            v = verts[k]
            clique.append(v)
            sub = cand & self.nbr[v]
            if sub:
                self.expand(clique, sub)
            elif len(clique) > len(self.best):
                self.best = list(clique)
            clique.pop()
            cand &= ~(1 << v)


def max_clique(adjacency, lower=()):
    """Exact maximum clique of the graph with boolean ``adjacency``; returns sorted vertices."""
    adjacency = np.asarray(adjacency, dtype=bool)
    order = degeneracy_order(adjacency)
    relabel = np.empty(len(order), dtype=np.int64)
    relabel[order] = np.arange(len(order))
    permuted = adjacency[np.ix_(order, order)]
    neighbours = [_to_bits(np.flatnonzero(row)) for row in permuted]
    search = _CliqueSearch(neighbours, [int(relabel[v]) for v in lower])
    search.expand([], (1 << len(order)) - 1)
    return sorted(int(order[v]) for v in search.best)


def exact_max_code(n, d, cap=EXACT_CAP):
    """Size of the largest code of length ``n`` and distance ``d`` plus a witness.

    Refuses ``n > cap`` rather than approximating.
    """
    n, d = check_length_distance(n, d)
    if n > cap:
        raise InstanceTooLarge(f"exact search is limited to n <= {cap}, got n={n}")
    graph = CompatGraph(n, d, cap=max(cap, n))
    seed = _greedy_rows(graph.nodes, d, np.random.default_rng(0), start=0)
    clique = max_clique(graph.adjacency, lower=seed)
    code = graph.code_from(clique)
    ok, bad = code.verify()
    if not ok:
        raise AssertionError(f"clique search returned an invalid code: {bad}")
    return len(code), code


def _greedy_rows(nodes, d, rng, start):
    chosen = [start]
    cand = np.flatnonzero(np.count_nonzero(nodes != nodes[start], axis=1) >= d)
    while cand.size:
        v = int(cand[rng.integers(cand.size)])
        chosen.append(v)
        keep = np.count_nonzero(nodes[cand] != nodes[v], axis=1) >= d
        cand = cand[keep]
    return chosen


def greedy_clique(n, d, rng=None, cap=ENUMERATION_CAP):
    """Random maximal code: a random start extended by random compatible permutations."""
    n, d = check_length_distance(n, d)
    rng = check_random_state(rng)
    nodes = enumerate_sn(n, cap)
    start = int(rng.integers(nodes.shape[0]))
    code = PermutationCode(n, d)
    for v in _greedy_rows(nodes, d, rng, start):
        code.add_row(nodes[v])
    return code
