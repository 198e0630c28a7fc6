import collections

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from permcode import _kernels
from permcode.variation import (
    OperatorPool,
    cycle_crossover,
    invert_segment,
    inversion_mutation,
    make_offspring,
    order_crossover,
    order_with_cuts,
    pmx_crossover,
    pmx_with_cuts,
    scramble_mutation,
    swap_at,
    swap_mutation,
)

from oracles import distance

A8 = [1, 2, 3, 4, 5, 6, 7, 8]
B8 = [3, 7, 5, 1, 6, 8, 2, 4]


def is_perm(p, n):
    return sorted(int(x) for x in p) == list(range(1, n + 1))


perm_pairs = st.integers(2, 10).flatmap(
    lambda n: st.tuples(st.permutations(range(1, n + 1)), st.permutations(range(1, n + 1)))
)


# hand-worked traces


def test_pmx_traces():
    assert pmx_with_cuts([1, 2, 3, 4, 5], [5, 4, 3, 2, 1], 1, 3).tolist() == [5, 2, 3, 4, 1]
    assert pmx_with_cuts(A8, B8, 3, 5).tolist() == [3, 7, 8, 4, 5, 6, 2, 1]


def test_order_traces():
    assert order_with_cuts(A8, B8, 3, 5).tolist() == [7, 1, 8, 4, 5, 6, 2, 3]
    assert order_with_cuts([1, 2, 3, 4, 5], [5, 4, 3, 2, 1], 1, 3).tolist() == [5, 2, 3, 4, 1]


def test_cycle_traces():
    assert cycle_crossover([1, 2, 3, 4], [4, 3, 2, 1]).tolist() == [1, 3, 2, 4]
    a = [1, 2, 3, 4, 5, 6, 7, 8]
    b = [8, 5, 2, 1, 3, 6, 4, 7]
    assert cycle_crossover(a, b).tolist() == [1, 5, 2, 4, 3, 6, 7, 8]


def test_cycle_single_cycle_copies_first_parent():
    a = [1, 2, 3, 4, 5]
    b = [2, 3, 4, 5, 1]
    assert cycle_crossover(a, b).tolist() == a


def test_full_segment_copies_first_parent():
    a = [4, 1, 3, 2]
    b = [1, 2, 3, 4]
    assert pmx_with_cuts(a, b, 0, 3).tolist() == a
    assert order_with_cuts(a, b, 0, 3).tolist() == a


# properties


@settings(max_examples=200, deadline=None)
@given(perm_pairs, st.integers(0, 2**32 - 1))
def test_crossovers_yield_permutations(pair, seed):
    a, b = pair
    n = len(a)
    rng = np.random.default_rng(seed)
    for op in (pmx_crossover, cycle_crossover, order_crossover):
        assert is_perm(op(a, b, rng), n)


@settings(max_examples=200, deadline=None)
@given(perm_pairs, st.data())
def test_segment_inherited_from_first_parent(pair, data):
    a, b = pair
    n = len(a)
    i = data.draw(st.integers(0, n - 1))
    j = data.draw(st.integers(i, n - 1))
    for child in (pmx_with_cuts(a, b, i, j), order_with_cuts(a, b, i, j)):
        assert child[i : j + 1].tolist() == list(a[i : j + 1])


@settings(max_examples=200, deadline=None)
@given(perm_pairs)
def test_cycle_child_takes_each_position_from_a_parent(pair):
    a, b = pair
    child = cycle_crossover(a, b)
    assert all(c in (x, y) for c, x, y in zip(child.tolist(), a, b))


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 10).flatmap(lambda n: st.permutations(range(1, n + 1))), st.data())
def test_swap_moves_distance_by_two(p, data):
    n = len(p)
    i = data.draw(st.integers(0, n - 1))
    k = data.draw(st.integers(0, n - 1).filter(lambda x: x != i))
    assert distance(swap_at(p, i, k), p) == 2


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 10).flatmap(lambda n: st.permutations(range(1, n + 1))), st.data())
def test_inversion_distance_bounded_by_segment(p, data):
    n = len(p)
    i = data.draw(st.integers(0, n - 1))
    j = data.draw(st.integers(i, n - 1))
    out = invert_segment(p, i, j)
    assert is_perm(out, n)
    assert distance(out, p) <= j - i + 1
    # the middle of an odd segment stays put
    assert distance(out, p) <= 2 * ((j - i + 1) // 2)


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 10).flatmap(lambda n: st.permutations(range(1, n + 1))), st.data())
def test_scramble_touches_only_the_segment(p, data):
    n = len(p)
    i = data.draw(st.integers(0, n - 1))
    j = data.draw(st.integers(i, n - 1))
    u = np.array(data.draw(st.lists(st.floats(0, 1, exclude_max=True), min_size=n, max_size=n)))
    src = np.array(p, dtype=np.int64)
    out = np.empty_like(src)
    _kernels.scramble(src, i, j, u, out)
    assert is_perm(out, n)
    outside = np.r_[0:i, j + 1 : n]
    assert (out[outside] == src[outside]).all()
    assert sorted(out[i : j + 1]) == sorted(src[i : j + 1])


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 10).flatmap(lambda n: st.permutations(range(1, n + 1))), st.integers(0, 2**32 - 1))
def test_random_mutations_yield_permutations(p, seed):
    rng = np.random.default_rng(seed)
    assert distance(swap_mutation(p, rng), p) == 2
    for op in (inversion_mutation, scramble_mutation):
        assert is_perm(op(p, rng), len(p))


def test_mutations_leave_length_one_alone():
    for op in (swap_mutation, inversion_mutation, scramble_mutation):
        assert op([1], np.random.default_rng(0)).tolist() == [1]


def test_scramble_uniform_on_short_segment():
    # a full-length scramble at n = 3 should hit all 6 orders about equally
    src = np.array([1, 2, 3], dtype=np.int64)
    out = np.empty_like(src)
    rng = np.random.default_rng(7)
    counts = collections.Counter()
    trials = 60000
    for u in rng.random((trials, 3)):
        _kernels.scramble(src, 0, 2, u, out)
        counts[tuple(out)] += 1
    assert len(counts) == 6
    expected = trials / 6
    sigma = (trials * (1 / 6) * (5 / 6)) ** 0.5
    assert all(abs(c - expected) < 5 * sigma for c in counts.values())


# operator pool


def test_pool_rejects_bad_settings():
    with pytest.raises(ValueError):
        OperatorPool(crossovers=())
    with pytest.raises(ValueError):
        OperatorPool(mutations=("flip",))
    with pytest.raises(ValueError):
        OperatorPool(crossovers=("edge",))
    with pytest.raises(ValueError):
        OperatorPool(mutation_rate=1.5)


def test_operator_selection_is_uniform():
    pool = OperatorPool(mutation_rate=1.0)
    rng = np.random.default_rng(3)
    trace = []
    calls = 10000
    for _ in range(calls):
        make_offspring(pool, A8, B8, rng, trace)
    xo = collections.Counter(t[0] for t in trace)
    mut = collections.Counter(t[1] for t in trace)
    assert set(xo) == {"pmx", "cx", "ox"}
    assert set(mut) == {"swap", "inversion", "scramble"}
    sigma = (calls * (1 / 3) * (2 / 3)) ** 0.5
    for c in list(xo.values()) + list(mut.values()):
        assert abs(c - calls / 3) < 5 * sigma


def test_mutation_rate_zero_and_identical_parents():
    pool = OperatorPool(mutation_rate=0.0)
    rng = np.random.default_rng(11)
    trace = []
    for _ in range(500):
        assert make_offspring(pool, A8, A8, rng, trace).tolist() == A8
    assert all(m is None for _, m in trace)


def test_mutation_rate_one_always_mutates():
    pool = OperatorPool(mutation_rate=1.0, mutations=("swap",))
    rng = np.random.default_rng(12)
    for _ in range(500):
        # identical parents: crossover is a no-op, so the swap shows up as distance 2
        assert distance(make_offspring(pool, A8, A8, rng), A8) == 2


def test_mutation_rate_frequency():
    pool = OperatorPool(mutation_rate=0.3)
    rng = np.random.default_rng(5)
    trace = []
    calls = 10000
    for _ in range(calls):
        make_offspring(pool, A8, B8, rng, trace)
    hits = sum(m is not None for _, m in trace)
    sigma = (calls * 0.3 * 0.7) ** 0.5
    assert abs(hits - 0.3 * calls) < 5 * sigma


def test_offspring_deterministic_per_seed():
    pool = OperatorPool()

    def sample(seed):
        rng = np.random.default_rng(seed)
        return [make_offspring(pool, A8, B8, rng).tolist() for _ in range(50)]

    assert sample(9) == sample(9)
    assert sample(9) != sample(10)


def test_length_mismatch_rejected():
    with pytest.raises(ValueError):
        pmx_crossover([1, 2, 3], [1, 2, 3, 4], np.random.default_rng(0))
