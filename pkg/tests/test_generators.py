import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graverip.core import ILPInstance, Status, brute_force_solve, in_bounds, matvec
from graverip.dp import dual_graph_of, incidence_from_dual, solve_incidence_dp
from graverip.generators import (
    NFoldConfig, RandomConfig, lowerbound_element, lowerbound_matrix, random_instance,
    random_nfold, subset_sum, subset_sum_feasible,
)
from graverip.graver import is_graver_element


def brute_subset_sum(S, s):
    return any(sum(c) == s for k in range(len(S) + 1) for c in itertools.combinations(S, k))


@given(st.lists(st.integers(1, 40), min_size=1, max_size=6), st.integers(0, 120))
def test_subset_sum_dp_agrees_with_combinations(S, s):
    assert subset_sum_feasible(S, s) == brute_subset_sum(S, s)


@given(st.lists(st.integers(1, 30), min_size=1, max_size=5), st.integers(0, 60))
def test_subset_sum_encoding_shape(S, s):
    enc = subset_sum(S, s)
    inst = enc.instance
    L = max(v.bit_length() for v in S)
    k = len(S)
    assert inst.n == k * (L + 3)
    assert inst.m == k * (L + 2) + 1
    assert inst.max_abs <= 2
    assert enc.decomposition.width == 3
    assert enc.decomposition.is_valid_for(dual_graph_of(inst.A, inst.n))


def test_subset_sum_encoding_witness():
    S, s = [5, 3, 6], 11
    enc = subset_sum(S, s)
    chosen = [1, 0, 1]
    point = []
    L = 3
    for xi, v in zip(chosen, S):
        point += [xi] + [xi * 2 ** j for j in range(L + 1)] + [xi * v]
    assert in_bounds(point, enc.instance.l, enc.instance.u)
    assert matvec(enc.instance.A, point) == enc.instance.b
    assert enc.selection(point) == chosen


@settings(max_examples=40)
@given(st.lists(st.integers(1, 9), min_size=1, max_size=3), st.integers(0, 20))
def test_subset_sum_encoding_feasibility(S, s):
    enc = subset_sum(S, s)
    inst = enc.instance
    rep = solve_incidence_dp(inst, incidence_from_dual(enc.decomposition, inst.A, inst.n))
    assert (rep.status == Status.OPTIMAL) == brute_subset_sum(S, s)
    if rep.status == Status.OPTIMAL:
        assert sum(x * v for x, v in zip(enc.selection(rep.point), S)) == s


def test_subset_sum_rejects_bad_input():
    with pytest.raises(ValueError):
        subset_sum([], 1)
    with pytest.raises(ValueError):
        subset_sum([0, 2], 1)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_lowerbound_element_is_graver(n):
    A = lowerbound_matrix(n)
    g = lowerbound_element(n)
    assert all(v == 0 for v in matvec(A, g))
    assert max(g) == 2 ** (n - 1)
    assert is_graver_element(A, g)


def test_random_instance_respects_config():
    rng = random.Random(3)
    cfg = RandomConfig(n_max=3, m_max=2, entry=1, bound=2)
    for _ in range(50):
        inst = random_instance(rng, cfg)
        assert 1 <= inst.n <= 3 and 1 <= inst.m <= 2
        assert inst.max_abs <= 1
        assert all(-2 <= lo <= hi <= 2 for lo, hi in zip(inst.l, inst.u))
        assert ILPInstance.from_json_obj(inst.to_json_obj()) == inst


def test_random_nfold_is_feasible_and_structured():
    rng = random.Random(4)
    for _ in range(10):
        inst, bs = random_nfold(rng, NFoldConfig(n=3))
        assert bs.kind == "nfold" and len(bs.bricks) == 3
        assert brute_force_solve(inst).status == Status.OPTIMAL
