import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graverip.core import ILPInstance, UsageError, matvec
from graverip.generators import lowerbound_element, lowerbound_matrix
from graverip.graver import (
    circuit_bound, circuit_inf, circuits, column_bound, conformal_leq, ginf_upper_bound,
    graver_basis, graver_completion, is_graver_element, is_test_set, norms,
)

from conftest import matrices


def brute_graver(A, n, radius):
    """Independent oracle: all kernel points in the box, keep the minimal ones
    by pairwise comparison."""
    pts = [v for v in itertools.product(range(-radius, radius + 1), repeat=n)
           if any(v) and not any(matvec(A, v))]
    return sorted(v for v in pts if not any(u != v and conformal_leq(u, v) for u in pts))


def test_conformal_examples():
    assert conformal_leq((1, 1), (2, 1))
    assert not conformal_leq((1, -1), (2, 1))
    assert conformal_leq((0, 0), (5, -7))
    with pytest.raises(UsageError):
        conformal_leq((1,), (1, 2))


def test_basis_single_row():
    gb = graver_basis([[1, -1]], 2)
    assert gb.elements == ((-1, -1), (1, 1))
    assert norms(gb) == (2, 1)


def test_basis_two_by_three_family():
    gb = graver_basis([[2, -1, 0], [0, 2, -1]], 4)
    assert (1, 2, 4) in gb and (-1, -2, -4) in gb
    assert norms(gb).ginf == 4 and norms(gb).g1 == 7
    assert gb.certified


def test_basis_one_two():
    gb = graver_basis([[1, 2]], 2)
    assert set(gb.elements) == {(2, -1), (-2, 1)}
    assert norms(gb).g1 == 3


def test_trivial_kernel_has_empty_basis():
    assert norms(graver_basis([[1]], 3)) == (0, 0)
    assert len(graver_completion([[1, 0], [0, 1]])) == 0


def test_column_bound_examples():
    assert column_bound([[1, 2]]) == 4
    assert column_bound([[1, 0], [0, 1]]) == 0
    assert column_bound([[1, 1]]) is None  # d = r with a repeated column


def test_uncertified_radius_is_flagged():
    gb = graver_basis([[2, -1, 0], [0, 2, -1]], 3)
    assert not gb.certified and (1, 2, 4) not in gb


def test_circuits_of_lowerbound_matrix():
    A = lowerbound_matrix(4)
    assert circuits(A) == [tuple(-v for v in lowerbound_element(4)), lowerbound_element(4)]
    assert circuit_inf(A) == 8


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_lowerbound_family(n):
    A = lowerbound_matrix(n)
    gb = graver_basis(A, 2 ** (n - 1), n)
    assert gb.certified
    assert norms(gb).ginf == 2 ** (n - 1)
    assert graver_completion(A).elements == gb.elements


def test_is_test_set_examples():
    inst = ILPInstance([[1, -1]], [0], [1, 0], [0, 0], [5, 5])
    gb = graver_basis([[1, -1]], 2)
    assert is_test_set(inst, gb)
    assert not is_test_set(inst, [])
    single = ILPInstance([[1, 1]], [0], [1, 1], [0, 0], [5, 5])
    assert is_test_set(single, [])


def test_is_graver_element():
    A = [[2, -1, 0], [0, 2, -1]]
    assert is_graver_element(A, (1, 2, 4))
    assert not is_graver_element(A, (2, 4, 8))
    assert not is_graver_element(A, (0, 0, 0))


@settings(max_examples=40)
@given(matrices(max_m=2, max_n=3))
def test_enumeration_matches_brute_force(An):
    A, n = An
    gb = graver_basis(A, 3, n)
    gb.check(A)
    assert list(gb.elements) == brute_graver(A, n, 3)


@settings(max_examples=40)
@given(matrices(max_m=2, max_n=3))
def test_completion_matches_certified_enumeration(An):
    A, n = An
    exact = graver_completion(A, n)
    exact.check(A)
    bound = ginf_upper_bound(A, n)
    if bound <= 8:
        assert exact.elements == graver_basis(A, max(bound, 1), n).elements
    assert norms(exact).ginf <= bound


@settings(max_examples=40)
@given(matrices(max_m=2, max_n=4))
def test_norm_bounds_hold(An):
    A, n = An
    nm = norms(graver_completion(A, n))
    assert nm.ginf <= circuit_bound(A, n)
    if any(v for row in A for v in row):
        cb = column_bound(A, n)
        if cb is not None:
            assert nm.g1 <= cb


@settings(max_examples=30)
@given(matrices(max_m=2, max_n=3), st.lists(st.integers(-2, 2), min_size=3, max_size=3),
       st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_graver_basis_is_test_set(An, x, w):
    A, n = An
    x, w = x[:n], w[:n]
    inst = ILPInstance(A, matvec(A, x), w, [-2] * n, [2] * n)
    assert is_test_set(inst, graver_completion(A, n))
