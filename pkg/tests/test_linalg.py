from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from graverip.core import matvec
from graverip.linalg import column_echelon, integer_solve, kernel_lattice_basis, rank, rational_nullspace

from conftest import matrices


def test_integer_solve_parity():
    assert integer_solve([[2]], [3], 1) is None
    assert integer_solve([[2]], [4], 1) == (2,)


def test_integer_solve_two_columns():
    z = integer_solve([[1, 1]], [1], 2)
    assert z is not None and z[0] + z[1] == 1


def test_rank_small():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 0], [0, 1]]) == 2
    assert rank([]) == 0


@given(matrices())
def test_column_echelon_is_unimodular_transform(An):
    A, n = An
    H, U, pivots = column_echelon(A, n)
    AU = [[sum(A[i][k] * U[k][j] for k in range(n)) for j in range(n)] for i in range(len(A))]
    assert AU == H
    # U is unimodular: its determinant is +-1
    M = [[Fraction(v) for v in row] for row in U]
    det = Fraction(1)
    for c in range(n):
        p = next(r for r in range(c, n) if M[r][c] != 0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    assert abs(det) == 1
    assert len(pivots) == rank(A)


@given(matrices(), st.lists(st.integers(-4, 4), min_size=4, max_size=4))
def test_integer_solve_finds_solutions_when_they_exist(An, x):
    A, n = An
    x = x[:n]
    b = matvec(A, x)
    z = integer_solve(A, b, n)
    assert z is not None and matvec(A, z) == b


@given(matrices())
def test_kernel_basis_spans_rational_kernel(An):
    A, n = An
    basis = kernel_lattice_basis(A, n)
    assert len(basis) == len(rational_nullspace(A, n)) == n - rank(A)
    for v in basis:
        assert not any(matvec(A, v))
