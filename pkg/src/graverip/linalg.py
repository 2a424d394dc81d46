"""Exact linear algebra over Z and Q."""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence


def rank(A: Sequence[Sequence[int]]) -> int:
    M = [[Fraction(v) for v in row] for row in A]
    if not M:
        return 0
    m, n = len(M), len(M[0])
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, m):
            if M[i][c]:
                f = M[i][c] / M[r][c]
                for k in range(c, n):
                    M[i][k] -= f * M[r][k]
        r += 1
        if r == m:
            break
    return r


def rational_nullspace(A: Sequence[Sequence[int]], n: int) -> list[list[Fraction]]:
    """Basis of {x in Q^n : A x = 0} via reduced row echelon form."""
    M = [[Fraction(v) for v in row] for row in A]
    m = len(M)
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][c]
        M[r] = [v / p for v in M[r]]
        for i in range(m):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in zip(M, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def primitive(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector on its ray."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def column_echelon(A: Sequence[Sequence[int]], n: int):
    """Unimodular column reduction: returns (H, U, pivot_rows) with A U = H.

    H is in column echelon form: column k has its leading (positive) entry
    in row pivot_rows[k] and is zero above it; columns past len(pivot_rows)
    are zero, so the matching columns of U span the integer kernel.
    """
    m = len(A)
    H = [list(row) for row in A]
    U = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap(j, k):
        for row in H:
            row[j], row[k] = row[k], row[j]
        for row in U:
            row[j], row[k] = row[k], row[j]

    def axpy(j, k, q):  # col_j -= q * col_k
        for row in H:
            row[j] -= q * row[k]
        for row in U:
            row[j] -= q * row[k]

    def negate(k):
        for row in H:
            row[k] = -row[k]
        for row in U:
            row[k] = -row[k]

    k = 0
    pivots = []
    for i in range(m):
        if k == n:
            break
        while True:
            nz = [j for j in range(k, n) if H[i][j]]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(H[i][j]))
            if j0 != k:
                swap(j0, k)
            clean = True
            for j in range(k + 1, n):
                if H[i][j]:
                    axpy(j, k, H[i][j] // H[i][k])
                    if H[i][j]:
                        clean = False
            if clean:
                break
        if H[i][k]:
            if H[i][k] < 0:
                negate(k)
            pivots.append(i)
            k += 1
    return H, U, pivots


def integer_solve(A: Sequence[Sequence[int]], b: Sequence[int], n: int):
    """Some z in Z^n with A z = b, or None when no integer solution exists."""
    H, U, pivots = column_echelon(A, n)
    r = len(pivots)
    y = [0] * n
    k = 0
    for i in range(len(H)):
        acc = sum(H[i][j] * y[j] for j in range(k))
        if k < r and pivots[k] == i:
            rem = b[i] - acc
            if rem % H[i][k]:
                return None
            y[k] = rem // H[i][k]
            k += 1
        elif acc != b[i]:
            return None
    return tuple(sum(U[i][j] * y[j] for j in range(n)) for i in range(n))


def kernel_lattice_basis(A: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    """A basis of the lattice {x in Z^n : A x = 0}."""
    _, U, pivots = column_echelon(A, n)
    r = len(pivots)
    return [tuple(U[i][j] for i in range(n)) for j in range(r, n)]
