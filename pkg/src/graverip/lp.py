"""Exact rational simplex (two phases, Bland's rule) for

    min { w.y : A y = b, l <= y <= u, y real }

with extended-integer bounds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import ILPInstance, Status, is_finite


@dataclass
class LPResult:
    status: Status
    y: tuple | None = None
    objective: Fraction | None = None
    pivots: int = 0


def _simplex(T, basis, ncols, obj, stats):
    """Minimize obj.y over the tableau rows T (each row: coefficients + rhs).

    Returns False when unbounded, True at an optimum.
    """
    m = len(T)
    while True:
        # reduced costs
        red = list(obj)
        for i, bi in enumerate(basis):
            cb = obj[bi]
            if cb:
                row = T[i]
                for j in range(ncols):
                    if row[j]:
                        red[j] -= cb * row[j]
        enter = next((j for j in range(ncols) if red[j] < 0 and j not in basis), None)
        if enter is None:
            return True
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(T, basis, best[1], enter)
        stats[0] += 1


def _pivot(T, basis, r, c):
    p = T[r][c]
    T[r] = [v / p for v in T[r]]
    for i in range(len(T)):
        if i != r and T[i][c]:
            f = T[i][c]
            T[i] = [a - f * b for a, b in zip(T[i], T[r])]
    basis[r] = c


def solve_lp(inst: ILPInstance) -> LPResult:
    n = inst.n
    # y_j = shift_j + sign_j * (p_j - q_j)  with p, q >= 0 (q only for free vars)
    cols = []  # (orig j, coefficient) per standard-form column
    shift = [Fraction(0)] * n
    upper_rows = []  # (column index, width)
    for j in range(n):
        lo, hi = inst.l[j], inst.u[j]
        if is_finite(lo):
            shift[j] = Fraction(lo)
            cols.append((j, 1))
            if is_finite(hi):
                upper_rows.append((len(cols) - 1, hi - lo))
        elif is_finite(hi):
            shift[j] = Fraction(hi)
            cols.append((j, -1))
        else:
            cols.append((j, 1))
            cols.append((j, -1))
    if any(w < 0 for _, w in upper_rows):
        return LPResult(Status.INFEASIBLE)
    k = len(cols)
    nslack = len(upper_rows)
    N = k + nslack
    rows = []
    for i, arow in enumerate(inst.A):
        coeffs = [Fraction(arow[j] * s) for j, s in cols] + [Fraction(0)] * nslack
        rhs = Fraction(inst.b[i]) - sum(arow[j] * shift[j] for j in range(n))
        rows.append(coeffs + [rhs])
    for q, (c, width) in enumerate(upper_rows):
        coeffs = [Fraction(0)] * N
        coeffs[c] = Fraction(1)
        coeffs[k + q] = Fraction(1)
        rows.append(coeffs + [Fraction(width)])
    for row in rows:
        if row[-1] < 0:
            row[:] = [-v for v in row]
    cost = [Fraction(inst.w[j] * s) for j, s in cols] + [Fraction(0)] * nslack
    stats = [0]

    # phase one with one artificial per row
    m = len(rows)
    T = [row[:-1] + [Fraction(int(i == r)) for r in range(m)] + [row[-1]] for i, row in enumerate(rows)]
    basis = [N + i for i in range(m)]
    phase1 = [Fraction(0)] * N + [Fraction(1)] * m
    _simplex(T, basis, N + m, phase1, stats)
    if sum(T[i][-1] for i in range(m) if basis[i] >= N) != 0:
        return LPResult(Status.INFEASIBLE, pivots=stats[0])
    # drive artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(T):
        if basis[i] >= N:
            c = next((j for j in range(N) if T[i][j] != 0), None)
            if c is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, basis, i, c)
            stats[0] += 1
        i += 1
    T = [row[:N] + [row[-1]] for row in T]
    if not _simplex(T, basis, N, cost, stats):
        return LPResult(Status.UNBOUNDED, pivots=stats[0])
    z = [Fraction(0)] * N
    for i, bi in enumerate(basis):
        z[bi] = T[i][-1]
    y = list(shift)
    for (j, s), v in zip(cols, z):
        y[j] += s * v
    obj = sum(Fraction(w) * v for w, v in zip(inst.w, y))
    return LPResult(Status.OPTIMAL, tuple(y), obj, stats[0])


def floor_vec(y) -> tuple[int, ...]:
    return tuple(math.floor(v) for v in y)
