"""Graver bases by enumeration and by completion, plus norm bounds."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import isqrt
from typing import Iterable, NamedTuple, Sequence

from .core import ILPInstance, UsageError, dot, in_bounds, iter_box_solutions, iter_feasible, matvec
from .linalg import kernel_lattice_basis, primitive, rank, rational_nullspace


def conformal_leq(x: Sequence[int], y: Sequence[int]) -> bool:
    """x is conformal to y: same orthant and |x_i| <= |y_i| everywhere."""
    if len(x) != len(y):
        raise UsageError("conformal_leq needs vectors of equal length")
    return all(a * b >= 0 and abs(a) <= abs(b) for a, b in zip(x, y))


def _norm1(v):
    return sum(map(abs, v))


def _norminf(v):
    return max(map(abs, v), default=0)


def _ncols(A, n=None):
    if n is not None:
        return n
    if not A:
        raise UsageError("pass n explicitly for a matrix without rows")
    return len(A[0])


@dataclass(frozen=True)
class GraverBasis:
    elements: tuple[tuple[int, ...], ...]
    radius: int
    certified: bool

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return tuple(g) in set(self.elements)

    def check(self, A) -> None:
        """Assert the structural invariants of a Graver basis."""
        elems = set(self.elements)
        for g in self.elements:
            assert any(g), "zero vector in basis"
            assert not any(matvec(A, g)), f"{g} not in kernel"
            assert tuple(-v for v in g) in elems, f"-{g} missing"
        for g, h in itertools.permutations(self.elements, 2):
            assert not conformal_leq(g, h), f"{g} below {h}"


class Norms(NamedTuple):
    g1: int
    ginf: int


def norms(gb: Iterable[Sequence[int]]) -> Norms:
    elems = list(gb)
    return Norms(max((_norm1(g) for g in elems), default=0),
                 max((_norminf(g) for g in elems), default=0))


def _minimal_filter(vectors: Iterable[tuple[int, ...]]) -> list[tuple[int, ...]]:
    # Any non-minimal vector dominates a minimal one of smaller l1 norm,
    # so checking against already accepted vectors suffices.
    out: list[tuple[int, ...]] = []
    for v in sorted(set(vectors), key=lambda v: (_norm1(v), v)):
        if not any(v) or any(conformal_leq(g, v) for g in out):
            continue
        out.append(v)
    return sorted(out)


# ---------------------------------------------------------------------------
# bounds


def distinct_columns(A, n=None) -> int:
    n = _ncols(A, n)
    return len({tuple(row[j] for row in A) for j in range(n)})


def column_bound(A, n=None) -> int | None:
    """(d - r)(r + 1)(ceil(sqrt m) a)^m bound on g1(A).

    Returns None when the bound is inapplicable: d == r while some column
    repeats (the formula gives 0 although the kernel is nontrivial).
    """
    n = _ncols(A, n)
    if not any(v for row in A for v in row):
        raise UsageError("column_bound needs a nonzero matrix")
    m = len(A)
    a = max(2, max(abs(v) for row in A for v in row))
    d = distinct_columns(A, n)
    r = rank(A)
    if d == r and n > d:
        return None
    root = isqrt(m)
    if root * root < m:
        root += 1
    return (d - r) * (r + 1) * (root * a) ** m


def circuits(A, n=None) -> list[tuple[int, ...]]:
    """Primitive kernel vectors with inclusion-minimal support, both signs."""
    n = _ncols(A, n)
    out = []
    supports: list[set[int]] = []
    for size in range(1, n + 1):
        for S in itertools.combinations(range(n), size):
            if any(set(S) > c for c in supports):
                continue
            sub = [[row[j] for j in S] for row in A]
            if rank(sub) != size - 1:
                continue
            (vec,) = rational_nullspace(sub, size)
            if any(v == 0 for v in vec):
                continue
            p = primitive(vec)
            full = [0] * n
            for j, v in zip(S, p):
                full[j] = v
            supports.append(set(S))
            out.append(tuple(full))
            out.append(tuple(-v for v in full))
    return sorted(out)


def circuit_inf(A, n=None) -> int:
    return _norminf_max(circuits(A, n))


def _norminf_max(vs):
    return max((_norminf(v) for v in vs), default=0)


def circuit_bound(A, n=None) -> int:
    """(n - r) * c_inf bound on g_inf(A).

    A Graver element is a conformal nonnegative combination of at most n - r
    circuits with coefficients below one (or is itself a circuit).
    """
    n = _ncols(A, n)
    r = rank(A)
    return (n - r) * circuit_inf(A, n)


def ginf_upper_bound(A, n=None) -> int:
    """Smallest of the available certified upper bounds on g_inf(A)."""
    n = _ncols(A, n)
    bounds = [circuit_bound(A, n)]
    if any(v for row in A for v in row):
        cb = column_bound(A, n)
        if cb is not None:
            bounds.append(cb)
    return min(bounds)


# ---------------------------------------------------------------------------
# Graver bases


def kernel_points(A, radius: int, n=None):
    n = _ncols(A, n)
    return iter_box_solutions(A, [0] * len(A), [-radius] * n, [radius] * n)


def graver_basis(A, radius: int, n=None, bound: int | None = None) -> GraverBasis:
    """All conformally minimal nonzero kernel vectors with ||g||_inf <= radius.

    ``certified`` is true when radius reaches ``bound`` (if given) or the
    derived upper bound on g_inf(A).
    """
    if radius < 1:
        raise UsageError("radius must be at least 1")
    n = _ncols(A, n)
    elems = _minimal_filter(kernel_points(A, radius, n))
    if bound is None:
        bound = ginf_upper_bound(A, n)
    return GraverBasis(tuple(elems), radius, radius >= bound)


def _normal_form(s, G):
    changed = True
    while changed and any(s):
        changed = False
        for g in G:
            if conformal_leq(g, s):
                s = tuple(a - b for a, b in zip(s, g))
                changed = True
                break
    return s


def graver_completion(A, n=None) -> GraverBasis:
    """Exact Graver basis by the conformal completion procedure.

    Starts from a symmetric lattice basis of ker(A), repeatedly adds the
    reduced sums of pairs, then keeps the conformally minimal elements.
    """
    n = _ncols(A, n)
    basis = kernel_lattice_basis(A, n) if A else [tuple(int(i == j) for j in range(n)) for i in range(n)]
    G: list[tuple[int, ...]] = []
    for v in basis:
        G.append(tuple(v))
        G.append(tuple(-x for x in v))
    pairs = [tuple(a + b for a, b in zip(f, g)) for f, g in itertools.combinations(G, 2)]
    while pairs:
        s = pairs.pop()
        f = _normal_form(s, G)
        if any(f):
            pairs.extend(tuple(a + b for a, b in zip(f, g)) for g in G)
            G.append(f)
    elems = _minimal_filter(G)
    return GraverBasis(tuple(elems), _norminf_max(elems), True)


def is_graver_element(A, v: Sequence[int]) -> bool:
    """Kernel membership plus minimality, by enumerating the conformal box below v."""
    v = tuple(v)
    if not any(v) or any(matvec(A, v)):
        return False
    lo = [min(0, x) for x in v]
    hi = [max(0, x) for x in v]
    for u in iter_box_solutions(A, [0] * len(A), lo, hi):
        if any(u) and u != v:
            return False
    return True


def is_test_set(inst: ILPInstance, gb: Iterable[Sequence[int]], box=None) -> bool:
    """Every feasible non-optimal point of the boxed instance has an improving
    step x + lam*g (lam >= 1) that stays feasible."""
    pts = list(iter_feasible(inst, box))
    if not pts:
        return True
    lo = list(inst.l)
    hi = list(inst.u)
    if box is not None:
        blo, bhi = box
        n = inst.n
        blo = blo if isinstance(blo, (list, tuple)) else [blo] * n
        bhi = bhi if isinstance(bhi, (list, tuple)) else [bhi] * n
        lo = [max(a, b) for a, b in zip(lo, blo)]
        hi = [min(a, b) for a, b in zip(hi, bhi)]
    best = min(dot(inst.w, p) for p in pts)
    gs = [tuple(g) for g in gb]
    for x in pts:
        wx = dot(inst.w, x)
        if wx == best:
            continue
        # lam = 1 suffices: the box is convex and A g = 0 keeps A x = b
        found = False
        for g in gs:
            if dot(inst.w, g) >= 0:
                continue
            y = tuple(a + b for a, b in zip(x, g))
            if in_bounds(y, lo, hi):
                found = True
                break
        if not found:
            return False
    return True
