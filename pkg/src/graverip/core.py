"""Exact data model for standard-form integer programs.

    min { w.x : A x = b, l <= x <= u, x integer }

Bounds are Python ints or the float sentinels ``NEG_INF`` / ``POS_INF``.
Python compares big ints against float infinities exactly, so the
sentinels can be used directly in ``<=`` checks.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field, replace
from typing import Iterator, NamedTuple, Sequence

NEG_INF = -math.inf
POS_INF = math.inf


class UsageError(ValueError):
    """Raised when an operation is called outside its preconditions."""


# ---------------------------------------------------------------------------
# extended integers


def is_finite(v) -> bool:
    return not (isinstance(v, float) and math.isinf(v))


def ext_add(a, b):
    """Add two extended integers; opposite infinities are an error."""
    if not is_finite(a) and not is_finite(b) and a != b:
        raise ArithmeticError("cannot add opposite infinities")
    if not is_finite(a):
        return a
    if not is_finite(b):
        return b
    return a + b


def parse_ext(v):
    if isinstance(v, str):
        s = v.strip().lower()
        if s in ("-inf", "-infinity"):
            return NEG_INF
        if s in ("+inf", "inf", "+infinity", "infinity"):
            return POS_INF
        return int(s)
    if isinstance(v, float):
        if math.isinf(v):
            return v
        if v != int(v):
            raise UsageError(f"non-integer bound {v!r}")
        return int(v)
    if isinstance(v, bool):
        raise UsageError("booleans are not bounds")
    return int(v)


def format_ext(v):
    if is_finite(v):
        return int(v)
    return "+inf" if v > 0 else "-inf"


def _check_ext(v):
    if isinstance(v, float):
        if not math.isinf(v):
            raise UsageError(f"bound {v!r} must be an int or an infinity")
        return v
    if isinstance(v, bool) or not isinstance(v, int):
        raise UsageError(f"bound {v!r} must be an int or an infinity")
    return v


def _check_int(v):
    if isinstance(v, bool) or not isinstance(v, int):
        raise UsageError(f"{v!r} is not an integer")
    return v


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def matvec(A: Sequence[Sequence[int]], x: Sequence[int]) -> tuple[int, ...]:
    return tuple(dot(row, x) for row in A)


def transpose(A: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[tuple[int, ...], ...]:
    if not A:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*A))


# ---------------------------------------------------------------------------
# instances and reports


@dataclass(frozen=True)
class ILPInstance:
    A: tuple[tuple[int, ...], ...]
    b: tuple[int, ...]
    w: tuple[int, ...]
    l: tuple
    u: tuple

    def __post_init__(self):
        A = tuple(tuple(_check_int(v) for v in row) for row in self.A)
        b = tuple(_check_int(v) for v in self.b)
        w = tuple(_check_int(v) for v in self.w)
        l = tuple(_check_ext(v) for v in self.l)
        u = tuple(_check_ext(v) for v in self.u)
        n = len(w)
        if len(b) != len(A):
            raise UsageError(f"b has length {len(b)}, A has {len(A)} rows")
        for row in A:
            if len(row) != n:
                raise UsageError(f"row of length {len(row)} but w has length {n}")
        if len(l) != n or len(u) != n:
            raise UsageError("bounds must have one entry per column")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "u", u)

    @property
    def m(self) -> int:
        return len(self.A)

    @property
    def n(self) -> int:
        return len(self.w)

    @property
    def max_abs(self) -> int:
        return max((abs(v) for row in self.A for v in row), default=0)

    @property
    def a(self) -> int:
        """max(2, ||A||_inf)"""
        return max(2, self.max_abs)

    def row_support(self, i: int) -> tuple[int, ...]:
        return tuple(j for j, v in enumerate(self.A[i]) if v)

    def col_support(self, j: int) -> tuple[int, ...]:
        return tuple(i for i in range(self.m) if self.A[i][j])

    def has_finite_bounds(self) -> bool:
        return all(map(is_finite, self.l)) and all(map(is_finite, self.u))

    def replace(self, **kw) -> "ILPInstance":
        return replace(self, **kw)

    def to_json_obj(self) -> dict:
        return {
            "A": [list(r) for r in self.A],
            "b": list(self.b),
            "l": [format_ext(v) for v in self.l],
            "u": [format_ext(v) for v in self.u],
            "w": list(self.w),
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "ILPInstance":
        try:
            A = [[int(v) for v in row] for row in obj["A"]]
            w = [int(v) for v in obj["w"]]
            b = [int(v) for v in obj["b"]]
            n = len(w)
            l = [parse_ext(v) for v in obj.get("l", ["-inf"] * n)]
            u = [parse_ext(v) for v in obj.get("u", ["+inf"] * n)]
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed instance: {exc}") from exc
        return cls(A, b, w, l, u)


def dumps_instance(inst: ILPInstance, extra: dict | None = None) -> str:
    obj = inst.to_json_obj()
    if extra:
        obj.update(extra)
    return json.dumps(obj, sort_keys=True)


def loads_instance(text: str) -> ILPInstance:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise UsageError("instance JSON must be an object")
    return ILPInstance.from_json_obj(obj)


class Status(str, enum.Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


@dataclass
class SolveReport:
    status: Status
    point: tuple[int, ...] | None = None
    objective: int | None = None
    stats: dict = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        out = {"status": self.status.value, "stats": self.stats}
        if self.point is not None:
            out["point"] = list(self.point)
        if self.objective is not None:
            out["objective"] = self.objective
        return out


class Evaluation(NamedTuple):
    feasible: bool
    objective: int


def in_bounds(x: Sequence[int], l: Sequence, u: Sequence) -> bool:
    return all(lo <= v <= hi for v, lo, hi in zip(x, l, u))


def evaluate(inst: ILPInstance, x: Sequence[int]) -> Evaluation:
    if len(x) != inst.n:
        raise UsageError(f"point has length {len(x)}, instance has {inst.n} columns")
    feasible = in_bounds(x, inst.l, inst.u) and matvec(inst.A, x) == inst.b
    return Evaluation(feasible, dot(inst.w, x))


def is_feasible(inst: ILPInstance, x: Sequence[int]) -> bool:
    return evaluate(inst, x).feasible


# ---------------------------------------------------------------------------
# brute force over a finite box


def _effective_box(inst: ILPInstance, box) -> tuple[list[int], list[int]]:
    n = inst.n
    lo, hi = list(inst.l), list(inst.u)
    if box is not None:
        blo, bhi = box
        if not isinstance(blo, (list, tuple)):
            blo = [blo] * n
        if not isinstance(bhi, (list, tuple)):
            bhi = [bhi] * n
        lo = [max(a, b) for a, b in zip(lo, blo)]
        hi = [min(a, b) for a, b in zip(hi, bhi)]
    for v in lo + hi:
        if not is_finite(v):
            raise UsageError("brute force needs a finite box in every coordinate")
    return [int(v) for v in lo], [int(v) for v in hi]


class _BoxSearch:
    """Depth-first enumeration of a box in lexicographic order, pruning
    partial assignments whose rows can no longer reach their right-hand side."""

    def __init__(self, A, b, lo, hi):
        self.A, self.b, self.lo, self.hi = A, b, lo, hi
        n, m = len(lo), len(A)
        # rest_min[i][k]: smallest value of sum_{j>=k} A_ij x_j over the box
        self.rest_min = [[0] * (n + 1) for _ in range(m)]
        self.rest_max = [[0] * (n + 1) for _ in range(m)]
        for i, row in enumerate(A):
            for k in range(n - 1, -1, -1):
                p, q = row[k] * lo[k], row[k] * hi[k]
                self.rest_min[i][k] = self.rest_min[i][k + 1] + min(p, q)
                self.rest_max[i][k] = self.rest_max[i][k + 1] + max(p, q)
        self.nodes = 0

    def reachable(self, partial, k) -> bool:
        for i in range(len(self.A)):
            need = self.b[i] - partial[i]
            if need < self.rest_min[i][k] or need > self.rest_max[i][k]:
                return False
        return True


def iter_box_solutions(A, b, lo, hi) -> Iterator[tuple[int, ...]]:
    """All integer x with A x = b and lo <= x <= hi, in lexicographic order."""
    n = len(lo)
    if any(l > h for l, h in zip(lo, hi)):
        return
    search = _BoxSearch(A, b, lo, hi)
    cols = transpose(A, n)
    x = [0] * n
    partial = [0] * len(A)

    def rec(k):
        if not search.reachable(partial, k):
            return
        if k == n:
            yield tuple(x)
            return
        col = cols[k]
        for v in range(lo[k], hi[k] + 1):
            x[k] = v
            for i, c in enumerate(col):
                partial[i] += c * v
            yield from rec(k + 1)
            for i, c in enumerate(col):
                partial[i] -= c * v

    yield from rec(0)


def iter_feasible(inst: ILPInstance, box=None) -> Iterator[tuple[int, ...]]:
    lo, hi = _effective_box(inst, box)
    return iter_box_solutions(inst.A, inst.b, lo, hi)


def brute_force_solve(inst: ILPInstance, box=None) -> SolveReport:
    """Exhaustive branch-and-bound over the (finite) box.

    Returns the lexicographically smallest minimizer.
    """
    lo, hi = _effective_box(inst, box)
    n = inst.n
    if any(a > b for a, b in zip(lo, hi)):
        return SolveReport(Status.INFEASIBLE, stats={"nodes": 0})
    search = _BoxSearch(inst.A, inst.b, lo, hi)
    cols = transpose(inst.A, n)
    w = inst.w
    w_rest = [0] * (n + 1)
    for k in range(n - 1, -1, -1):
        w_rest[k] = w_rest[k + 1] + min(w[k] * lo[k], w[k] * hi[k])
    x = [0] * n
    partial = [0] * inst.m
    best = [None, None]  # objective, point

    def rec(k, obj):
        search.nodes += 1
        if best[0] is not None and obj + w_rest[k] >= best[0]:
            return
        if not search.reachable(partial, k):
            return
        if k == n:
            best[0], best[1] = obj, tuple(x)
            return
        col = cols[k]
        for v in range(lo[k], hi[k] + 1):
            x[k] = v
            for i, c in enumerate(col):
                partial[i] += c * v
            rec(k + 1, obj + w[k] * v)
            for i, c in enumerate(col):
                partial[i] -= c * v

    rec(0, 0)
    stats = {"nodes": search.nodes}
    if best[1] is None:
        return SolveReport(Status.INFEASIBLE, stats=stats)
    return SolveReport(Status.OPTIMAL, best[1], best[0], stats)
