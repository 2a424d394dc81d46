"""Graver-best augmentation.

A Graver-best oracle is any callable ``oracle(w, b, l, u, x)`` returning an
improving step ``h`` (already scaled by its step length) or ``None``.  A
lambda oracle is ``oracle(w, b, l, u, x, lam)`` returning an unscaled
direction ``h`` with ``A h = 0`` and ``x + lam*h`` within bounds; the zero
vector means "nothing better at this step length".
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .core import ILPInstance, SolveReport, Status, UsageError, dot, evaluate, in_bounds, is_finite, matvec
from .graver import GraverBasis, graver_basis, graver_completion

GraverBestOracle = Callable[..., Optional[tuple]]
LambdaOracle = Callable[..., tuple]


class ContractViolation(RuntimeError):
    """An oracle answer broke its contract."""


class UnboundedDirection(Exception):
    """Raised by an oracle that found an improving ray with unbounded length."""

    def __init__(self, direction):
        super().__init__(f"improving ray {direction}")
        self.direction = tuple(direction)


@dataclass(frozen=True)
class StepPair:
    g: tuple[int, ...]
    lam: int

    @property
    def step(self) -> tuple[int, ...]:
        return tuple(self.lam * v for v in self.g)


def max_step_length(x, g, l, u):
    """Largest lam >= 0 with l <= x + lam*g <= u (math.inf if unlimited)."""
    lam = math.inf
    for xi, gi, lo, hi in zip(x, g, l, u):
        if gi > 0 and is_finite(hi):
            lam = min(lam, (hi - xi) // gi)
        elif gi < 0 and is_finite(lo):
            lam = min(lam, (xi - lo) // -gi)
    return lam


def build_lambda_set(x, l, u, M: int) -> set[int]:
    """Candidate step lengths: for each coordinate and each nonzero mu in
    [-M, M], the largest lam >= 1 keeping x_i + lam*mu within bounds."""
    if not in_bounds(x, l, u):
        raise UsageError("x is outside its bounds")
    out = set()
    for xi, lo, hi in zip(x, l, u):
        for mu in range(1, M + 1):
            if is_finite(hi):
                lam = (hi - xi) // mu
                if lam >= 1:
                    out.add(lam)
            if is_finite(lo):
                lam = (xi - lo) // mu
                if lam >= 1:
                    out.add(lam)
    return out


def _check_answer(inst, x, lam, h):
    if len(h) != inst.n or any(matvec(inst.A, h)):
        raise ContractViolation(f"oracle returned {h} outside ker(A)")
    y = tuple(a + lam * b for a, b in zip(x, h))
    if not in_bounds(y, inst.l, inst.u):
        raise ContractViolation(f"x + {lam}*{h} leaves the bounds")


def graver_best_step(inst: ILPInstance, x, oracle: LambdaOracle, M: int, stats: dict | None = None):
    """Query the lambda oracle on every candidate step length and keep the
    best improvement.  Returns (h, lam) or None."""
    best = None
    for lam in sorted(build_lambda_set(x, inst.l, inst.u, M)):
        h = tuple(oracle(inst.w, inst.b, inst.l, inst.u, tuple(x), lam))
        if stats is not None:
            stats["lambda_calls"] = stats.get("lambda_calls", 0) + 1
        _check_answer(inst, x, lam, h)
        key = (lam * dot(inst.w, h), lam, tuple(lam * v for v in h))
        if key[0] < 0 and (best is None or key < best[0]):
            best = (key, h, lam)
    if best is None:
        return None
    return best[1], best[2]


class LambdaGraverBest:
    """Graver-best oracle assembled from a lambda oracle and a bound M >= g_inf(A)."""

    def __init__(self, A, lambda_oracle: LambdaOracle, M: int):
        self.A = tuple(map(tuple, A))
        self.lambda_oracle = lambda_oracle
        self.M = M
        self.calls = 0
        self.stats: dict = {}

    def __call__(self, w, b, l, u, x):
        self.calls += 1
        inst = ILPInstance(self.A, b, w, l, u)
        res = graver_best_step(inst, x, self.lambda_oracle, self.M, self.stats)
        if res is None:
            return None
        h, lam = res
        return tuple(lam * v for v in h)


class ExactGraverOracle:
    """Reference Graver-best oracle scanning every (g, lam) pair of a basis."""

    def __init__(self, A, basis: GraverBasis):
        self.A = tuple(map(tuple, A))
        self.basis = basis
        self.calls = 0

    def __call__(self, w, b, l, u, x):
        self.calls += 1
        best = None
        for g in self.basis:
            wg = dot(w, g)
            if wg >= 0:
                continue
            lam = max_step_length(x, g, l, u)
            if lam == math.inf:
                raise UnboundedDirection(g)
            if lam < 1:
                continue
            h = tuple(lam * v for v in g)
            key = (lam * wg, lam, h)
            if best is None or key < best:
                best = key
        return None if best is None else best[2]

    def lambda_oracle(self, w, b, l, u, x, lam):
        """lambda-restricted best basis element (zero vector if none improves)."""
        best = None
        for g in self.basis:
            wg = dot(w, g)
            if wg >= 0:
                continue
            y = tuple(a + lam * v for a, v in zip(x, g))
            if not in_bounds(y, l, u):
                continue
            key = (wg, g)
            if best is None or key < best:
                best = key
        return best[1] if best else tuple(0 for _ in x)


def exact_graver_oracle(A, radius: int | None = None, n: int | None = None,
                        allow_uncertified: bool = False) -> ExactGraverOracle:
    """Build the reference oracle.  Without ``radius`` the basis comes from
    the completion procedure (exact); with it, from box enumeration."""
    if n is None:
        n = len(A[0])
    if radius is None:
        gb = graver_completion(A, n)
    else:
        gb = graver_basis(A, radius, n)
        if not gb.certified and not allow_uncertified:
            raise UsageError(f"radius {radius} does not certify g_inf of the matrix")
    return ExactGraverOracle(A, gb)


def augment_to_optimum(inst: ILPInstance, x0: Sequence[int], oracle: GraverBestOracle,
                       max_steps: int | None = None) -> SolveReport:
    """Apply Graver-best steps until the oracle reports none."""
    x = tuple(x0)
    if not evaluate(inst, x).feasible:
        raise UsageError("augmentation needs a feasible starting point")
    steps = 0
    start = dot(inst.w, x)
    while True:
        try:
            h = oracle(inst.w, inst.b, inst.l, inst.u, x)
        except UnboundedDirection as exc:
            return SolveReport(Status.UNBOUNDED, x, None,
                               {"steps": steps, "start_objective": start, "ray": list(exc.direction)})
        if h is None:
            break
        y = tuple(a + v for a, v in zip(x, h))
        ev = evaluate(inst, y)
        if not ev.feasible or ev.objective >= dot(inst.w, x):
            raise ContractViolation(f"step {h} is not an improving feasible step")
        x = y
        steps += 1
        if max_steps is not None and steps >= max_steps:
            return SolveReport(Status.UNBOUNDED, x, None, {"steps": steps, "start_objective": start})
    return SolveReport(Status.OPTIMAL, x, dot(inst.w, x), {"steps": steps, "start_objective": start})


def iteration_bound(n: int, F: int) -> int:
    """max(1, (2n - 2) * ceil(log2(F + 1)))"""
    return max(1, (2 * n - 2) * max(F, 0).bit_length())
