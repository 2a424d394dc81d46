"""Oracle-based solver: LP proximity reduction, integer equation solving,
a feasibility phase and an optimization phase, all driven by a
Graver-best oracle for the constraint matrix."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Callable

from .augment import LambdaGraverBest, augment_to_optimum, exact_graver_oracle, iteration_bound
from .core import ILPInstance, SolveReport, Status, dot, in_bounds, is_finite, matvec
from .dp import lambda_oracle_dual, lambda_oracle_primal
from .graver import graver_completion, norms
from .linalg import integer_solve
from .lp import LPResult, floor_vec, solve_lp

OracleFactory = Callable[[ILPInstance], Callable]


def solve_lp_relaxation(inst: ILPInstance) -> LPResult:
    return solve_lp(inst)


def proximity_radius(n: int, a: int) -> int:
    """n^(n/2 + 1) a^n + 1, rounded up to an integer."""
    root = isqrt(n ** n)
    if root * root < n ** n:
        root += 1
    return root * n * a ** n + 1


@dataclass
class ReducedInstance:
    instance: ILPInstance | None
    shift: tuple[int, ...]
    radius: int
    infeasible: bool = False
    reason: str = ""

    def lift(self, z):
        return tuple(a + b for a, b in zip(z, self.shift))


def reduce_bounds(inst: ILPInstance, y) -> ReducedInstance:
    """Shift by floor(y) and clamp the bounds to the proximity box."""
    n = inst.n
    N = proximity_radius(n, inst.a)
    shift = floor_vec(y)
    bbar = tuple(bi - ai for bi, ai in zip(inst.b, matvec(inst.A, shift)))
    lbar = tuple(max(lo - s, -N) if is_finite(lo) else -N for lo, s in zip(inst.l, shift))
    ubar = tuple(min(hi - s, N) if is_finite(hi) else N for hi, s in zip(inst.u, shift))
    if any(lo > hi for lo, hi in zip(lbar, ubar)):
        return ReducedInstance(None, shift, N, True, "empty bound box")
    if any(abs(v) > n * inst.a * N for v in bbar):
        return ReducedInstance(None, shift, N, True, "right-hand side out of reach")
    return ReducedInstance(ILPInstance(inst.A, bbar, inst.w, lbar, ubar), shift, N)


def hnf_solve(A, b, n: int | None = None):
    """Integer solution of A z = b ignoring bounds, or None."""
    if n is None:
        n = len(A[0])
    return integer_solve(A, b, n)


def _record(runs, n, start, report, sign=1):
    if runs is not None and report.status == Status.OPTIMAL:
        runs.append({"n": n, "F": sign * (start - report.objective), "steps": report.stats["steps"]})


def feasibility_phase(reduced: ReducedInstance | ILPInstance, z, oracle, runs: list | None = None):
    """Move z into the bounds one coordinate at a time (ascending index),
    maximizing (or minimizing) that coordinate over relaxed bounds."""
    inst = reduced.instance if isinstance(reduced, ReducedInstance) else reduced
    n = inst.n
    lhat = [min(lo, zi) for lo, zi in zip(inst.l, z)]
    uhat = [max(hi, zi) for hi, zi in zip(inst.u, z)]
    z = tuple(z)
    for i in range(n):
        if inst.l[i] <= z[i] <= inst.u[i]:
            continue
        below = z[i] < inst.l[i]
        w = tuple((-1 if below else 1) * int(j == i) for j in range(n))
        aux = ILPInstance(inst.A, inst.b, w, lhat, uhat)
        rep = augment_to_optimum(aux, z, oracle)
        _record(runs, n, dot(w, z), rep)
        x = rep.point
        if (below and x[i] < inst.l[i]) or (not below and x[i] > inst.u[i]):
            return None
        lhat[i], uhat[i] = inst.l[i], inst.u[i]
        z = x
    return z


def solve(inst: ILPInstance, oracle_factory: OracleFactory | None = None) -> SolveReport:
    """Solve with Graver-best augmentation; ``oracle_factory(inst)`` builds the
    oracle (default: the exact Graver oracle)."""
    factory = oracle_factory or exact_factory
    runs: list = []
    stats = {"runs": runs}
    lp = solve_lp_relaxation(inst)
    stats["lp_pivots"] = lp.pivots
    if lp.status == Status.INFEASIBLE:
        stats["stage"] = "lp"
        return SolveReport(Status.INFEASIBLE, stats=stats)
    unbounded = lp.status == Status.UNBOUNDED
    work = inst
    if unbounded:
        work = inst.replace(w=tuple(0 for _ in inst.w))
        lp = solve_lp_relaxation(work)
    stats["lp_point"] = [str(v) for v in lp.y]
    red = reduce_bounds(work, lp.y)
    if red.infeasible:
        stats["stage"] = "reduce"
        return SolveReport(Status.INFEASIBLE, stats=stats)
    rinst = red.instance
    z = hnf_solve(rinst.A, rinst.b, rinst.n)
    if z is None:
        stats["stage"] = "hnf"
        return SolveReport(Status.INFEASIBLE, stats=stats)
    oracle = factory(rinst)
    z = feasibility_phase(red, z, oracle, runs)
    if z is None:
        stats["stage"] = "feasibility"
        return SolveReport(Status.INFEASIBLE, stats=stats)
    if unbounded:
        stats["stage"] = "feasibility"
        return SolveReport(Status.UNBOUNDED, red.lift(z), None, stats)
    rep = augment_to_optimum(rinst, z, oracle)
    _record(runs, rinst.n, dot(rinst.w, z), rep)
    x = red.lift(rep.point)
    stats["steps"] = rep.stats["steps"]
    stats["oracle_calls"] = getattr(oracle, "calls", None)
    return SolveReport(Status.OPTIMAL, x, dot(inst.w, x), stats)


# ---------------------------------------------------------------------------
# oracle factories


def exact_factory(inst: ILPInstance):
    return exact_graver_oracle(inst.A, n=inst.n)


def primal_dp_factory(M: int | None = None, td=None) -> OracleFactory:
    """Graver-best oracle from the primal-decomposition DP.  Without M the
    bound g_inf(A) is taken from an exact Graver basis."""
    def make(inst: ILPInstance):
        bound = M if M is not None else max(1, norms(graver_completion(inst.A, inst.n)).ginf)
        return LambdaGraverBest(inst.A, lambda_oracle_primal(inst.A, bound, td, inst.n), bound)
    return make


def dual_dp_factory(M: int | None = None, td=None) -> OracleFactory:
    """Graver-best oracle from the l1-bounded DP; M bounds g1(A)."""
    def make(inst: ILPInstance):
        bound = M if M is not None else max(1, norms(graver_completion(inst.A, inst.n)).g1)
        return LambdaGraverBest(inst.A, lambda_oracle_dual(inst.A, bound, td, inst.n), bound)
    return make


def check_iteration_bounds(runs) -> list[dict]:
    """Runs exceeding max(1, (2n - 2) * ceil(log2(F + 1))) steps."""
    return [r for r in runs if r["steps"] > iteration_bound(r["n"], r["F"])]
