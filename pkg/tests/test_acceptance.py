"""End-to-end acceptance checks against independent brute-force oracles.

Each ``criterion_k`` returns (ok, detail). The pytest wrappers record one
PASS/FAIL line per criterion; conftest prints them in the terminal summary.
``scripts/run_acceptance.py`` runs the same functions standalone.
"""
import itertools
import math
import random
import time
from functools import lru_cache

import pytest

from graverip.augment import build_lambda_set, max_step_length
from graverip.core import ILPInstance, Status, brute_force_solve, dot, in_bounds, iter_feasible, matvec
from graverip.dp import (
    dual_graph_of, incidence_from_dual, lambda_oracle_dual, lambda_oracle_primal,
    solve_dual_dp, solve_incidence_dp, solve_primal_dp,
)
from graverip.generators import (
    RandomConfig, lowerbound_matrix, random_instance, subset_sum, subset_sum_feasible,
)
from graverip.graver import circuit_inf, graver_completion, is_graver_element, norms
from graverip.strongpoly import check_iteration_bounds, solve, solve_lp_relaxation
from graverip.structure import (
    dual_graph, embed_dual_td, embed_primal_td, nfold, nfold_norm_bound, primal_graph,
    treedepth_decomposition,
)

RESULTS: dict[int, str] = {}
BASE_CFG = RandomConfig(n_max=4, m_max=3, entry=2, bound=3, weight=3)


def timed(limit):
    def wrap(fn):
        def run():
            t0 = time.perf_counter()
            ok, detail = fn()
            dt = time.perf_counter() - t0
            if limit is not None and dt >= limit:
                ok = False
                detail += f"; {dt:.1f}s exceeds {limit}s"
            return ok, f"{detail} [{dt:.2f}s]"
        run.__name__ = fn.__name__
        return run
    return wrap


@lru_cache(maxsize=None)
def base_runs(count=500, seed=20261017):
    """The criterion-1 corpus: (instance, solver report, brute-force report)."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        inst = random_instance(rng, BASE_CFG)
        out.append((inst, solve(inst), brute_force_solve(inst)))
    return tuple(out)


@timed(60)
def criterion_1():
    rng = random.Random(20261017)
    bad = 0
    statuses = {}
    for _ in range(500):
        inst = random_instance(rng, BASE_CFG)
        rep, bf = solve(inst), brute_force_solve(inst)
        statuses[rep.status.value] = statuses.get(rep.status.value, 0) + 1
        if (rep.status, rep.objective) != (bf.status, bf.objective):
            bad += 1
    return bad == 0, f"500 instances, {bad} mismatches, statuses {statuses}"


@timed(10)
def criterion_2():
    found = {}
    for n in range(2, 6):
        gb = graver_completion(lowerbound_matrix(n), n)
        found[n] = norms(gb).ginf if gb.certified else None
    ok = all(found[n] == 2 ** (n - 1) for n in found)
    return ok, f"certified g_inf by n: {found}"


@timed(None)
def criterion_3():
    rng = random.Random(3)
    pool = []
    for _ in range(40):
        n, m = rng.randint(1, 5), rng.randint(1, 2)
        A = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(m)]
        gb = graver_completion(A, n)
        pool.append((A, n, [tuple(g) for g in gb]))
    size_bad = miss = checked = 0
    for _ in range(1000):
        A, n, gb = rng.choice(pool)
        M = rng.randint(1, 3)
        l = [rng.choice([-math.inf, rng.randint(-6, 6)]) for _ in range(n)]
        u = [rng.choice([math.inf, rng.randint(-6, 6)]) for _ in range(n)]
        l = [lo if not (math.isfinite(lo) and math.isfinite(hi) and lo > hi) else hi for lo, hi in zip(l, u)]
        x = [rng.randint(int(max(lo, -8)), int(min(hi, 8))) for lo, hi in zip(l, u)]
        lams = build_lambda_set(x, l, u, M)
        if len(lams) > 2 * M * n:
            size_bad += 1
        for g in gb:
            if max(map(abs, g)) > M:
                continue
            lam = max_step_length(x, g, l, u)
            if math.isfinite(lam) and lam >= 1:
                checked += 1
                if lam not in lams:
                    miss += 1
    ok = size_bad == 0 and miss == 0
    return ok, f"1000 cases, {size_bad} oversize sets, {miss}/{checked} maximal steps missing"


@timed(None)
def criterion_4():
    runs = [r for _, rep, _ in base_runs() for r in rep.stats["runs"]]
    viol = check_iteration_bounds(runs)
    return not viol, f"{len(runs)} augmentation runs, {len(viol)} violations"


def _brute_l1(inst, X):
    pts = [x for x in iter_feasible(inst, (-X, X)) if sum(map(abs, x)) <= X]
    return min(pts, key=lambda x: (dot(inst.w, x), x)) if pts else None


def _lambda_queries(rng, count):
    for _ in range(count):
        n = rng.randint(2, 4)
        A = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(rng.randint(1, 2))]
        l = [rng.randint(-3, 0) for _ in range(n)]
        u = [rng.randint(0, 3) for _ in range(n)]
        x = tuple(rng.randint(lo, hi) for lo, hi in zip(l, u))
        w = [rng.randint(-3, 3) for _ in range(n)]
        yield A, n, w, l, u, x, rng.randint(1, 3)


def _is_lambda_best(A, w, l, u, x, lam, h, basis):
    if any(matvec(A, h)) or not in_bounds([a + lam * b for a, b in zip(x, h)], l, u):
        return False
    return all(dot(w, h) <= dot(w, g) for g in basis
               if in_bounds([a + lam * b for a, b in zip(x, g)], l, u))


@timed(120)
def criterion_5():
    rng = random.Random(5)
    pbad = dbad = 0
    for _ in range(300):
        inst, X = random_instance(rng, BASE_CFG), rng.randint(0, 4)
        if solve_primal_dp(inst, X).point != brute_force_solve(inst, box=(-X, X)).point:
            pbad += 1
    for _ in range(300):
        inst, X = random_instance(rng, BASE_CFG), rng.randint(0, 4)
        if solve_dual_dp(inst, X).point != _brute_l1(inst, X):
            dbad += 1
    qbad = queries = 0
    for k, (A, n, w, l, u, x, lam) in enumerate(_lambda_queries(rng, 120)):
        gb = graver_completion(A, n)
        nm = norms(gb)
        if k % 2:
            h = lambda_oracle_primal(A, max(1, nm.ginf), n=n)(w, matvec(A, x), l, u, x, lam)
        else:
            h = lambda_oracle_dual(A, max(1, nm.g1), n=n)(w, matvec(A, x), l, u, x, lam)
        queries += 1
        qbad += not _is_lambda_best(A, w, l, u, x, lam, h, gb)
    ok = pbad == dbad == qbad == 0
    return ok, f"primal {pbad}/300 bad, dual {dbad}/300 bad, lambda-oracle {qbad}/{queries} bad"


@timed(None)
def criterion_6():
    rng = random.Random(6)
    done = proj_bad = lift_bad = 0
    box = range(-3, 4)
    while done < 60:
        n, m = rng.randint(1, 3), rng.randint(1, 2)
        A = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(m)]
        x0 = [rng.randint(-2, 2) for _ in range(n)]
        b = list(matvec(A, x0)) if rng.random() < 0.7 else [rng.randint(-3, 3) for _ in range(m)]
        l = [rng.choice([-math.inf, -3, -2, 0]) for _ in range(n)]
        u = [rng.choice([math.inf, 3, 2, 1]) for _ in range(n)]
        inst = ILPInstance(A, b, [0] * n, l, u)
        fp = treedepth_decomposition(primal_graph(A, n))
        fd = treedepth_decomposition(dual_graph(A, n))
        if fp.height > 2 or fd.height > 2:
            continue
        basis = [tuple(g) for g in graver_completion(A, n)]
        for emb in (embed_primal_td(inst, fp), embed_dual_td(inst, fd)):
            for x in itertools.product(box, repeat=n):
                if (matvec(A, x) == tuple(b) and in_bounds(x, l, u)) != emb.has_extension(x):
                    proj_bad += 1
            for g in basis:
                lifted = emb.lift_kernel(g)
                if emb.project(lifted) != g or not is_graver_element(emb.instance.A, lifted):
                    lift_bad += 1
        done += 1
    ok = proj_bad == lift_bad == 0
    return ok, f"{done} instances x 2 embeddings, {proj_bad} projection mismatches, {lift_bad} Graver lifts failed"


@timed(None)
def criterion_7():
    rng = random.Random(7)
    bad = trials = nontrivial = 0
    for _ in range(200):
        r, s, t = rng.randint(1, 2), rng.randint(1, 2), rng.randint(1, 2)
        A1 = [[rng.randint(-2, 2) for _ in range(t)] for _ in range(r)]
        A2 = [[rng.randint(-2, 2) for _ in range(t)] for _ in range(s)]
        M = nfold_norm_bound(A1, A2)
        for n in (2, 3):
            gb = graver_completion(nfold(A1, A2, n).matrix, n * t)
            trials += 1
            nontrivial += len(gb) > 0
            if not gb.certified or norms(gb).g1 > M:
                bad += 1
    return bad == 0, f"{trials} (A1, A2, n) triples ({nontrivial} with nonzero kernel), {bad} where M < g1"


@timed(None)
def criterion_8():
    bad = cases = 0
    for k in range(1, 5):
        for S in itertools.combinations(range(1, 9), k):
            for s in range(33):
                enc = subset_sum(S, s)
                inst, td = enc.instance, enc.decomposition
                cases += 1
                got = solve_incidence_dp(inst, incidence_from_dual(td, inst.A, inst.n)).status == Status.OPTIMAL
                shape_ok = td.width == 3 and inst.max_abs == 2 and td.is_valid_for(dual_graph_of(inst.A, inst.n))
                if got != subset_sum_feasible(S, s) or not shape_ok:
                    bad += 1
    return bad == 0, f"{cases} (S, s) pairs with S nonempty, {bad} failures"


@timed(None)
def criterion_9():
    checked = viol = lex_viol = 0
    for inst, _, bf in base_runs():
        lp = solve_lp_relaxation(inst)
        if lp.status != Status.OPTIMAL or bf.status != Status.OPTIMAL:
            continue
        checked += 1
        bound = inst.n * circuit_inf(inst.A, inst.n)

        def dist(x):
            return max(abs(a - c) for a, c in zip(x, lp.y))
        optima = [x for x in iter_feasible(inst) if dot(inst.w, x) == bf.objective]
        viol += min(map(dist, optima)) > bound
        lex_viol += dist(bf.point) > bound
    return viol == 0, (f"{checked} instances, {viol} with no optimum within n*c_inf "
                       f"(lexicographically first optimum outside: {lex_viol})")


CRITERIA = {k: globals()[f"criterion_{k}"] for k in range(1, 10)}


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    ok, detail = CRITERIA[k]()
    RESULTS[k] = f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}"
    print(RESULTS[k])
    assert ok, detail
