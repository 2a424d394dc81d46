"""Tree-decomposition dynamic programs for box- and l1-bounded ILPs.

Both solvers share one engine working on a decomposition of the incidence
graph, whose vertices are ``("x", j)`` for columns and ``("r", i)`` for rows.
A table entry at a node fixes the values of the bag's variables, the partial
sums of the bag's rows and (for the l1 variant) the spent budget; it stores
the best cost of all variables forgotten below.  A row is checked against
its right-hand side at the highest node containing it.
"""
from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Hashable

import networkx as nx
from networkx.algorithms.approximation import treewidth_min_fill_in

from .core import ILPInstance, SolveReport, Status, is_finite


@dataclass
class TreeDecomposition:
    bags: dict[int, frozenset]
    parent: dict[int, int | None]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags.values()), default=0) - 1

    @property
    def root(self) -> int:
        return next(t for t, p in self.parent.items() if p is None)

    def children(self) -> dict[int, list[int]]:
        ch: dict[int, list[int]] = {t: [] for t in self.bags}
        for t, p in self.parent.items():
            if p is not None:
                ch[p].append(t)
        for v in ch.values():
            v.sort()
        return ch

    def postorder(self) -> list[int]:
        ch = self.children()
        out, stack = [], [(self.root, False)]
        while stack:
            t, done = stack.pop()
            if done:
                out.append(t)
                continue
            stack.append((t, True))
            stack.extend((c, False) for c in reversed(ch[t]))
        return out

    def depths(self) -> dict[int, int]:
        d = {}
        for t in reversed(self.postorder()):
            p = self.parent[t]
            d[t] = 0 if p is None else d[p] + 1
        return d

    def is_valid_for(self, graph: nx.Graph) -> bool:
        if sum(p is None for p in self.parent.values()) != 1:
            return False
        covered = set().union(*self.bags.values()) if self.bags else set()
        if not set(graph.nodes) <= covered:
            return False
        for u, v in graph.edges:
            if not any(u in b and v in b for b in self.bags.values()):
                return False
        tree = nx.Graph()
        tree.add_nodes_from(self.bags)
        tree.add_edges_from((t, p) for t, p in self.parent.items() if p is not None)
        if not nx.is_tree(tree):
            return False
        for v in covered:
            holders = [t for t, b in self.bags.items() if v in b]
            if not nx.is_connected(tree.subgraph(holders)):
                return False
        return True

    @classmethod
    def from_edges(cls, bags: dict, edges, root=None) -> "TreeDecomposition":
        nodes = list(bags)
        if not nodes:
            return cls({0: frozenset()}, {0: None})
        tree = nx.Graph()
        tree.add_nodes_from(nodes)
        tree.add_edges_from(edges)
        # join components so the result is a single tree
        comps = [min(c) for c in nx.connected_components(tree)]
        for a, b in zip(comps, comps[1:]):
            tree.add_edge(a, b)
        root = nodes[0] if root is None else root
        parent = {root: None}
        for p, c in nx.bfs_edges(tree, root):
            parent[c] = p
        return cls({t: frozenset(bags[t]) for t in nodes}, parent)

    @classmethod
    def of_graph(cls, graph: nx.Graph) -> "TreeDecomposition":
        """Heuristic (min fill-in) decomposition."""
        if graph.number_of_nodes() == 0:
            return cls({0: frozenset()}, {0: None})
        _, decomp = treewidth_min_fill_in(graph)
        nodes = sorted(decomp.nodes, key=lambda b: (len(b), sorted(map(repr, b))))
        index = {b: k for k, b in enumerate(nodes)}
        bags = {index[b]: b for b in nodes}
        edges = [(index[a], index[b]) for a, b in decomp.edges]
        return cls.from_edges(bags, edges)


def incidence_graph_of(inst_A, n: int) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(("x", j) for j in range(n))
    g.add_nodes_from(("r", i) for i in range(len(inst_A)))
    for i, row in enumerate(inst_A):
        for j, v in enumerate(row):
            if v:
                g.add_edge(("x", j), ("r", i))
    return g


def primal_graph_of(A, n: int) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(n))
    for row in A:
        supp = [j for j, v in enumerate(row) if v]
        g.add_edges_from(itertools.combinations(supp, 2))
    return g


def dual_graph_of(A, n: int) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(len(A)))
    for j in range(n):
        supp = [i for i, row in enumerate(A) if row[j]]
        g.add_edges_from(itertools.combinations(supp, 2))
    return g


def _attach_leaves(td: TreeDecomposition, items: list[tuple[Hashable, set]], tag) -> TreeDecomposition:
    # For each (new_vertex, clique) add a leaf node: host bag plus the vertex.
    bags = {t: {tag(v) for v in b} for t, b in td.bags.items()}
    parent = dict(td.parent)
    nxt = max(bags) + 1
    for vertex, clique in items:
        host = next((t for t in sorted(td.bags) if clique <= td.bags[t]), None)
        if host is None:
            raise ValueError(f"no bag contains the clique {sorted(clique)}")
        bags[nxt] = set(bags[host]) | {vertex}
        parent[nxt] = host
        nxt += 1
    return TreeDecomposition({t: frozenset(b) for t, b in bags.items()}, parent)


def incidence_from_primal(td: TreeDecomposition, A, n: int) -> TreeDecomposition:
    """Incidence decomposition of width <= tw + 1 from a primal decomposition."""
    rows = [(("r", i), {j for j, v in enumerate(row) if v}) for i, row in enumerate(A)]
    return _attach_leaves(td, rows, lambda j: ("x", j))


def incidence_from_dual(td: TreeDecomposition, A, n: int) -> TreeDecomposition:
    """Incidence decomposition of width <= tw + 1 from a dual decomposition."""
    cols = [(("x", j), {i for i, row in enumerate(A) if row[j]}) for j in range(n)]
    return _attach_leaves(td, cols, lambda i: ("r", i))


def primal_decomposition(A, n: int) -> TreeDecomposition:
    return TreeDecomposition.of_graph(primal_graph_of(A, n))


def dual_decomposition(A, n: int) -> TreeDecomposition:
    return TreeDecomposition.of_graph(dual_graph_of(A, n))


def incidence_decomposition(A, n: int) -> TreeDecomposition:
    return TreeDecomposition.of_graph(incidence_graph_of(A, n))


# ---------------------------------------------------------------------------
# the engine


class _Plan:
    """Everything about a decomposition that does not depend on b, w, bounds."""

    def __init__(self, A, n: int, td: TreeDecomposition):
        self.A, self.n, self.td = A, n, td
        m = len(A)
        self.order = td.postorder()
        self.children = td.children()
        depth = td.depths()
        own: dict = {}
        for t in self.order:
            for v in td.bags[t]:
                if v not in own or depth[t] < depth[own[v]]:
                    own[v] = t
        missing = [v for v in [("x", j) for j in range(n)] + [("r", i) for i in range(m)] if v not in own]
        if missing:
            raise ValueError(f"decomposition misses vertices {missing[:5]}")
        self.own = own
        self.vars = {t: sorted(j for k, j in td.bags[t] if k == "x") for t in self.order}
        self.rows = {t: sorted(i for k, i in td.bags[t] if k == "r") for t in self.order}
        self.owned = {t: [j for j in self.vars[t] if own[("x", j)] == t] for t in self.order}
        self.closed = {t: [i for i in self.rows[t] if own[("r", i)] == t] for t in self.order}
        local = defaultdict(list)
        for i, row in enumerate(A):
            for j, v in enumerate(row):
                if not v:
                    continue
                host = own[("x", j)] if ("r", i) in td.bags[own[("x", j)]] else None
                if host is None:
                    host = next((t for t in reversed(self.order)
                                 if ("x", j) in td.bags[t] and ("r", i) in td.bags[t]), None)
                if host is None:
                    raise ValueError(f"edge x{j}-r{i} not covered by the decomposition")
                local[host].append((i, j, v))
        self.local = local
        p = td.parent
        self.sep_vars = {t: [j for j in self.vars[t] if p[t] is not None and ("x", j) in td.bags[p[t]]]
                         for t in self.order}
        self.sep_rows = {t: [i for i in self.rows[t] if p[t] is not None and ("r", i) in td.bags[p[t]]]
                         for t in self.order}


def run_dp(A, b, w, lo, hi, plan: _Plan, budget: int | None = None, gamma: int | None = None,
           tiebreak: bool = True, stats: dict | None = None):
    """Minimize w.x over A x = b, lo <= x <= hi (finite), optional sum|x_j| <= budget.

    Returns the lexicographically smallest minimizer (when ``tiebreak``) or
    None if infeasible.
    """
    n = plan.n
    if any(l > h for l, h in zip(lo, hi)):
        return None
    # Cost = w.x * K^n + sum_j (x_j - lo_j) K^(n-1-j): integer order equals
    # the order on (w.x, x) and stays additive over disjoint variable sets.
    if tiebreak:
        K = max((h - l + 1 for l, h in zip(lo, hi)), default=1) + 1
        scale = K ** n
        digit = [K ** (n - 1 - j) for j in range(n)]
    else:
        scale, digit = 1, [0] * n

    def var_cost(j, v):
        return w[j] * v * scale + (v - lo[j]) * digit[j]

    tables: dict[int, dict] = {}
    messages: dict[int, dict] = {}
    cells = 0
    for t in plan.order:
        vs, rs = plan.vars[t], plan.rows[t]
        rpos = {i: k for k, i in enumerate(rs)}
        vpos = {j: k for k, j in enumerate(vs)}
        kids = plan.children[t]
        table: dict = {}
        for sigma in itertools.product(*(range(lo[j], hi[j] + 1) for j in vs)):
            s0 = [0] * len(rs)
            for i, j, a in plan.local[t]:
                s0[rpos[i]] += a * sigma[vpos[j]]
            cost0 = 0
            beta0 = 0
            for j in plan.owned[t]:
                v = sigma[vpos[j]]
                cost0 += var_cost(j, v)
                if budget is not None:
                    beta0 += abs(v)
            if budget is not None and beta0 > budget:
                continue
            combos = {(tuple(s0), beta0): (cost0, ())}
            for c in kids:
                key = tuple(sigma[vpos[j]] for j in plan.sep_vars[c])
                entries = messages[c].get(key)
                if not entries:
                    combos = {}
                    break
                rows_c = [rpos[i] for i in plan.sep_rows[c]]
                new: dict = {}
                for (s, beta), (cost, back) in combos.items():
                    for ssep, bc, ccost, ckey in entries:
                        beta2 = beta + bc
                        if budget is not None and beta2 > budget:
                            continue
                        s2 = list(s)
                        for k, val in zip(rows_c, ssep):
                            s2[k] += val
                        if gamma is not None and any(abs(val) > gamma for val in s2):
                            continue
                        k2 = (tuple(s2), beta2)
                        c2 = cost + ccost
                        old = new.get(k2)
                        if old is None or c2 < old[0]:
                            new[k2] = (c2, back + (ckey,))
                combos = new
                if not combos:
                    break
            for (s, beta), val in combos.items():
                if gamma is not None and any(abs(x) > gamma for x in s):
                    continue
                table[(sigma, s, beta)] = val
        cells += len(table)
        if stats is not None:
            stats["max_table"] = max(stats.get("max_table", 0), len(table))
            stats.setdefault("table_sizes", {})[t] = (len(table), len(vs), len(rs))
        tables[t] = table
        # project onto the separator with the parent, closing finished rows
        closed = [(rpos[i], b[i]) for i in plan.closed[t]]
        sv = [vpos[j] for j in plan.sep_vars[t]]
        sr = [rpos[i] for i in plan.sep_rows[t]]
        msg: dict = {}
        for key, (cost, _) in table.items():
            sigma, s, beta = key
            if any(s[k] != rhs for k, rhs in closed):
                continue
            skey = tuple(sigma[k] for k in sv)
            mkey = (tuple(s[k] for k in sr), beta)
            bucket = msg.setdefault(skey, {})
            old = bucket.get(mkey)
            if old is None or cost < old[0]:
                bucket[mkey] = (cost, key)
        messages[t] = {k: [(mk[0], mk[1], c, fk) for mk, (c, fk) in bucket.items()]
                       for k, bucket in msg.items()}
    if stats is not None:
        stats["dp_cells"] = stats.get("dp_cells", 0) + cells
    root = plan.td.root
    top = messages[root].get((), [])
    if not top:
        return None
    _, _, _, best_key = min(top, key=lambda e: e[2])
    x = [None] * n
    stack = [(root, best_key)]
    while stack:
        t, key = stack.pop()
        sigma = key[0]
        for j, v in zip(plan.vars[t], sigma):
            x[j] = v
        _, back = tables[t][key]
        stack.extend(zip(plan.children[t], back))
    return tuple(x)


def _clip_bounds(inst: ILPInstance, X: int):
    lo = [max(l, -X) for l in inst.l]
    hi = [min(u, X) for u in inst.u]
    return [int(v) for v in lo], [int(v) for v in hi]


def _report(inst, x, stats):
    if x is None:
        return SolveReport(Status.INFEASIBLE, stats=stats)
    return SolveReport(Status.OPTIMAL, x, sum(a * b for a, b in zip(inst.w, x)), stats)


def solve_primal_dp(inst: ILPInstance, X: int, td: TreeDecomposition | None = None,
                    tiebreak: bool = True) -> SolveReport:
    """min w.x over A x = b, l <= x <= u, ||x||_inf <= X, by DP over a
    decomposition of the primal graph (``td`` is over column indices)."""
    if X < 0:
        raise ValueError("X must be nonnegative")
    if td is None:
        td = primal_decomposition(inst.A, inst.n)
    inc = incidence_from_primal(td, inst.A, inst.n)
    plan = _Plan(inst.A, inst.n, inc)
    lo, hi = _clip_bounds(inst, X)
    stats = {"primal_width": td.width, "incidence_width": inc.width}
    x = run_dp(inst.A, inst.b, inst.w, lo, hi, plan, tiebreak=tiebreak, stats=stats)
    for size, nv, nr in stats.pop("table_sizes", {}).values():
        assert size <= (2 * X + 1) ** (nv + nr)
    return _report(inst, x, stats)


def solve_dual_dp(inst: ILPInstance, X: int, td: TreeDecomposition | None = None,
                  tiebreak: bool = True) -> SolveReport:
    """min w.x over A x = b, l <= x <= u, ||x||_1 <= X, by DP over an
    incidence decomposition tracking row partial sums in [-aX, aX] and the
    spent l1 budget.  ``td`` may be an incidence decomposition; otherwise one
    is computed."""
    if X < 0:
        raise ValueError("X must be nonnegative")
    if td is None:
        td = incidence_decomposition(inst.A, inst.n)
    plan = _Plan(inst.A, inst.n, td)
    lo, hi = _clip_bounds(inst, X)
    gamma = inst.a * X
    stats = {"incidence_width": td.width}
    x = run_dp(inst.A, inst.b, inst.w, lo, hi, plan, budget=X, gamma=gamma, tiebreak=tiebreak, stats=stats)
    for size, nv, nr in stats.pop("table_sizes", {}).values():
        assert size <= (2 * gamma + 1) ** (nv + nr) * (X + 1)
    return _report(inst, x, stats)


def solve_incidence_dp(inst: ILPInstance, td: TreeDecomposition | None = None,
                       tiebreak: bool = True) -> SolveReport:
    """DP without a norm constraint; needs finite bounds."""
    if not inst.has_finite_bounds():
        raise ValueError("finite bounds required")
    if td is None:
        td = incidence_decomposition(inst.A, inst.n)
    plan = _Plan(inst.A, inst.n, td)
    stats = {"incidence_width": td.width}
    x = run_dp(inst.A, inst.b, inst.w, list(inst.l), list(inst.u), plan, tiebreak=tiebreak, stats=stats)
    stats.pop("table_sizes", None)
    return _report(inst, x, stats)


def split_l1_instance(inst: ILPInstance, X: int) -> ILPInstance:
    """Linear reformulation of the l1 ball: x = x+ - x-, sum(x+ + x-) <= X.

    Columns are (x+, x-, lower-bound slacks, upper-bound slacks, budget slack);
    the bounds l <= x+ - x- <= u become rows with nonnegative slacks.
    """
    n, m = inst.n, inst.m
    rows, rhs, lo, hi, w = [], [], [], [], []
    lower = [j for j in range(n) if is_finite(inst.l[j])]
    upper = [j for j in range(n) if is_finite(inst.u[j])]
    width = 2 * n + len(lower) + len(upper) + 1
    for i in range(m):
        row = list(inst.A[i]) + [-v for v in inst.A[i]]
        rows.append(row + [0] * (width - 2 * n))
        rhs.append(inst.b[i])
    for k, j in enumerate(lower):
        row = [0] * width
        row[j], row[n + j], row[2 * n + k] = 1, -1, -1
        rows.append(row)
        rhs.append(inst.l[j])
    for k, j in enumerate(upper):
        row = [0] * width
        row[j], row[n + j], row[2 * n + len(lower) + k] = 1, -1, 1
        rows.append(row)
        rhs.append(inst.u[j])
    rows.append([1] * (2 * n) + [0] * (len(lower) + len(upper)) + [1])
    rhs.append(X)
    lo = [0] * width
    hi = [X] * (2 * n)
    hi += [max(X - inst.l[j], 0) for j in lower]
    hi += [max(inst.u[j] + X, 0) for j in upper]
    hi += [X]
    w = list(inst.w) + [-v for v in inst.w] + [0] * (width - 2 * n)
    return ILPInstance(rows, rhs, w, lo, hi)


# ---------------------------------------------------------------------------
# lambda oracles


def _step_box(x, l, u, lam, M):
    lo, hi = [], []
    for xi, li, ui in zip(x, l, u):
        a = -M if not is_finite(li) else max(-M, -((xi - li) // lam))
        c = M if not is_finite(ui) else min(M, (ui - xi) // lam)
        lo.append(a)
        hi.append(c)
    return lo, hi


class _DPLambdaOracle:
    def __init__(self, A, M: int, n: int | None = None):
        self.A = tuple(map(tuple, A))
        self.n = len(A[0]) if n is None else n
        self.M = M
        self.calls = 0
        self.stats: dict = {}

    def __call__(self, w, b, l, u, x, lam):
        self.calls += 1
        lo, hi = _step_box(x, l, u, lam, self.M)
        h = self._solve(w, lo, hi)
        if h is None:  # h = 0 is always feasible; reaching here means a bug
            raise RuntimeError("DP found no step although h = 0 is feasible")
        return h


class PrimalDPLambdaOracle(_DPLambdaOracle):
    """min{lam w.h : A h = 0, l <= x + lam h <= u, ||h||_inf <= M} via the primal DP."""

    def __init__(self, A, M, n=None, td: TreeDecomposition | None = None):
        super().__init__(A, M, n)
        td = td if td is not None else primal_decomposition(self.A, self.n)
        self.td = td
        self.plan = _Plan(self.A, self.n, incidence_from_primal(td, self.A, self.n))

    def _solve(self, w, lo, hi):
        return run_dp(self.A, [0] * len(self.A), w, lo, hi, self.plan, stats=self.stats)


class DualDPLambdaOracle(_DPLambdaOracle):
    """min{lam w.h : A h = 0, l <= x + lam h <= u, ||h||_1 <= M} via the l1 DP."""

    def __init__(self, A, M, n=None, td: TreeDecomposition | None = None):
        super().__init__(A, M, n)
        self.td = td if td is not None else incidence_decomposition(self.A, self.n)
        self.plan = _Plan(self.A, self.n, self.td)
        self.gamma = max(2, max((abs(v) for r in self.A for v in r), default=0)) * M

    def _solve(self, w, lo, hi):
        return run_dp(self.A, [0] * len(self.A), w, lo, hi, self.plan,
                      budget=self.M, gamma=self.gamma, stats=self.stats)


def lambda_oracle_primal(A, M: int, td: TreeDecomposition | None = None, n: int | None = None):
    return PrimalDPLambdaOracle(A, M, n, td)


def lambda_oracle_dual(A, M: int, td: TreeDecomposition | None = None, n: int | None = None):
    return DualDPLambdaOracle(A, M, n, td)
