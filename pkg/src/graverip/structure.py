"""Graphs of a matrix, treedepth witnesses, block-structured matrices and
the embeddings of bounded-treedepth programs into them.

Shape trees are nested tuples: a vertex is the tuple of its children, so
``()`` is a single leaf and ``((), ())`` is a root with two leaves.  Tree
vertices are addressed by the path of child indices from the root.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import networkx as nx

from .core import ILPInstance, UsageError, in_bounds, is_finite, matvec
from .dp import dual_graph_of, incidence_graph_of, primal_graph_of
from .graver import graver_basis, graver_completion, norms
from .linalg import integer_solve


def primal_graph(A, n=None) -> nx.Graph:
    return primal_graph_of(A, len(A[0]) if n is None else n)


def dual_graph(A, n=None) -> nx.Graph:
    return dual_graph_of(A, len(A[0]) if n is None else n)


def incidence_graph(A, n=None) -> nx.Graph:
    return incidence_graph_of(A, len(A[0]) if n is None else n)


# ---------------------------------------------------------------------------
# treedepth


@dataclass
class EliminationForest:
    """Rooted forest given by a parent map (roots map to None)."""

    parent: dict

    def children(self) -> dict:
        ch = {v: [] for v in self.parent}
        for v, p in self.parent.items():
            if p is not None:
                ch[p].append(v)
        return ch

    @property
    def roots(self) -> list:
        return [v for v, p in self.parent.items() if p is None]

    def depth(self, v) -> int:
        d = 0
        while self.parent[v] is not None:
            v = self.parent[v]
            d += 1
        return d

    def ancestors(self, v) -> list:
        out = []
        while self.parent[v] is not None:
            v = self.parent[v]
            out.append(v)
        return out

    @property
    def height(self) -> int:
        return max((self.depth(v) for v in self.parent), default=0)

    @property
    def treedepth(self) -> int:
        return self.height + 1 if self.parent else 0

    def closure_contains(self, graph: nx.Graph) -> bool:
        if not set(graph.nodes) <= set(self.parent):
            return False
        for u, v in graph.edges:
            if u != v and u not in self.ancestors(v) and v not in self.ancestors(u):
                return False
        return True

    def to_json_obj(self) -> dict:
        return {"parent": [[v, p] for v, p in sorted(self.parent.items(), key=lambda kv: repr(kv[0]))],
                "height": self.height}


TREEDEPTH_CAP = 30


def _degeneracy(g: nx.Graph) -> int:
    return max(nx.core_number(g).values(), default=0)


def treedepth_decomposition(graph: nx.Graph, cap: int = TREEDEPTH_CAP) -> EliminationForest:
    """Minimum-height elimination forest, by memoized branch and bound."""
    if graph.number_of_nodes() > cap:
        raise UsageError(f"exact treedepth is capped at {cap} vertices; supply a forest instead")
    adj = {v: set(graph[v]) - {v} for v in graph.nodes}
    memo: dict[frozenset, tuple[int, tuple]] = {}

    def components(S):
        seen, out = set(), []
        for s in S:
            if s in seen:
                continue
            comp, stack = {s}, [s]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y in S and y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            out.append(frozenset(comp))
        return out

    def solve(S: frozenset):
        # returns (td, forest as tuple of (root, subforest))
        comps = components(S)
        if len(comps) != 1:
            parts = [solve_connected(c) for c in comps]
            return max((p[0] for p in parts), default=0), tuple(p[1] for p in parts)
        val, tree = solve_connected(comps[0])
        return val, (tree,)

    def solve_connected(C: frozenset):
        if C in memo:
            return memo[C]
        if len(C) == 1:
            (v,) = C
            memo[C] = (1, (v, ()))
            return memo[C]
        lower = _degeneracy(graph.subgraph(C)) + 1
        best = None
        for v in sorted(C, key=lambda x: (-len(adj[x] & C), repr(x))):
            val, sub = solve(C - {v})
            if best is None or val + 1 < best[0]:
                best = (val + 1, (v, sub))
                if best[0] <= lower:
                    break
        memo[C] = best
        return best

    _, forest = solve(frozenset(graph.nodes))
    parent: dict = {}

    def walk(node, par):
        v, sub = node
        parent[v] = par
        for s in sub:
            walk(s, v)

    for root in forest:
        walk(root, None)
    return EliminationForest(parent)


# ---------------------------------------------------------------------------
# shape trees and block structures


def tree_leaves(tree) -> int:
    return 1 if not tree else sum(tree_leaves(c) for c in tree)


def tree_depths(tree, d=0):
    if not tree:
        yield d
    for c in tree:
        yield from tree_depths(c, d + 1)


def tree_from_json(obj):
    if not isinstance(obj, list) or not all(isinstance(c, list) for c in obj):
        raise UsageError("shape tree must be nested lists")
    return tuple(tree_from_json(c) for c in obj)


def tree_to_json(tree):
    return [tree_to_json(c) for c in tree]


def star(n: int):
    return tuple(() for _ in range(n))


def _matrix(M):
    return tuple(tuple(int(v) for v in row) for row in M)


def _ncols(M, default=None):
    if M:
        return len(M[0])
    if default is None:
        raise UsageError("block without rows needs an explicit width")
    return default


def _check_tree(tree, tau):
    depths = set(tree_depths(tree))
    if depths != {tau - 1}:
        raise UsageError(f"all leaves must be at depth {tau - 1}, found depths {sorted(depths)}")


@dataclass(frozen=True)
class BlockStructure:
    kind: str  # "multistage", "treefold" or "nfold"
    tree: tuple
    blocks: tuple
    matrix: tuple
    bricks: tuple  # column index tuples, one per brick
    node_cols: dict = field(default_factory=dict, compare=False)
    node_rows: dict = field(default_factory=dict, compare=False)

    @property
    def tau(self) -> int:
        return len(self.blocks)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.matrix), (len(self.matrix[0]) if self.matrix else sum(map(len, self.bricks)))

    @property
    def dims(self) -> tuple[int, ...]:
        """Column counts n_s (multi-stage) or row counts r_s (tree-fold)."""
        if self.kind == "multistage":
            return tuple(len(B[0]) for B in self.blocks)
        return tuple(len(A) for A in self.blocks)

    def to_json_obj(self) -> dict:
        obj = {"kind": self.kind, "tree": tree_to_json(self.tree),
               "blocks": [[list(r) for r in B] for B in self.blocks]}
        if self.kind == "nfold":
            obj["n"] = len(self.tree)
        return obj

    @classmethod
    def from_json_obj(cls, obj: dict) -> "BlockStructure":
        try:
            kind = obj["kind"]
            blocks = [_matrix(B) for B in obj["blocks"]]
            if kind == "nfold":
                n = obj.get("n")
                tree = star(int(n)) if n is not None else tree_from_json(obj["tree"])
                if len(blocks) != 2:
                    raise UsageError("n-fold needs exactly the blocks A1 and A2")
                return nfold(blocks[0], blocks[1], tree_leaves(tree) if tree else 1)
            tree = tree_from_json(obj["tree"])
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed block structure: {exc}") from exc
        if kind == "multistage":
            return assemble_multistage(tree, blocks)
        if kind == "treefold":
            return assemble_treefold(tree, blocks)
        raise UsageError(f"unknown block structure kind {kind!r}")

    def witness_forest(self) -> EliminationForest:
        """Elimination forest for the primal (multi-stage) or dual (tree-fold)
        graph: each tree vertex contributes a chain of its brick columns
        (resp. its block rows) hung below its parent's chain."""
        own = self.node_cols if self.kind == "multistage" else self.node_rows
        parent = {}
        for key in sorted(own, key=len):
            above = own[key[:-1]][-1] if key else None
            for v in own[key]:
                parent[v] = above
                above = v
        return EliminationForest(parent)


def assemble_multistage(tree, blocks) -> BlockStructure:
    tree = tuple(tree)
    blocks = [_matrix(B) for B in blocks]
    tau = len(blocks)
    if tau == 0:
        raise UsageError("need at least one block")
    _check_tree(tree, tau)
    rows = {len(B) for B in blocks}
    if len(rows) != 1:
        raise UsageError(f"all B_s must have the same row count, got {sorted(rows)}")
    l = rows.pop()
    widths = [len(B[0]) if B else 0 for B in blocks]
    if l == 0 or min(widths) < 1:
        raise UsageError("blocks need at least one row and one column")
    node_cols: dict = {}
    node_rows: dict = {}

    def build(v, key, s, col0, row0):
        # returns (list of rows as dicts col->val, column count)
        B = blocks[s - 1]
        ns = widths[s - 1]
        node_cols[key] = list(range(col0, col0 + ns))
        if not v:
            node_rows[key] = list(range(row0, row0 + l))
            return [{col0 + j: x for j, x in enumerate(B[k]) if x} for k in range(l)], ns
        out = []
        width = ns
        r = row0
        for i, c in enumerate(v):
            sub, w = build(c, key + (i,), s + 1, col0 + width, r)
            for k, row in enumerate(sub):
                lead = {col0 + j: x for j, x in enumerate(B[k % l]) if x}
                lead.update(row)
                out.append(lead)
            width += w
            r += len(sub)
        return out, width

    sparse, ncols = build(tree, (), 1, 0, 0)
    matrix = tuple(tuple(row.get(j, 0) for j in range(ncols)) for row in sparse)
    bricks = tuple(tuple(node_cols[k]) for k in sorted(node_cols, key=lambda k: node_cols[k][0]))
    return BlockStructure("multistage", tree, tuple(blocks), matrix, bricks, node_cols, node_rows)


def assemble_treefold(tree, blocks, kind: str = "treefold") -> BlockStructure:
    tree = tuple(tree)
    blocks = [_matrix(B) for B in blocks]
    tau = len(blocks)
    if tau == 0:
        raise UsageError("need at least one block")
    _check_tree(tree, tau)
    widths = {len(A[0]) for A in blocks if A}
    if len(widths) != 1 or any(not A for A in blocks):
        raise UsageError("all A_s need at least one row and a common column count t")
    t = widths.pop()
    node_cols: dict = {}
    node_rows: dict = {}

    def build(v, key, s, col0, row0):
        A = blocks[s - 1]
        rs = len(A)
        node_rows[key] = list(range(row0, row0 + rs))
        if not v:
            node_cols[key] = list(range(col0, col0 + t))
            return [{col0 + j: x for j, x in enumerate(A[k]) if x} for k in range(rs)], t
        top = [dict() for _ in range(rs)]
        below = []
        width = 0
        r = row0 + rs
        for i, c in enumerate(v):
            sub, w = build(c, key + (i,), s + 1, col0 + width, r)
            below.extend(sub)
            width += w
            r += len(sub)
        for k in range(rs):
            for q in range(width // t):
                for j, x in enumerate(A[k]):
                    if x:
                        top[k][col0 + q * t + j] = x
        return top + below, width

    sparse, ncols = build(tree, (), 1, 0, 0)
    matrix = tuple(tuple(row.get(j, 0) for j in range(ncols)) for row in sparse)
    leaves = sorted((k for k in node_cols), key=lambda k: node_cols[k][0])
    bricks = tuple(tuple(node_cols[k]) for k in leaves)
    return BlockStructure(kind, tree, tuple(blocks), matrix, bricks, node_cols, node_rows)


def nfold(A1, A2, n: int) -> BlockStructure:
    """The n-fold matrix: A1 repeated along the top, A2 block-diagonal."""
    if n < 1:
        raise UsageError("n-fold needs n >= 1")
    tree = star(n) if n > 1 else ((),)
    return assemble_treefold(tree, [A1, A2], kind="nfold")


def disassemble(kind: str, tree, matrix, dims) -> tuple:
    """Read the blocks back off an assembled matrix (and verify them)."""
    tree = tuple(tree)
    matrix = _matrix(matrix)
    tau = len(dims)
    _check_tree(tree, tau)
    leaves = tree_leaves(tree)
    if kind == "multistage":
        l = len(matrix) // leaves
        blocks, off = [], 0
        for ns in dims:
            blocks.append(tuple(tuple(matrix[k][off:off + ns]) for k in range(l)))
            off += ns
        rebuilt = assemble_multistage(tree, blocks)
    elif kind in ("treefold", "nfold"):
        t = (len(matrix[0]) if matrix else 0) // leaves
        blocks, off = [], 0
        for rs in dims:
            blocks.append(tuple(tuple(matrix[off + k][:t]) for k in range(rs)))
            off += rs
        rebuilt = assemble_treefold(tree, blocks, kind=kind)
    else:
        raise UsageError(f"unknown block structure kind {kind!r}")
    if rebuilt.matrix != matrix:
        raise UsageError("matrix does not have the claimed block structure")
    return tuple(blocks)


def detect_nfold(A) -> BlockStructure | None:
    """Find an n-fold decomposition with n >= 2 (smallest r, then largest n)."""
    A = _matrix(A)
    m = len(A)
    if m == 0:
        return None
    N = len(A[0])
    for r in range(1, m):
        for n in range(N, 1, -1):
            if N % n or (m - r) % n:
                continue
            t, s = N // n, (m - r) // n
            if s == 0:
                continue
            A1 = tuple(tuple(A[k][:t]) for k in range(r))
            A2 = tuple(tuple(A[r + k][:t]) for k in range(s))
            bs = nfold(A1, A2, n)
            if bs.matrix == A:
                return bs
    return None


def structure_of(obj: dict, inst: ILPInstance) -> BlockStructure | None:
    """Block structure declared under an instance's "structure" key, checked
    against its matrix; falls back to n-fold detection."""
    decl = obj.get("structure") if isinstance(obj, dict) else None
    if decl is not None:
        bs = BlockStructure.from_json_obj(decl)
        if bs.matrix != inst.A:
            raise UsageError("declared block structure does not reproduce the matrix")
        return bs
    return detect_nfold(inst.A)


# ---------------------------------------------------------------------------
# embeddings


@dataclass
class EmbeddingResult:
    instance: ILPInstance
    structure: BlockStructure
    var_map: tuple[int, ...]
    slack_of_row: dict = field(default_factory=dict)
    info: dict = field(default_factory=dict)

    def project(self, y: Sequence[int]) -> tuple[int, ...]:
        return tuple(y[c] for c in self.var_map)

    def has_extension(self, x: Sequence[int], limit: int = 100000) -> bool:
        """Is there a feasible point of the extended program projecting to x?"""
        inst = self.instance
        fixed = dict(zip(self.var_map, x))
        if not all(inst.l[c] <= v <= inst.u[c] for c, v in fixed.items()):
            return False
        rest = [c for c in range(inst.n) if c not in fixed]
        finite = [c for c in rest if is_finite(inst.l[c]) and is_finite(inst.u[c])]
        free = [c for c in rest if not is_finite(inst.l[c]) and not is_finite(inst.u[c])]
        if len(finite) + len(free) != len(rest):
            raise UsageError("half-bounded auxiliary variables are not supported")
        ranges = [range(int(inst.l[c]), int(inst.u[c]) + 1) for c in finite]
        if math.prod(len(r) for r in ranges) > limit:
            raise UsageError("too many auxiliary assignments to enumerate")
        for vals in itertools.product(*ranges):
            y = [0] * inst.n
            for c, v in fixed.items():
                y[c] = v
            for c, v in zip(finite, vals):
                y[c] = v
            resid = [bi - ri for bi, ri in zip(inst.b, matvec(inst.A, y))]
            sub = [[row[c] for c in free] for row in inst.A]
            if not free:
                if not any(resid):
                    return True
                continue
            if integer_solve(sub, resid, len(free)) is not None:
                return True
        return False

    def lift_kernel(self, g: Sequence[int]) -> tuple[int, ...]:
        """Kernel vector of the extended matrix restricting to g on the
        original columns, zero on dummies, slacks absorbing row residues."""
        y = [0] * self.instance.n
        for c, v in zip(self.var_map, g):
            y[c] = v
        for i, res in enumerate(matvec(self.instance.A, y)):
            if res:
                if i not in self.slack_of_row:
                    raise UsageError(f"{tuple(g)} does not lift: row {i} has no slack")
                y[self.slack_of_row[i]] = -res
        return tuple(y)


def _check_forest(forest: EliminationForest, graph: nx.Graph, count: int):
    if set(forest.parent) != set(range(count)):
        raise UsageError("forest must have exactly the matrix's columns (rows) as vertices")
    if not forest.closure_contains(graph):
        raise UsageError("forest closure does not contain the graph")


def _segment_tree(forest: EliminationForest, count: int):
    """Compress the forest into segments (maximal chains ending at a
    branching vertex or a leaf), pad segments to per-level widths and
    shallow leaves to full depth.

    Returns (shape tree, {node key: padded vertex list}, leaf keys, total
    vertex count including dummies).  Dummy vertices are ids >= count.
    """
    parent = dict(forest.parent)
    nxt = count
    roots = [v for v, p in parent.items() if p is None]
    if len(roots) != 1:
        root = nxt
        nxt += 1
        for r in roots:
            parent[r] = root
        parent[root] = None
    else:
        root = roots[0]
    ch: dict = {v: [] for v in parent}
    for v, p in parent.items():
        if p is not None:
            ch[p].append(v)
    for v in ch:
        ch[v].sort()

    segs: dict = {}  # key -> vertex list
    kids: dict = {}

    def grow(start, key):
        chain = [start]
        while len(ch[chain[-1]]) == 1:
            chain.append(ch[chain[-1]][0])
        segs[key] = chain
        kids[key] = []
        for i, c in enumerate(ch[chain[-1]]):
            kids[key].append(key + (i,))
            grow(c, key + (i,))

    grow(root, ())
    tau = max(len(k) for k in segs) + 1
    # extend shallow leaves with single-vertex dummy segments
    for key in [k for k in segs if not kids[k]]:
        while len(key) < tau - 1:
            child = key + (0,)
            kids[key] = [child]
            segs[child] = []
            kids[child] = []
            key = child
    widths = [max(len(segs[k]) for k in segs if len(k) == d) for d in range(tau)]
    widths = [max(1, w) for w in widths]
    for key in sorted(segs):
        pad = widths[len(key)] - len(segs[key])
        segs[key] = segs[key] + list(range(nxt, nxt + pad))
        nxt += pad

    def shape(key):
        return tuple(shape(k) for k in kids[key])

    leaf_keys = sorted(k for k in segs if not kids[k])
    return shape(()), segs, leaf_keys, widths, nxt


def _leaf_for(support, segs, leaf_keys):
    """First leaf whose root path holds all of ``support``."""
    for key in leaf_keys:
        on_path = set()
        for d in range(len(key) + 1):
            on_path.update(segs[key[:d]])
        if set(support) <= on_path:
            return key
    raise UsageError(f"support {sorted(support)} is not on a root-leaf path")


def _path_items(key, segs):
    out = []
    for d in range(len(key) + 1):
        out.extend(segs[key[:d]])
    return out


STRICT_CAP = 4096


def _patterns(used: dict, length: int, amax: int, strict: bool):
    """Row/column pattern list with multiplicities.

    ``used`` maps each leaf to the Counter of patterns assigned to it.  The
    lazy list holds each pattern as often as its largest per-leaf count;
    the strict list adds every other pattern in [-amax, amax]^length once.
    """
    mult: Counter = Counter()
    for cnt in used.values():
        for p, k in cnt.items():
            mult[p] = max(mult[p], k)
    if strict:
        if (2 * amax + 1) ** length > STRICT_CAP:
            raise UsageError("strict universal block too large; use the lazy mode")
        for p in itertools.product(range(-amax, amax + 1), repeat=length):
            mult[p] = max(mult[p], 1)
    return [(p, k) for p in sorted(mult) for k in range(mult[p])]


def embed_primal_td(inst: ILPInstance, forest: EliminationForest, strict: bool = False) -> EmbeddingResult:
    """Extended formulation with a multi-stage stochastic matrix."""
    n, m = inst.n, inst.m
    if n == 0:
        raise UsageError("nothing to embed")
    _check_forest(forest, primal_graph_of(inst.A, n), n)
    shape, segs, leaf_keys, widths, total = _segment_tree(forest, n)
    tau = len(widths)
    length = sum(widths)
    col_of = lambda v, row: row[v] if v < n else 0  # noqa: E731

    assigned: dict = {k: [] for k in leaf_keys}
    for i in range(m):
        key = _leaf_for(inst.row_support(i), segs, leaf_keys)
        pat = tuple(col_of(v, inst.A[i]) for v in _path_items(key, segs))
        assigned[key].append((pat, i))
    used = {k: Counter(p for p, _ in rows) for k, rows in assigned.items()}
    rows = _patterns(used, length, inst.max_abs, strict)
    R = len(rows)
    if R == 0:
        rows = [(tuple([0] * length), 0)]
        R = 1
    blocks = []
    off = 0
    for s, ns in enumerate(widths):
        B = [list(p[off:off + ns]) for p, _ in rows]
        if s == tau - 1:
            for k, row in enumerate(B):
                row.extend(int(k == q) for q in range(R))
        blocks.append(B)
        off += ns
    bs = assemble_multistage(shape, blocks)
    N = bs.shape[1]
    l2 = [0] * N
    u2 = [0] * N
    w2 = [0] * N
    var_map = [None] * n
    for key, verts in segs.items():
        for v, c in zip(verts, bs.node_cols[key]):
            if v < n:
                var_map[v] = c
                l2[c], u2[c], w2[c] = inst.l[v], inst.u[v], inst.w[v]
    b2 = [0] * len(bs.matrix)
    slack_of_row = {}
    row_index = {rk: q for q, rk in enumerate(rows)}
    for key in leaf_keys:
        slack_cols = bs.node_cols[key][widths[-1]:]
        crow = bs.node_rows[key]
        matched = {}
        seen: Counter = Counter()
        for pat, i in assigned[key]:
            matched[row_index[(pat, seen[pat])]] = i
            seen[pat] += 1
        for q in range(R):
            slack_of_row[crow[q]] = slack_cols[q]
            if q in matched:
                b2[crow[q]] = inst.b[matched[q]]
            else:
                l2[slack_cols[q]], u2[slack_cols[q]] = -math.inf, math.inf
    ext = ILPInstance(bs.matrix, b2, w2, l2, u2)
    info = {"tau": tau, "widths": widths, "rows_per_leaf": R, "leaves": len(leaf_keys),
            "slack_columns": R * len(leaf_keys), "strict": strict}
    return EmbeddingResult(ext, bs, tuple(var_map), slack_of_row, info)


def embed_dual_td(inst: ILPInstance, forest: EliminationForest, strict: bool = False) -> EmbeddingResult:
    """Extended formulation with a tree-fold matrix (no slacks; columns
    without a preimage are pinned to zero)."""
    n, m = inst.n, inst.m
    if m == 0:
        raise UsageError("nothing to embed")
    _check_forest(forest, dual_graph_of(inst.A, n), m)
    shape, segs, leaf_keys, widths, total = _segment_tree(forest, m)
    tau = len(widths)
    length = sum(widths)
    entry = lambda r, j: inst.A[r][j] if r < m else 0  # noqa: E731

    assigned: dict = {k: [] for k in leaf_keys}
    for j in range(n):
        key = _leaf_for(inst.col_support(j), segs, leaf_keys)
        pat = tuple(entry(r, j) for r in _path_items(key, segs))
        assigned[key].append((pat, j))
    used = {k: Counter(p for p, _ in cols) for k, cols in assigned.items()}
    cols = _patterns(used, length, inst.max_abs, strict)
    if not cols:
        cols = [(tuple([0] * length), 0)]
    blocks = []
    off = 0
    for rs in widths:
        blocks.append([[p[off + q] for p, _ in cols] for q in range(rs)])
        off += rs
    bs = assemble_treefold(shape, blocks)
    N = bs.shape[1]
    l2, u2, w2 = [0] * N, [0] * N, [0] * N
    var_map = [None] * n
    col_index = {ck: q for q, ck in enumerate(cols)}
    for key in leaf_keys:
        brick = bs.node_cols[key]
        seen: Counter = Counter()
        for pat, j in assigned[key]:
            c = brick[col_index[(pat, seen[pat])]]
            seen[pat] += 1
            var_map[j] = c
            l2[c], u2[c], w2[c] = inst.l[j], inst.u[j], inst.w[j]
    b2 = [0] * len(bs.matrix)
    for key, verts in segs.items():
        for v, r in zip(verts, bs.node_rows[key]):
            if v < m:
                b2[r] = inst.b[v]
    ext = ILPInstance(bs.matrix, b2, w2, l2, u2)
    info = {"tau": tau, "widths": widths, "t": len(cols), "leaves": len(leaf_keys), "strict": strict}
    return EmbeddingResult(ext, bs, tuple(var_map), {}, info)


# ---------------------------------------------------------------------------
# n-fold norm bound


def nfold_norm_bound(A1, A2, radius: int | None = None, allow_uncertified: bool = False) -> int:
    """Upper bound M on g1 of the n-fold matrix of (A1, A2), valid for all n:
    M = max l1 over G(A1 G2) times g1(A2), where G2 has the elements of
    G(A2) as columns."""
    A1, A2 = _matrix(A1), _matrix(A2)
    t = _ncols(A2, _ncols(A1, None) if A1 else None)
    if A1 and len(A1[0]) != t:
        raise UsageError(f"A1 has {len(A1[0])} columns, A2 has {t}")
    if radius is None:
        G2 = graver_completion(A2, t)
    else:
        G2 = graver_basis(A2, radius, t)
        if not G2.certified and not allow_uncertified:
            raise UsageError(f"radius {radius} does not certify the basis of A2")
    elems = list(G2)
    if not elems:
        return 0
    A1G2 = [[sum(a * g for a, g in zip(row, ge)) for ge in elems] for row in A1]
    if radius is None:
        G = graver_completion(A1G2, len(elems))
    else:
        G = graver_basis(A1G2, radius, len(elems))
        if not G.certified and not allow_uncertified:
            raise UsageError(f"radius {radius} does not certify the basis of A1 G2")
    return norms(G).g1 * norms(elems).g1
