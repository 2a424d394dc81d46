"""Instance generators: random programs, random n-folds, the subset-sum
encoding with small coefficients and the large-Graver-norm family."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .core import ILPInstance, matvec
from .dp import TreeDecomposition
from .structure import BlockStructure, nfold


@dataclass
class RandomConfig:
    n_max: int = 4
    m_max: int = 3
    entry: int = 2
    bound: int = 3
    weight: int = 3
    feasible_bias: float = 0.6


def random_instance(rng: random.Random, cfg: RandomConfig = RandomConfig()) -> ILPInstance:
    """Small instance with finite bounds; with probability ``feasible_bias``
    the right-hand side comes from a point inside the bounds."""
    n = rng.randint(1, cfg.n_max)
    m = rng.randint(1, cfg.m_max)
    A = [[rng.randint(-cfg.entry, cfg.entry) for _ in range(n)] for _ in range(m)]
    l = [rng.randint(-cfg.bound, cfg.bound) for _ in range(n)]
    u = [rng.randint(lo, cfg.bound) for lo in l]
    if rng.random() < cfg.feasible_bias:
        x = [rng.randint(lo, hi) for lo, hi in zip(l, u)]
        b = list(matvec(A, x))
    else:
        b = [rng.randint(-2 * cfg.bound, 2 * cfg.bound) for _ in range(m)]
    w = [rng.randint(-cfg.weight, cfg.weight) for _ in range(n)]
    return ILPInstance(A, b, w, l, u)


@dataclass
class NFoldConfig:
    r: int = 1
    s: int = 1
    t: int = 2
    n: int = 3
    entry: int = 2
    bound: int = 2
    weight: int = 3


def random_nfold(rng: random.Random, cfg: NFoldConfig = NFoldConfig()) -> tuple[ILPInstance, BlockStructure]:
    A1 = [[rng.randint(-cfg.entry, cfg.entry) for _ in range(cfg.t)] for _ in range(cfg.r)]
    A2 = [[rng.randint(-cfg.entry, cfg.entry) for _ in range(cfg.t)] for _ in range(cfg.s)]
    bs = nfold(A1, A2, cfg.n)
    N = cfg.n * cfg.t
    l = [-cfg.bound] * N
    u = [cfg.bound] * N
    x = [rng.randint(-cfg.bound, cfg.bound) for _ in range(N)]
    b = list(matvec(bs.matrix, x))
    w = [rng.randint(-cfg.weight, cfg.weight) for _ in range(N)]
    return ILPInstance(bs.matrix, b, w, l, u), bs


@dataclass
class SubsetSumEncoding:
    instance: ILPInstance
    names: list[str]  # column names
    rows: list[str]  # row names
    decomposition: TreeDecomposition = field(repr=False)  # over row indices

    def selection(self, point) -> list[int]:
        return [v for v, name in zip(point, self.names) if name.startswith("x")]


def subset_sum(S, s: int) -> SubsetSumEncoding:
    """Feasible iff some subset of S sums to s; entries bounded by 2 in
    absolute value and a dual path decomposition of width 3."""
    S = [int(v) for v in S]
    if not S or any(v < 1 for v in S) or s < 0:
        raise ValueError("S must be nonempty positive integers and s >= 0")
    k = len(S)
    L = max(v.bit_length() for v in S)
    names, lo, hi = [], [], []
    col = {}
    for i in range(k):
        col["x", i] = len(names)
        names.append(f"x{i}")
        lo.append(0)
        hi.append(1)
        for j in range(L + 1):
            col["y", i, j] = len(names)
            names.append(f"y{i}^{j}")
            lo.append(0)
            hi.append(2 ** j)
        col["z", i] = len(names)
        names.append(f"z{i}")
        lo.append(0)
        hi.append(S[i])
    n = len(names)
    rows, rnames, rhs = [], [], []

    def row(entries, name, b=0):
        r = [0] * n
        for key, v in entries:
            r[col[key]] += v
        rows.append(r)
        rnames.append(name)
        rhs.append(b)
        return len(rows) - 1

    index = {}
    for i in range(k):
        index["X", i] = row([(("y", i, 0), 1), (("x", i), -1)], f"X{i}")
        for j in range(1, L + 1):
            index["Y", i, j] = row([(("y", i, j), 1), (("y", i, j - 1), -2)], f"Y{i}^{j}")
        bits = [(("y", i, j), -1) for j in range(L + 1) if (S[i] >> j) & 1]
        index["Z", i] = row([(("z", i), 1)] + bits, f"Z{i}")
    index["S"] = row([(("z", i), 1) for i in range(k)], "S", s)
    # one segment of bags per item, chained into a path
    bags = []
    for i in range(k):
        base = {index["S"], index["Z", i]}
        bags.append(base | {index["X", i], index["Y", i, 1]})
        for j in range(2, L + 1):
            bags.append(base | {index["Y", i, j - 1], index["Y", i, j]})
    td = TreeDecomposition({t: frozenset(b) for t, b in enumerate(bags)},
                           {t: (t - 1 if t else None) for t in range(len(bags))})
    inst = ILPInstance(rows, rhs, [0] * n, lo, hi)
    return SubsetSumEncoding(inst, names, rnames, td)


def subset_sum_feasible(S, s: int) -> bool:
    reach = {0}
    for v in S:
        reach |= {r + v for r in reach}
    return s in reach


def lowerbound_matrix(n: int) -> list[list[int]]:
    """(n-1) x n matrix with 2 on the diagonal and -1 above it."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return [[2 if j == i else (-1 if j == i + 1 else 0) for j in range(n)] for i in range(n - 1)]


def lowerbound_element(n: int) -> tuple[int, ...]:
    return tuple(2 ** i for i in range(n))
