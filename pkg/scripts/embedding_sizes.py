"""Sizes of the multi-stage and tree-fold embeddings for random sparse
instances, next to the treedepth of the graph they were built from."""
import argparse
import random

from graverip.core import ILPInstance, matvec
from graverip.structure import dual_graph, embed_dual_td, embed_primal_td, primal_graph, treedepth_decomposition


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=10)
    ap.add_argument("--n", type=int, default=5)
    ap.add_argument("--m", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    print(f"{'n':>3} {'m':>3} | {'td_P':>4} {'n_P':>5} {'m_P':>5} | {'td_D':>4} {'n_D':>5} {'m_D':>5}")
    for _ in range(args.count):
        n, m = args.n, args.m
        A = [[rng.choice([0, 0, 0, 1, -1, 2]) for _ in range(n)] for _ in range(m)]
        x = [rng.randint(-1, 1) for _ in range(n)]
        inst = ILPInstance(A, matvec(A, x), [0] * n, [-2] * n, [2] * n)
        fp = treedepth_decomposition(primal_graph(A, n))
        fd = treedepth_decomposition(dual_graph(A, n))
        ep, ed = embed_primal_td(inst, fp), embed_dual_td(inst, fd)
        print(f"{n:>3} {m:>3} | {fp.treedepth:>4} {ep.instance.n:>5} {ep.instance.m:>5} | "
              f"{fd.treedepth:>4} {ed.instance.n:>5} {ed.instance.m:>5}")


if __name__ == "__main__":
    main()
