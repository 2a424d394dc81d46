"""Compare the exact, primal-DP and dual-DP oracles on random instances and
small n-folds: agreement with brute force plus wall time per oracle."""
import argparse
import random
import time

from graverip.core import brute_force_solve
from graverip.generators import NFoldConfig, RandomConfig, random_instance, random_nfold
from graverip.strongpoly import dual_dp_factory, exact_factory, primal_dp_factory, solve
from graverip.structure import nfold_norm_bound


def run(cases, factories):
    rows = {}
    for name, make in factories.items():
        t0 = time.perf_counter()
        agree = 0
        for inst, ref, extra in cases:
            rep = solve(inst, make(extra))
            agree += (rep.status, rep.objective) == (ref.status, ref.objective)
        rows[name] = (agree, len(cases), time.perf_counter() - t0)
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    plain = []
    for _ in range(args.count):
        inst = random_instance(rng, RandomConfig(n_max=3, m_max=2))
        plain.append((inst, brute_force_solve(inst), None))
    folds = []
    for _ in range(max(1, args.count // 10)):
        inst, bs = random_nfold(rng, NFoldConfig(n=2, t=2, bound=1))
        folds.append((inst, brute_force_solve(inst), max(1, nfold_norm_bound(*bs.blocks))))

    report = {
        "random": run(plain, {"exact": lambda _: exact_factory,
                              "primal-dp": lambda _: primal_dp_factory(),
                              "dual-dp": lambda _: dual_dp_factory()}),
        "nfold": run(folds, {"exact": lambda _: exact_factory,
                             "dual-dp (structural M)": dual_dp_factory}),
    }
    for family, rows in report.items():
        print(f"[{family}]")
        for name, (agree, total, secs) in rows.items():
            print(f"  {name:24s} {agree}/{total} agree  {secs:7.2f}s")


if __name__ == "__main__":
    main()
