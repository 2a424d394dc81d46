"""Graver norms of the bidiagonal family 2 x_i = x_{i+1}: g_inf doubles with
each extra column while the primal treedepth grows only by one."""
import argparse
import time

from graverip.generators import lowerbound_element, lowerbound_matrix
from graverip.graver import graver_completion, norms
from graverip.structure import primal_graph, treedepth_decomposition


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=7)
    args = ap.parse_args()
    print(f"{'n':>3} {'|G|':>5} {'g_inf':>6} {'g_1':>6} {'td_P':>5} {'secs':>7}")
    for n in range(2, args.max_n + 1):
        A = lowerbound_matrix(n)
        t0 = time.perf_counter()
        gb = graver_completion(A, n)
        nm = norms(gb)
        td = treedepth_decomposition(primal_graph(A, n)).treedepth
        assert lowerbound_element(n) in set(map(tuple, gb))
        print(f"{n:>3} {len(gb):>5} {nm.ginf:>6} {nm.g1:>6} {td:>5} {time.perf_counter() - t0:>7.3f}")


if __name__ == "__main__":
    main()
