"""Command-line front end.

Exit codes: 0 optimal (or success), 2 infeasible, 3 unbounded, 1 error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import generators as gen
from .augment import exact_graver_oracle
from .core import NEG_INF, POS_INF, ILPInstance, Status, UsageError, brute_force_solve, dumps_instance
from .dp import TreeDecomposition, dual_decomposition, incidence_decomposition, primal_decomposition
from .graver import column_bound, circuit_bound, graver_basis, graver_completion, norms
from .strongpoly import dual_dp_factory, exact_factory, primal_dp_factory, solve
from .structure import (
    dual_graph, embed_dual_td, embed_primal_td, incidence_graph, nfold_norm_bound,
    primal_graph, structure_of, treedepth_decomposition,
)

EXIT = {Status.OPTIMAL: 0, Status.INFEASIBLE: 2, Status.UNBOUNDED: 3}
ANALYZE_TD_CAP = 20
ANALYZE_GRAVER_CAP = 8


def emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, default=str) + "\n")


def warn(msg: str) -> None:
    sys.stderr.write(f"warning: {msg}\n")


def read_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path}: {exc}") from exc
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    if not isinstance(obj, dict):
        raise UsageError("instance JSON must be an object")
    return obj


def load(path: str) -> tuple[dict, ILPInstance]:
    obj = read_json(path)
    return obj, ILPInstance.from_json_obj(obj)


def parse_box(text: str | None):
    if text is None:
        return None
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError as exc:
        raise UsageError(f"--box expects LO:HI, got {text!r}") from exc


def _radius_factory(radius: int):
    def make(inst):
        return exact_graver_oracle(inst.A, radius=radius, n=inst.n)
    return make


def pick_factory(name: str, obj: dict, inst: ILPInstance, radius: int | None):
    """Returns (factory, label)."""
    if name == "exact":
        return (_radius_factory(radius) if radius else exact_factory), "exact"
    if name == "primal-dp":
        return primal_dp_factory(radius), "primal-dp"
    if name == "dual-dp":
        bs = _structure(obj, inst)
        M = radius
        if M is None and bs is not None and bs.kind == "nfold":
            M = max(1, nfold_norm_bound(*bs.blocks))
        return dual_dp_factory(M), "dual-dp"
    if name == "auto":
        bs = _structure(obj, inst)
        if bs is None:
            warn("no block structure detected; using the exact oracle")
            return exact_factory, "exact"
        if bs.kind in ("nfold", "treefold"):
            return pick_factory("dual-dp", obj, inst, radius)
        return primal_dp_factory(radius), "primal-dp"
    raise UsageError(f"unknown oracle {name!r}")


def _structure(obj, inst):
    try:
        return structure_of(obj, inst)
    except UsageError as exc:
        warn(f"structure detection failed: {exc}")
        return None


def cmd_solve(args) -> int:
    obj, inst = load(args.instance)
    t0 = time.perf_counter()
    if args.oracle == "brute":
        rep = brute_force_solve(inst, parse_box(args.box))
        label = "brute"
    else:
        factory, label = pick_factory(args.oracle, obj, inst, args.radius)
        rep = solve(inst, factory)
    out = rep.to_json_obj()
    out["oracle"] = label
    if args.verbose:
        out["stats"]["seconds"] = round(time.perf_counter() - t0, 6)
    else:
        out["stats"] = {k: v for k, v in out["stats"].items() if k in ("steps", "oracle_calls", "stage", "nodes")}
    emit(out)
    return EXIT[rep.status]


def _graph_stats(g) -> dict:
    return {"vertices": g.number_of_nodes(), "edges": g.number_of_edges()}


def _td_report(g) -> dict:
    if g.number_of_nodes() > ANALYZE_TD_CAP:
        return {"treedepth": "uncomputed"}
    f = treedepth_decomposition(g)
    return {"treedepth": f.treedepth, "witness": f.to_json_obj()}


def cmd_analyze(args) -> int:
    obj, inst = load(args.instance)
    A, n = inst.A, inst.n
    report: dict = {"n": n, "m": inst.m, "max_abs": inst.max_abs}
    graphs = {"primal": primal_graph(A, n) if A else None,
              "dual": dual_graph(A, n) if A else None,
              "incidence": incidence_graph(A, n) if A else None}
    decomps = {"primal": primal_decomposition, "dual": dual_decomposition, "incidence": incidence_decomposition}
    for name, g in graphs.items():
        if g is None:
            report[name] = "uncomputed"
            continue
        entry = _graph_stats(g)
        entry["width_upper_bound"] = decomps[name](A, n).width
        entry.update(_td_report(g))
        report[name] = entry
    bs = _structure(obj, inst)
    if bs is None:
        report["structure"] = None
    else:
        sdesc = {"kind": bs.kind, "tau": bs.tau, "dims": list(bs.dims), "bricks": len(bs.bricks)}
        if bs.kind == "nfold":
            A1, A2 = bs.blocks
            sdesc.update(r=len(A1), s=len(A2), t=len(A2[0]), n=len(bs.bricks))
        report["structure"] = sdesc
    if "certificate" in obj:
        cert = obj["certificate"]
        td = TreeDecomposition({int(k): frozenset(v) for k, v in enumerate(cert["bags"])},
                               {k: (None if p is None else int(p)) for k, p in enumerate(cert["parent"])})
        report["certificate"] = {"kind": cert.get("kind"), "width": td.width,
                                 "valid": td.is_valid_for(dual_graph(A, n) if cert.get("kind") == "dual" else primal_graph(A, n))}
    if any(v for row in A for v in row):
        bounds: dict = {"column_bound_g1": column_bound(A, n)}
        if n <= ANALYZE_GRAVER_CAP:
            bounds["circuit_bound_ginf"] = circuit_bound(A, n)
            nm = norms(graver_completion(A, n))
            bounds.update(g1=nm.g1, ginf=nm.ginf)
        else:
            bounds.update(g1="uncomputed", ginf="uncomputed")
        report["norms"] = bounds
    emit(report)
    return 0


def cmd_graver(args) -> int:
    obj = read_json(args.instance)
    A = [[int(v) for v in row] for row in obj["A"]]
    n = len(obj["w"]) if "w" in obj else len(A[0])
    if args.radius:
        gb = graver_basis(A, args.radius, n)
    else:
        gb = graver_completion(A, n)
    nm = norms(gb)
    emit({"certified": gb.certified, "radius": gb.radius, "size": len(gb),
          "g1": nm.g1, "ginf": nm.ginf, "elements": [list(g) for g in gb]})
    return 0


def cmd_embed(args) -> int:
    obj, inst = load(args.instance)
    if args.kind == "primal":
        forest = treedepth_decomposition(primal_graph(inst.A, inst.n))
        emb = embed_primal_td(inst, forest, strict=args.strict)
    else:
        forest = treedepth_decomposition(dual_graph(inst.A, inst.n))
        emb = embed_dual_td(inst, forest, strict=args.strict)
    out = emb.instance.to_json_obj()
    out["structure"] = emb.structure.to_json_obj()
    out["var_map"] = list(emb.var_map)
    out["info"] = emb.info
    emit(out)
    return 0


def cmd_generate(args) -> int:
    rng = random.Random(args.seed)
    if args.family == "random":
        cfg = gen.RandomConfig(n_max=args.n, m_max=args.m)
        emit(gen.random_instance(rng, cfg).to_json_obj())
    elif args.family == "nfold":
        cfg = gen.NFoldConfig(r=args.r, s=args.s, t=args.t, n=args.n)
        inst, bs = gen.random_nfold(rng, cfg)
        out = inst.to_json_obj()
        out["structure"] = bs.to_json_obj()
        emit(out)
    elif args.family == "subset-sum":
        S = [int(v) for v in args.S.split(",") if v.strip()]
        enc = gen.subset_sum(S, args.target)
        td = enc.decomposition
        out = enc.instance.to_json_obj()
        out["names"] = enc.names
        out["row_names"] = enc.rows
        out["certificate"] = {"kind": "dual", "width": td.width,
                              "bags": [sorted(td.bags[t]) for t in sorted(td.bags)],
                              "parent": [td.parent[t] for t in sorted(td.bags)]}
        emit(out)
    elif args.family == "lowerbound":
        A = gen.lowerbound_matrix(args.n)
        inst = ILPInstance(A, [0] * (args.n - 1), [0] * args.n, [NEG_INF] * args.n, [POS_INF] * args.n)
        out = inst.to_json_obj()
        out["expected_graver_element"] = list(gen.lowerbound_element(args.n))
        emit(out)
    return 0


def _bench_one(seed: int):
    rng = random.Random(seed)
    inst = gen.random_instance(rng)
    t0 = time.perf_counter()
    rep = solve(inst)
    t1 = time.perf_counter()
    bf = brute_force_solve(inst)
    t2 = time.perf_counter()
    return {"seed": seed, "n": inst.n, "m": inst.m, "status": rep.status.value,
            "agree": rep.status == bf.status and rep.objective == bf.objective,
            "solve_s": t1 - t0, "brute_s": t2 - t1}


def cmd_bench(args) -> int:
    seeds = [args.seed + k for k in range(args.count)]
    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as ex:
            rows = list(ex.map(_bench_one, seeds))
    else:
        rows = [_bench_one(s) for s in seeds]
    emit({"count": len(rows), "agree": sum(r["agree"] for r in rows),
          "solve_seconds": round(sum(r["solve_s"] for r in rows), 4),
          "brute_seconds": round(sum(r["brute_s"] for r in rows), 4)})
    return 0 if all(r["agree"] for r in rows) else 1


class _Parser(argparse.ArgumentParser):
    # usage errors share exit code 1 with every other error
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="graverip", description="Graver-best augmentation ILP toolkit")
    p.add_argument("--format", choices=["json"], default="json")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="solve an instance file")
    s.add_argument("instance")
    s.add_argument("--oracle", choices=["exact", "primal-dp", "dual-dp", "auto", "brute"], default="auto")
    s.add_argument("--radius", type=int, default=None,
                   help="enumeration radius (exact) or norm bound M (dp oracles)")
    s.add_argument("--box", default=None, help="finite box LO:HI for --oracle brute")
    s.add_argument("--verbose", action="store_true")
    s.set_defaults(func=cmd_solve)

    a = sub.add_parser("analyze", help="graphs, treedepth, structure and norm bounds")
    a.add_argument("instance")
    a.set_defaults(func=cmd_analyze)

    g = sub.add_parser("graver", help="Graver basis of the instance matrix")
    g.add_argument("instance")
    g.add_argument("--radius", type=int, default=None)
    g.set_defaults(func=cmd_graver)

    e = sub.add_parser("embed", help="embed into a multi-stage or tree-fold program")
    e.add_argument("instance")
    e.add_argument("--kind", choices=["primal", "dual"], default="primal")
    e.add_argument("--strict", action="store_true")
    e.set_defaults(func=cmd_embed)

    gen_p = sub.add_parser("generate", help="instance generators")
    gen_p.add_argument("family", choices=["random", "nfold", "subset-sum", "lowerbound"])
    gen_p.add_argument("--seed", type=int, default=0)
    gen_p.add_argument("--n", type=int, default=3)
    gen_p.add_argument("--m", type=int, default=2)
    gen_p.add_argument("--r", type=int, default=1)
    gen_p.add_argument("--s", type=int, default=1)
    gen_p.add_argument("--t", type=int, default=2)
    gen_p.add_argument("--S", default="1,2", help="comma-separated subset-sum items")
    gen_p.add_argument("--target", type=int, default=3, help="subset-sum target")
    gen_p.set_defaults(func=cmd_generate)

    b = sub.add_parser("bench", help="random solves checked against brute force")
    b.add_argument("--count", type=int, default=50)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--workers", type=int, default=1)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help and usage errors
        return exc.code if isinstance(exc.code, int) else 1
    try:
        return args.func(args)
    except (UsageError, ValueError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
