"""Command-line interface.

Verbs: generate (instance -> edge list), exact (oracle vectors),
run (experiment -> CSV/JSON), fit (log-log scaling slope).
"""

from __future__ import annotations

import argparse
import json
import sys

from .graph import load_edge_list, save_edge_list
from .exact import exact_single_source, exact_single_target, exact_pagerank, dump_csv
from .harness import (ExperimentConfig, run_experiment, emit, read_results,
                      fit_scaling)
from .instances import InstanceSpec, generate, parameter_presets


def _cmd_generate(args):
    if args.preset:
        spec = parameter_presets(args.family, args.n, args.m, args.delta,
                                 args.alpha)
        spec.swap = args.swap if args.swap is not None else spec.swap
    else:
        spec = InstanceSpec(family=args.family, n=args.n, m=args.m, L=args.L,
                            D=args.D, D2=args.D2, alpha=args.alpha,
                            swap=bool(args.swap), variant=args.variant,
                            padding=args.padding)
    g, meta = generate(spec)
    save_edge_list(g, args.out)
    if args.meta:
        payload = {"spec": json.loads(spec.to_json()),
                   "s": meta.s, "t": meta.t,
                   "pi_pre_swap": meta.pi_pre_swap,
                   "pi_post_swap": meta.pi_post_swap,
                   "pi_bounds": meta.pi_bounds,
                   "target_group": meta.target_group,
                   "swap_edges": meta.swap_edges,
                   "roles": {k: [v[0], v[-1]] for k, v in meta.roles.items() if v}}
        with open(args.meta, "w") as f:
            json.dump(payload, f, indent=1)
            f.write("\n")
    print(f"wrote {g.node_count} nodes, {g.edge_count} edges to {args.out}")
    return 0


def _cmd_exact(args):
    g = load_edge_list(args.graph)
    if args.mode == "source":
        vec = exact_single_source(g, args.node, args.alpha, args.tol)
    elif args.mode == "target":
        vec = exact_single_target(g, args.node, args.alpha, args.tol)
    else:
        vec = exact_pagerank(g, args.alpha, args.tol)
    dump_csv(vec, args.out)
    print(f"wrote {g.node_count} rows to {args.out}")
    return 0


def _cmd_run(args):
    cfg = ExperimentConfig.load(args.config)
    if args.seed is not None:
        cfg.master_seed = args.seed
    results = run_experiment(cfg, threads=args.threads)
    emit(results, args.format, args.out)
    n_ok = sum(1 for r in results if r.success)
    n_known = sum(1 for r in results if r.success is not None)
    print(f"wrote {len(results)} rows to {args.out}"
          + (f" (success {n_ok}/{n_known})" if n_known else ""))
    return 0


def _cmd_fit(args):
    rows = read_results(args.results)
    if args.algorithm:
        rows = [r for r in rows if r["algorithm"] == args.algorithm]
    cells = {}
    for r in rows:
        cells.setdefault(r["cell"], []).append(r)
    xs, ys = [], []
    for cell_rows in cells.values():
        xs.append(float(cell_rows[0][args.x]))
        ys.append(sum(float(r[args.y]) for r in cell_rows) / len(cell_rows))
    slope, stderr = fit_scaling(xs, ys)
    print(f"slope {slope:+.4f} +- {stderr:.4f}  ({len(xs)} sweep points, "
          f"y={args.y} vs x={args.x})")
    return 0


def main(argv=None):
    p = argparse.ArgumentParser(
        prog="pprquery",
        description="Discounted-random-walk probability estimation under "
                    "a metered adjacency-list query model")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate a hard instance")
    g.add_argument("--family", required=True)
    g.add_argument("--n", type=int, default=0)
    g.add_argument("--m", type=int, default=0)
    g.add_argument("--L", type=int, default=1)
    g.add_argument("--D", type=int, default=1)
    g.add_argument("--D2", type=int, default=0)
    g.add_argument("--delta", type=float, default=0.01,
                   help="threshold for --preset parameterization")
    g.add_argument("--alpha", type=float, default=0.2)
    g.add_argument("--swap", action=argparse.BooleanOptionalAction, default=None)
    g.add_argument("--preset", action="store_true",
                   help="set L/D from the family's regime for (n,m,delta)")
    g.add_argument("--variant", default="")
    g.add_argument("--padding", action="store_true")
    g.add_argument("--out", required=True)
    g.add_argument("--meta", help="also write instance metadata JSON")
    g.set_defaults(func=_cmd_generate)

    e = sub.add_parser("exact", help="exact oracle vectors")
    e.add_argument("--graph", required=True)
    e.add_argument("--mode", choices=("source", "target", "pagerank"),
                   required=True)
    e.add_argument("--node", type=int, default=0)
    e.add_argument("--alpha", type=float, default=0.2)
    e.add_argument("--tol", type=float, default=1e-12)
    e.add_argument("--out", required=True)
    e.set_defaults(func=_cmd_exact)

    r = sub.add_parser("run", help="run an experiment config")
    r.add_argument("--config", required=True)
    r.add_argument("--seed", type=int, default=None)
    r.add_argument("--out", required=True)
    r.add_argument("--format", choices=("csv", "json"), default="csv")
    r.add_argument("--threads", type=int, default=1,
                   help="worker processes over sweep cells; output is "
                        "identical to a sequential run")
    r.set_defaults(func=_cmd_run)

    f = sub.add_parser("fit", help="log-log scaling slope from results")
    f.add_argument("--results", required=True)
    f.add_argument("--x", default="delta")
    f.add_argument("--y", default="q_total")
    f.add_argument("--algorithm", default=None)
    f.set_defaults(func=_cmd_fit)

    args = p.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
