"""Command-line interface.

Subcommands: run (batch single-objective experiment from a config),
bi (the multi-objective set on a bi-objective problem), table2 (the
five-algorithm comparison table), landscape (exact attainable-value
exports), plot (CSV to SVG), and list (catalog of problem ids and
algorithm keys). Exit codes: 0 on success, 1 when a run panics
(partial results are kept), 2 for configuration or schema errors.
"""

from __future__ import annotations

import argparse
import sys

from . import harness
from .moea import MULTI_RUNNERS
from .problems import (biobjective_ids, make_biobjective,
                       make_suite_instance, suite_ids)
from .soea import VARIANTS

__all__ = ["main"]


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="blockbench",
        description="block-structured pseudo-boolean benchmark suite")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="batch single-objective runs from a config")
    p.add_argument("-c", "--config", required=True, help="JSON config file")
    p.add_argument("-o", "--out", help="output directory (overrides config)")
    p.add_argument("--workers", type=int, default=1,
                   help="parallel run workers (capped by BLOCKBENCH_THREADS)")

    p = sub.add_parser("bi", help="multi-objective runs from a config")
    p.add_argument("-c", "--config", required=True, help="JSON config file")
    p.add_argument("-o", "--out", help="output directory (overrides config)")
    p.add_argument("--workers", type=int, default=1,
                   help="parallel run workers (capped by BLOCKBENCH_THREADS)")

    p = sub.add_parser("table2",
                       help="mean evaluations-to-optimum comparison table")
    p.add_argument("--n", type=int, default=40)
    p.add_argument("--m", type=int, default=4,
                   help="block count for the composite rows")
    p.add_argument("--runs", type=int, default=50)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--budget", type=int, default=2_000_000)
    p.add_argument("-o", "--out", default="results/table2")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("landscape", help="exact attainable-value export")
    p.add_argument("--problem", required=True, help="suite id, e.g. F7")
    p.add_argument("--axis", required=True,
                   choices=("ones", "distance", "blocks"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--fix", type=int,
                   help="1-based block index to pin (blocks axis)")
    p.add_argument("-o", "--out", default="landscape.csv")
    p.add_argument("--svg", help="also render an SVG chart to this path")

    p = sub.add_parser("plot", help="render CSV data as a deterministic SVG")
    p.add_argument("inputs", nargs="+", help="input CSV files")
    p.add_argument("--kind", choices=("lines", "scatter", "heatmap"),
                   default="lines")
    p.add_argument("--logx", action="store_true",
                   help="logarithmic x axis (lines)")
    p.add_argument("-o", "--out", required=True, help="output SVG path")

    sub.add_parser("list", help="catalog of problems and algorithms")
    return ap


def _cmd_list() -> int:
    print("single-objective problems (run, table2, landscape):")
    for pid in suite_ids():
        spec = make_suite_instance(pid, 40, 4)
        fams = ", ".join(b.label for b in spec.blocks)
        extra = ""
        if spec.thresholds is not None:
            extra = f"  thresholds(n=40,m=4)={tuple(spec.thresholds)}"
        print(f"  {pid:<4} {spec.kind.value:<4} blocks: {fams}{extra}")
    print("bi-objective problems (bi):")
    for pid in biobjective_ids():
        inst = make_biobjective(pid, 40, 4)
        fams = ", ".join(b.label for b in inst.first.blocks)
        print(f"  {pid:<4} {inst.first.kind.value}+{inst.second.kind.value}"
              f" blocks: {fams}")
    print("single-objective algorithms (algo):", ", ".join(VARIANTS))
    print("multi-objective algorithms (algos):", ", ".join(MULTI_RUNNERS))
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            cfg = harness.load_config(args.config)
            if args.out:
                cfg.out = args.out
            return harness.cmd_run(
                cfg, workers=harness.resolve_workers(args.workers))
        if args.command == "bi":
            cfg = harness.load_config(args.config)
            if args.out:
                cfg.out = args.out
            return harness.cmd_bi(
                cfg, workers=harness.resolve_workers(args.workers))
        if args.command == "table2":
            return harness.cmd_table2(
                n=args.n, m=args.m, runs=args.runs, seed=args.seed,
                budget=args.budget, out=args.out,
                workers=harness.resolve_workers(args.workers))
        if args.command == "landscape":
            return harness.cmd_landscape(
                args.problem, args.axis, args.n, args.m, args.out,
                fix=args.fix, svg=args.svg)
        if args.command == "plot":
            return harness.cmd_plot(args.inputs, args.kind, args.out,
                                    logx=args.logx)
        return _cmd_list()
    except harness.ConfigError as exc:
        print(exc, file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
