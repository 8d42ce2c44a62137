"""Command-line entry point: ``refmoead {run,theorems,pf,compare}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

import numpy as np

from . import geometry
from .core import ConfigError
from .experiment import (
    ConfigParseError,
    emit_plot_data,
    parse_config,
    read_summary,
    run_experiment,
    summarize,
    write_pf_csv,
)
from .problems import PROBLEM_IDS, ProblemError

log = logging.getLogger("refmoead")


def _cmd_run(args: argparse.Namespace) -> int:
    if args.config:
        text = Path(args.config).read_text()
    elif args.preset:
        cell = {"problem": args.preset, "strategy": args.strategy or "Min",
                "scalarizer": args.scalarizer or "MTCH"}
        text = json.dumps({"cells": [cell]})
    else:
        print("run: need --config or --preset", file=sys.stderr)
        return 2
    try:
        spec = parse_config(
            text,
            replicates=args.replicates,
            base_seed=args.seed,
            output_dir=args.output_dir,
            parallelism=args.parallelism,
        )
    except ConfigParseError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    t0 = time.perf_counter()
    report = run_experiment(spec)
    log.info("experiment finished in %.1f s", time.perf_counter() - t0)
    if args.plots:
        plot_dir = Path(spec.output_dir) / "plots"
        plot_dir.mkdir(exist_ok=True)
        for o in report.outcomes:
            if o.ok and o.results:
                for kind in ("population_scatter", "metric_trajectory", "pf_overlay"):
                    emit_plot_data(o.results, kind, plot_dir / f"{o.cell.label}_{kind}.csv")
    print(Path(report.summary_path).read_text(), end="")
    for o in report.failed:
        print(f"FAILED {o.cell.label}: {o.error}", file=sys.stderr)
    return 1 if report.failed else 0


def _cmd_theorems(args: argparse.Namespace) -> int:
    rng = np.random.default_rng(args.seed)
    ids = args.theorem or list(geometry.THEOREMS)
    t0 = time.perf_counter()
    print("theorem,samples,hypothesis_pass,ties,violations,violation_rate")
    bad = 0
    for th in ids:
        r = geometry.theorem_sweep(th, args.samples, rng, mirror=args.mirror)
        bad += r.violations
        print(f"{th},{r.attempted},{r.hypothesis_pass},{r.ties},{r.violations},{r.violation_rate:.6g}")
    log.info("sweeps took %.2f s", time.perf_counter() - t0)
    return 1 if bad else 0


def _cmd_pf(args: argparse.Namespace) -> int:
    try:
        path = write_pf_csv(args.problem, args.out, args.count)
    except ProblemError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(path)
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    root = Path(args.output_dir)
    if not (root / "cells.json").exists():
        print(f"error: {root} holds no experiment (cells.json missing)", file=sys.stderr)
        return 2
    try:
        path = summarize(root, alpha=args.alpha)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for row in read_summary(path):
        print(f"{row['problem']:>6} {row['strategy']:>9} {row['scalarizer']:>4}  "
              f"HV {row['HV']} {row['HV_vs_baseline']}  IGD {row['IGD']} {row['IGD_vs_baseline']}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="refmoead", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run a replicated experiment")
    r.add_argument("--config", help="JSON experiment config")
    r.add_argument("--preset", choices=[i.lower() for i in PROBLEM_IDS],
                   help="single-cell experiment on a shipped problem preset")
    r.add_argument("--strategy", help="reference-point strategy for --preset (Min, TrueIdeal, DRP, NormW)")
    r.add_argument("--scalarizer", help="decomposition for --preset (WS, TCH, MTCH, PBI)")
    r.add_argument("--output-dir", help="overrides output_dir")
    r.add_argument("--seed", type=int, help="overrides base_seed")
    r.add_argument("--replicates", type=int, help="overrides replicates")
    r.add_argument("--parallelism", type=int, help="worker processes")
    r.add_argument("--plots", action="store_true", help="also write plot-data CSVs")
    r.set_defaults(func=_cmd_run)

    t = sub.add_parser("theorems", help="falsification sweeps of the fitness-order theorems")
    t.add_argument("--samples", type=int, default=10_000, help="hypothesis-satisfying samples per theorem")
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--theorem", type=int, action="append", choices=geometry.THEOREMS)
    t.add_argument("--mirror", action="store_true", help="score with the objectives swapped")
    t.set_defaults(func=_cmd_theorems)

    f = sub.add_parser("pf", help="export a reference front sample")
    f.add_argument("--problem", required=True)
    f.add_argument("--out", required=True)
    f.add_argument("--count", type=int)
    f.set_defaults(func=_cmd_pf)

    c = sub.add_parser("compare", help="rebuild summary.csv and rank-sum symbols from run CSVs")
    c.add_argument("--output-dir", required=True)
    c.add_argument("--alpha", type=float, default=0.05)
    c.set_defaults(func=_cmd_compare)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
