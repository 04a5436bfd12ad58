"""Command line interface: run pipelines, re-analyze runs, list components.

Exit codes: 0 success with all verdicts holding, 1 configuration or oracle
failure, 2 finished runs whose boundary verdict does not hold.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .config import MAX_SEED, load_config
from .distance import METRIC_NAMES, metric_descriptions
from .errors import BorderlineError, ConfigError
from .oracles import oracle_descriptions
from .pipeline import analyze_run_dir, run_pipeline

OUTPUT_ROOT_ENV = "BORDERLINE_OUTPUT_ROOT"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="borderline",
        description="Locate the boundary between valid and invalid inputs of a parser.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute the two-step pipeline from a YAML config")
    run_p.add_argument("config", help="path to the run configuration file")
    run_p.add_argument("--seed", type=int, help="override the config's master seed")
    run_p.add_argument("--output", help="run directory (overrides config and environment)")
    run_p.add_argument("--jobs", type=int, default=1, help="parallel analysis workers")
    run_p.add_argument("--quiet", action="store_true", help="suppress progress output")

    an_p = sub.add_parser("analyze", help="recompute the analysis of an existing run directory")
    an_p.add_argument("run_dir", help="directory produced by `borderline run`")
    an_p.add_argument("--metrics", help="comma-separated analysis metrics (default: from the run)")
    an_p.add_argument("--jobs", type=int, default=1, help="parallel analysis workers")
    an_p.add_argument("--quiet", action="store_true", help="suppress progress output")

    oracles_p = sub.add_parser("oracles", help="inspect available validity oracles")
    oracles_sub = oracles_p.add_subparsers(dest="action", required=True)
    oracles_sub.add_parser("list", help="list oracle names")

    metrics_p = sub.add_parser("metrics", help="inspect available distance metrics")
    metrics_sub = metrics_p.add_subparsers(dest="action", required=True)
    metrics_sub.add_parser("list", help="list metric names")

    return parser


def _resolve_output(args, config) -> str:
    if args.output:
        return args.output
    if config.output_dir:
        return config.output_dir
    stem = Path(args.config).stem or "run"
    name = f"{stem}-seed{config.seed}"
    root = os.environ.get(OUTPUT_ROOT_ENV)
    return str(Path(root) / name) if root else str(Path("runs") / name)


def _cmd_run(args) -> int:
    config = load_config(args.config)
    if args.seed is not None:
        if not 0 <= args.seed <= MAX_SEED:
            raise ConfigError(f"must be in [0, {MAX_SEED}], got {args.seed}", "--seed")
        config = replace(config, seed=args.seed)
    output = _resolve_output(args, config)
    result = run_pipeline(config, output, jobs=max(1, args.jobs), quiet=args.quiet)
    if not args.quiet:
        print(f"run complete: {result.output_dir}")
        for (preset, metric), verdict in sorted(result.verdicts.items()):
            state = "holds" if verdict.holds else "FAILS"
            print(f"  verdict {preset}/{metric}: {state} (margin {verdict.margin:.4g})")
    return result.exit_code


def _cmd_analyze(args) -> int:
    metric_names = None
    if args.metrics:
        metric_names = [m.strip() for m in args.metrics.split(",") if m.strip()]
        for name in metric_names:
            if name not in METRIC_NAMES:
                raise ConfigError(
                    f"unknown metric {name!r} (available: {', '.join(METRIC_NAMES)})", "--metrics"
                )
    result = analyze_run_dir(args.run_dir, metric_names, jobs=max(1, args.jobs), quiet=args.quiet)
    if not args.quiet:
        print(f"analysis written under: {result.output_dir / 'analysis'}")
        for (preset, metric), verdict in sorted(result.verdicts.items()):
            state = "holds" if verdict.holds else "FAILS"
            print(f"  verdict {preset}/{metric}: {state} (margin {verdict.margin:.4g})")
    return result.exit_code


def _cmd_list(descriptions: dict[str, str]) -> int:
    width = max(len(name) for name in descriptions)
    for name, text in descriptions.items():
        print(f"{name:<{width}}  {text}")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "analyze":
            return _cmd_analyze(args)
        if args.command == "oracles":
            return _cmd_list(oracle_descriptions())
        return _cmd_list(metric_descriptions())
    except BorderlineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
