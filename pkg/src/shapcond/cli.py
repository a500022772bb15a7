"""Command line entry point.

    shapcond run --config experiment.toml [--output DIR] [--threads N]
                 [--seed-override SEED]
    shapcond list-methods
"""

from __future__ import annotations

import argparse
import sys

from .errors import ShapcondError
from .experiment import emit_results, list_methods, load_config, run_experiment

__all__ = ["main"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shapcond",
        description="Conditional Shapley value benchmark runner")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run an experiment from a TOML config")
    run.add_argument("--config", required=True, help="path to the experiment config")
    run.add_argument("--output", default=None, help="output directory override")
    run.add_argument("--threads", type=int, default=None,
                     help="worker threads (overrides config and SHAPCOND_THREADS)")
    run.add_argument("--seed-override", type=int, default=None,
                     help="replace the config seed")

    sub.add_parser("list-methods", help="list available estimation methods")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)

    if args.command == "list-methods":
        for name, klass in list_methods():
            print(f"{name:24s} {klass}")
        return 0

    try:
        config = load_config(args.config, seed_override=args.seed_override,
                             output_override=args.output,
                             threads_override=args.threads)
    except (ShapcondError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    try:
        report = run_experiment(config)
    except ShapcondError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    paths = emit_results(report, config.run.output_dir)
    for name, path in sorted(paths.items()):
        print(f"wrote {path}")
    for method in report.methods:
        mae = f"mae={method.mae_overall:.6f}  " if method.mae_overall is not None else ""
        print(f"{method.name:24s} {mae}mse_v={method.mse_v:.6f}  "
              f"t={method.timings.get('training', 0.0):.2f}/"
              f"{method.timings.get('generating', 0.0):.2f}/"
              f"{method.timings.get('predicting', 0.0):.2f}s")
    if report.failures:
        for name, err in report.failures.items():
            print(f"error: method {name} failed: {err}", file=sys.stderr)
        print("partial results written (flagged in manifest.json)", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
