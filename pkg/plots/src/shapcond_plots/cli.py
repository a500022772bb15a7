"""make_figs entry point: results directory in, figure files out."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .figures import plot_mae_boxplots, plot_msev_vs_mae

__all__ = ["main"]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="make_figs",
        description="Render benchmark figures from a shapcond results directory")
    parser.add_argument("results_dir", help="directory holding run artifacts "
                                            "(or subdirectories of runs, one per facet)")
    parser.add_argument("out_dir", help="directory for the PNG/SVG outputs")
    args = parser.parse_args(argv)

    out = Path(args.out_dir)
    try:
        orders = plot_mae_boxplots(args.results_dir, out / "mae_boxplots")
        points = plot_msev_vs_mae(args.results_dir, out / "msev_vs_mae")
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for label, order in orders.items():
        print(f"{label}: {' < '.join(order)}")
    print(f"wrote {out / 'mae_boxplots.png'} (+svg), {out / 'msev_vs_mae.png'} (+svg); "
          f"{len(points)} methods")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
