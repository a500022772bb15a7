"""Benchmark figures from shapcond result CSVs.

Consumes the CSV schemas written by `shapcond run` (mae.csv, summary.csv)
and renders the two standard comparison figures: per-method boxplots of
per-observation MAE, and an MSE_v-versus-MAE scatter.  Inputs are never
modified; outputs are overwritten idempotently as PNG and SVG.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

__all__ = ["SchemaError", "read_csv", "method_class", "class_color",
           "collect_facets", "plot_mae_boxplots", "plot_msev_vs_mae"]

# one color per method class, mirroring the benchmark taxonomy
CLASS_COLORS = {
    "independence": "#7f7f7f",
    "empirical": "#8c564b",
    "parametric": "#1f77b4",
    "generative": "#2ca02c",
    "separate": "#d62728",
    "surrogate": "#9467bd",
}

_PARAMETRIC = ("gaussian", "copula", "burr", "gh")


class SchemaError(ValueError):
    """A results CSV is missing expected columns."""


def read_csv(path, expected: list[str]) -> list[dict]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in expected if c not in header]
        if missing:
            raise SchemaError(f"{path}: missing columns {missing}; found {header}")
        return list(reader)


def method_class(name: str) -> str:
    if name.endswith("_separate"):
        return "separate"
    if name.endswith("_surrogate"):
        return "surrogate"
    if name in _PARAMETRIC:
        return "parametric"
    if name == "ctree":
        return "generative"
    if name in ("independence", "empirical"):
        return name
    return "generative"


def class_color(name: str) -> str:
    return CLASS_COLORS[method_class(name)]


def _facet_label(run_dir: Path) -> str:
    manifest = run_dir / "manifest.json"
    if manifest.exists():
        data = json.loads(manifest.read_text())["config"]["data"]
        if data.get("family") == "burr":
            return f"kappa = {data.get('kappa')}"
        return f"rho = {data.get('rho')}"
    return run_dir.name


def collect_facets(results_dir) -> list[tuple[str, Path]]:
    """(label, run directory) pairs: either one run or one run per subdir."""
    root = Path(results_dir)
    if (root / "mae.csv").exists():
        return [(_facet_label(root), root)]
    facets = [(_facet_label(sub), sub)
              for sub in sorted(root.iterdir())
              if sub.is_dir() and (sub / "mae.csv").exists()]
    if not facets:
        raise FileNotFoundError(f"no mae.csv found under {results_dir}")
    labels = [label for label, _ in facets]
    if len(set(labels)) < len(labels):  # disambiguate repeated dependence levels
        facets = [(f"{label} ({run.name})", run) for label, run in facets]
    return facets


def _mae_by_method(run_dir: Path) -> dict[str, np.ndarray]:
    rows = read_csv(run_dir / "mae.csv", ["method", "observation", "mae"])
    out: dict[str, list] = {}
    seen = set()
    for row in rows:
        key = (row["method"], row["observation"])
        if key in seen:
            raise SchemaError(f"{run_dir}/mae.csv: duplicate entry for {key}")
        seen.add(key)
        out.setdefault(row["method"], []).append(float(row["mae"]))
    return {name: np.asarray(vals) for name, vals in out.items()}


def _save(fig, out_base) -> list[Path]:
    out_base = Path(out_base)
    out_base.parent.mkdir(parents=True, exist_ok=True)
    paths = []
    for ext in ("png", "svg"):
        path = out_base.with_suffix(f".{ext}")
        fig.savefig(path, bbox_inches="tight", dpi=120)
        paths.append(path)
    plt.close(fig)
    return paths


def plot_mae_boxplots(results_dir, out_base) -> dict[str, list[str]]:
    """One box per method per facet, sorted by mean MAE ascending.

    Returns the plotted method order per facet (left to right).
    """
    facets = collect_facets(results_dir)
    fig, axes = plt.subplots(1, len(facets), figsize=(1.2 + 5.2 * len(facets), 4.4),
                             squeeze=False, sharey=False)
    orders: dict[str, list[str]] = {}
    for ax, (label, run_dir) in zip(axes[0], facets):
        mae = _mae_by_method(run_dir)
        order = sorted(mae, key=lambda name: mae[name].mean())
        orders[label] = order
        data = [mae[name] for name in order]
        boxes = ax.boxplot(data, patch_artist=True, widths=0.7,
                           medianprops={"color": "black"})
        for patch, name in zip(boxes["boxes"], order):
            patch.set_facecolor(class_color(name))
            patch.set_alpha(0.75)
        ax.set_xticklabels(order, rotation=45, ha="right", fontsize=8)
        ax.set_ylabel("MAE per observation")
        ax.set_title(label)
        ax.grid(axis="y", alpha=0.3)
    fig.suptitle("Shapley value accuracy by method (sorted by mean MAE)")
    fig.tight_layout()
    _save(fig, out_base)
    return orders


def plot_msev_vs_mae(results_dir, out_base) -> list[tuple[str, float, float]]:
    """Scatter of MSE_v against overall MAE, one labeled point per method.

    Returns the plotted (method, mae, mse_v) triples.
    """
    facets = collect_facets(results_dir)
    fig, axes = plt.subplots(1, len(facets), figsize=(1.2 + 4.8 * len(facets), 4.4),
                             squeeze=False)
    points: list[tuple[str, float, float]] = []
    for ax, (label, run_dir) in zip(axes[0], facets):
        rows = read_csv(run_dir / "summary.csv", ["method", "mae", "mse_v"])
        for row in rows:
            if row["mae"] == "":
                continue
            mae, msev = float(row["mae"]), float(row["mse_v"])
            points.append((row["method"], mae, msev))
            ax.scatter(mae, msev, s=45, color=class_color(row["method"]),
                       edgecolor="black", linewidth=0.5, zorder=3)
            ax.annotate(row["method"], (mae, msev), textcoords="offset points",
                        xytext=(5, 4), fontsize=8)
        ax.set_xlabel("MAE (vs truth oracle)")
        ax.set_ylabel("MSE_v")
        ax.set_title(label)
        ax.grid(alpha=0.3)
    fig.suptitle("Contribution-function score vs Shapley accuracy")
    fig.tight_layout()
    _save(fig, out_base)
    return points
