"""Machine-readable run artifacts.

Four files per run: shapley_values.csv (method, observation, feature, phi;
feature 0 is the baseline), mae.csv (per-observation MAE vs the truth
oracle), summary.csv (per-method metrics and phase timings) and
manifest.json (config echo, versions, flags).  Numeric formatting is fixed
at 10 significant digits with LF line endings so reruns are byte-stable.
"""

from __future__ import annotations

import dataclasses
import json
import platform
from pathlib import Path

import numpy as np
import scipy
import sklearn

from .. import __version__
from .runner import ExperimentReport

__all__ = ["emit_results", "load_csv"]


def _fmt(x: float) -> str:
    return format(float(x), ".10g")


def _write_csv(path: Path, header: list[str], rows) -> None:
    try:
        with open(path, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(",".join(header) + "\n")
            for row in rows:
                fh.write(",".join(row) + "\n")
    except OSError as exc:
        raise OSError(f"failed writing artifact {path}: {exc}") from exc


def load_csv(path) -> tuple[list[str], list[list[str]]]:
    with open(path, encoding="utf-8") as fh:
        lines = [line.rstrip("\n") for line in fh if line.strip()]
    header = lines[0].split(",")
    return header, [line.split(",") for line in lines[1:]]


def _config_doc(report: ExperimentReport) -> dict:
    config = report.config
    return {
        "data": dataclasses.asdict(config.data),
        "true_model": dataclasses.asdict(config.true_model),
        "predictive": config.predictive,
        "methods": [{"name": m.name, **m.options} for m in config.methods],
        "run": dataclasses.asdict(config.run),
    }


def emit_results(report: ExperimentReport, output_dir, partial: bool = False) -> dict:
    """Write all artifacts; returns {artifact name: path}."""
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {}

    rows = []
    for method in report.methods:
        phi = method.explanation.phi
        n_obs = phi.shape[1]
        for obs in range(n_obs):
            for feature in range(phi.shape[0]):
                rows.append([method.name, str(obs), str(feature), _fmt(phi[feature, obs])])
    paths["shapley_values"] = out / "shapley_values.csv"
    _write_csv(paths["shapley_values"], ["method", "observation", "feature", "phi"], rows)

    rows = []
    if report.oracle is not None:
        for method in report.methods:
            for obs, value in enumerate(method.mae_per_obs):
                rows.append([method.name, str(obs), _fmt(value)])
    paths["mae"] = out / "mae.csv"
    _write_csv(paths["mae"], ["method", "observation", "mae"], rows)

    rows = []
    for method in report.methods:
        rows.append([
            method.name,
            method.klass,
            _fmt(method.mae_overall) if method.mae_overall is not None else "",
            _fmt(method.mse_v),
            _fmt(method.timings.get("training", 0.0)),
            _fmt(method.timings.get("generating", 0.0)),
            _fmt(method.timings.get("predicting", 0.0)),
        ])
    paths["summary"] = out / "summary.csv"
    _write_csv(paths["summary"],
               ["method", "class", "mae", "mse_v", "t_train", "t_generate", "t_predict"],
               rows)

    manifest = {
        "config": _config_doc(report),
        "partial": partial or bool(report.failures),
        "failures": report.failures,
        "timing_mode": report.timing_mode,
        "phi0": report.phi0,
        "wall_seconds": report.wall_seconds,
        "max_efficiency_gap": {m.name: m.max_efficiency_gap for m in report.methods},
        "predictive_summary": report.predictive_summary,
        "versions": {
            "shapcond": __version__,
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "scikit-learn": sklearn.__version__,
            "python": platform.python_version(),
        },
    }
    paths["manifest"] = out / "manifest.json"
    with open(paths["manifest"], "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")

    summaries = {m.name: m.model_summary for m in report.methods
                 if m.model_summary is not None}
    if summaries:
        paths["models"] = out / "regression_models.json"
        with open(paths["models"], "w", encoding="utf-8") as fh:
            json.dump(summaries, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return paths
