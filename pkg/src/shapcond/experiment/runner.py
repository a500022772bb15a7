"""Experiment orchestration: data, model, truth oracle, methods, metrics."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..shapley import ContributionMatrix, ShapleyExplanation, ShapleySolver
from ..sim import (fit_predictive_model, gen_data, mae_metric, mse_v_metric,
                   true_contribution_matrix)
from .config import ExperimentConfig
from .methods import run_method
from .timing import PhaseTimer

__all__ = ["MethodReport", "ExperimentReport", "run_experiment"]


@dataclass
class _Context:
    x_train: np.ndarray
    x_test: np.ndarray
    z_train: np.ndarray
    f: object
    phi0: float
    m: int
    seed: int
    k: int
    threads: int
    row_cap: int
    dump_dir: str | None = None


@dataclass
class MethodReport:
    name: str
    klass: str
    v: ContributionMatrix
    explanation: ShapleyExplanation
    timings: dict
    max_efficiency_gap: float
    mae_overall: float | None = None
    mae_per_obs: np.ndarray | None = None
    mse_v: float = np.nan
    model_summary: dict | None = None


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    methods: list
    oracle: ShapleyExplanation | None
    oracle_v: ContributionMatrix | None
    f_test: np.ndarray
    phi0: float
    timing_mode: str
    wall_seconds: float
    loop_seconds: float = 0.0
    failures: dict = field(default_factory=dict)
    predictive_summary: dict = field(default_factory=dict)

    def method(self, name: str) -> MethodReport:
        for report in self.methods:
            if report.name == name:
                return report
        raise KeyError(name)


def run_experiment(config: ExperimentConfig) -> ExperimentReport:
    t_start = time.perf_counter()
    data = gen_data(config.data, config.true_model)
    model = fit_predictive_model(config.predictive, data.x_train, data.y_train,
                                 config.true_model)
    f = model.predict
    z_train = np.asarray(f(data.x_train), dtype=float).ravel()
    phi0 = float(z_train.mean())
    f_test = np.asarray(f(data.x_test), dtype=float).ravel()

    dump_dir = None
    if config.run.dump_samples:
        dump_dir = str(Path(config.run.output_dir) / "samples")
    ctx = _Context(x_train=data.x_train, x_test=data.x_test, z_train=z_train, f=f,
                   phi0=phi0, m=config.data.m, seed=config.data.seed, k=config.run.k,
                   threads=config.run.threads, row_cap=config.run.row_cap,
                   dump_dir=dump_dir)

    solver = ShapleySolver(config.data.m, config.run.large_constant)

    oracle_v = oracle = None
    if config.run.oracle:
        oracle_v = true_contribution_matrix(f, config.data, data.x_test, phi0,
                                            k=config.run.oracle_k, seed=config.data.seed)
        oracle = solver.solve(oracle_v)

    requested_mode = "cpu" if config.run.threads <= 1 else "wall"
    timing_mode = PhaseTimer(mode=requested_mode).mode  # may degrade to wall
    loop_clock = time.process_time if timing_mode == "cpu" else time.perf_counter
    reports = []
    failures: dict[str, str] = {}
    loop_start = loop_clock()
    for method in config.methods:
        timer = PhaseTimer(mode=timing_mode)
        try:
            output = run_method(method, ctx, timer)
            with timer.phase("predicting"):
                explanation = solver.solve(output.v)
        except Exception as exc:  # keep the run going; flag in the manifest
            failures[method.name] = f"{type(exc).__name__}: {exc}"
            continue
        gaps = np.abs(explanation.efficiency_gap(output.v))
        report = MethodReport(
            name=output.name, klass=output.klass, v=output.v, explanation=explanation,
            timings=dict(timer.totals), max_efficiency_gap=float(np.max(gaps)),
            mse_v=mse_v_metric(f_test, output.v), model_summary=output.model_summary)
        if oracle is not None:
            report.mae_overall, report.mae_per_obs = mae_metric(oracle, explanation)
        reports.append(report)
    loop_seconds = loop_clock() - loop_start

    summary = model.summary() if hasattr(model, "summary") else {}
    return ExperimentReport(config=config, methods=reports, oracle=oracle,
                            oracle_v=oracle_v, f_test=f_test, phi0=phi0,
                            timing_mode=timing_mode,
                            wall_seconds=time.perf_counter() - t_start,
                            loop_seconds=loop_seconds, failures=failures,
                            predictive_summary=summary)
