"""Experiment configuration: one declarative TOML document per run.

Every stochastic component is keyed off the single explicit seed; there is
no wall-clock seeding anywhere, so a config file identifies its outputs
exactly.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from ..errors import ConfigError, RowCapExceededError
from ..regression.surrogate import DEFAULT_ROW_CAP
from ..sim import DataSpec, TrueModelSpec
from ..sim.predictive import PREDICTIVE_KINDS

__all__ = ["MethodConfig", "RunConfig", "ExperimentConfig", "load_config"]


@dataclass(frozen=True)
class MethodConfig:
    name: str
    options: dict = field(default_factory=dict)

    def option(self, key, default=None):
        return self.options.get(key, default)


@dataclass(frozen=True)
class RunConfig:
    k: int = 250
    oracle: bool = True
    oracle_k: int = 10_000
    output_dir: str = "results"
    row_cap: int = DEFAULT_ROW_CAP
    threads: int = 1
    dump_samples: bool = False
    large_constant: float = 1e6


@dataclass(frozen=True)
class ExperimentConfig:
    data: DataSpec
    true_model: TrueModelSpec
    predictive: str
    methods: tuple
    run: RunConfig

    def __post_init__(self):
        if not self.methods:
            raise ConfigError("at least one method must be configured")
        if self.predictive not in PREDICTIVE_KINDS:
            raise ConfigError(f"unknown predictive model {self.predictive!r}")
        from .methods import validate_method_names
        validate_method_names(self.methods)
        self._check_row_cap()

    def _check_row_cap(self):
        from .methods import is_surrogate
        if not any(is_surrogate(m.name) for m in self.methods):
            return
        n_rows = self.data.n_train * ((1 << self.data.m) - 2)
        if n_rows > self.run.row_cap:
            raise RowCapExceededError(
                f"surrogate methods require an augmented design of {n_rows:,} rows "
                f"(N_train={self.data.n_train} x (2^{self.data.m}-2)), which exceeds "
                f"the row cap of {self.run.row_cap:,}; reduce N_train or M, drop the "
                "surrogate methods, or raise run.row_cap explicitly")


def _build(doc: dict, seed_override: int | None = None,
           output_override: str | None = None,
           threads_override: int | None = None) -> ExperimentConfig:
    try:
        data_doc = dict(doc.get("data", {}))
        if seed_override is not None:
            data_doc["seed"] = seed_override
        if "seed" not in data_doc:
            raise ConfigError("data.seed must be set explicitly (no wall-clock seeding)")
        data = DataSpec(**data_doc)

        tm_doc = dict(doc.get("true_model", {}))
        for key in ("beta", "gamma"):
            if key in tm_doc:
                tm_doc[key] = tuple(tm_doc[key])
        true_model = TrueModelSpec(**tm_doc)

        predictive = doc.get("predictive", {}).get("kind", "lm_formula")

        methods = []
        for m_doc in doc.get("methods", []):
            m_doc = dict(m_doc)
            name = m_doc.pop("name", None)
            if name is None:
                raise ConfigError("every [[methods]] table needs a name")
            methods.append(MethodConfig(name=name, options=m_doc))

        run_doc = dict(doc.get("run", {}))
        if output_override is not None:
            run_doc["output_dir"] = output_override
        if threads_override is not None:
            run_doc["threads"] = threads_override
        elif "threads" not in run_doc and os.environ.get("SHAPCOND_THREADS"):
            run_doc["threads"] = int(os.environ["SHAPCOND_THREADS"])
        run = RunConfig(**run_doc)
    except TypeError as exc:
        raise ConfigError(f"bad configuration key: {exc}") from exc

    return ExperimentConfig(data=data, true_model=true_model, predictive=predictive,
                            methods=tuple(methods), run=run)


def load_config(path, seed_override: int | None = None, output_override: str | None = None,
                threads_override: int | None = None) -> ExperimentConfig:
    with open(path, "rb") as fh:
        doc = tomllib.load(fh)
    return _build(doc, seed_override, output_override, threads_override)


def config_from_dict(doc: dict, **overrides) -> ExperimentConfig:
    return _build(doc, **overrides)
