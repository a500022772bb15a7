"""Registry of estimation methods available to experiment configs.

Method classes mirror the benchmark taxonomy: independence, empirical,
parametric, generative, separate regression and surrogate regression.
Each entry knows how to produce a ContributionMatrix for the test set,
attributing its work to the training / generating / predicting phases.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ConfigError
from ..regression import (RegressorSpec, build_augmented, fit_separate, fit_surrogate,
                          predict_v_separate, predict_v_surrogate)
from ..samplers import (BurrSampler, CopulaSampler, CtreeSampler, EmpiricalSampler, GaussianSampler,
                        GHSampler, IndependenceSampler, contribution_matrix)
from ..shapley import ContributionMatrix

__all__ = ["METHOD_CLASSES", "method_class", "is_surrogate", "is_regression",
           "validate_method_names", "list_methods", "run_method"]

_SAMPLERS = {
    "independence": ("independence", IndependenceSampler),
    "empirical": ("empirical", EmpiricalSampler),
    "gaussian": ("parametric", GaussianSampler),
    "copula": ("parametric", CopulaSampler),
    "burr": ("parametric", BurrSampler),
    "gh": ("parametric", GHSampler),
    "ctree": ("generative", CtreeSampler),
}

_REGRESSORS = ("lm", "poly", "lm_inter", "poly_inter", "knn", "cart", "ppr", "ppr_fixed")

METHOD_CLASSES = ("independence", "empirical", "parametric", "generative",
                  "separate", "surrogate")


def _split_regression_name(name: str):
    for suffix, paradigm in (("_separate", "separate"), ("_surrogate", "surrogate")):
        if name.endswith(suffix):
            base = name[: -len(suffix)]
            if base in _REGRESSORS:
                return base, paradigm
    return None


def method_class(name: str) -> str:
    if name in _SAMPLERS:
        return _SAMPLERS[name][0]
    split = _split_regression_name(name)
    if split is not None:
        return split[1]
    raise ConfigError(f"unknown method {name!r}; see `shapcond list-methods`")


def is_surrogate(name: str) -> bool:
    return method_class(name) == "surrogate"


def is_regression(name: str) -> bool:
    return method_class(name) in ("separate", "surrogate")


def validate_method_names(methods) -> None:
    seen = set()
    for m in methods:
        method_class(m.name)
        if m.name in seen:
            raise ConfigError(f"method {m.name!r} configured twice")
        seen.add(m.name)


def list_methods() -> list[tuple[str, str]]:
    names = [(name, klass) for name, (klass, _) in _SAMPLERS.items()]
    for base in _REGRESSORS:
        names.append((f"{base}_separate", "separate"))
        names.append((f"{base}_surrogate", "surrogate"))
    return names


def _regressor_spec(base: str, options: dict) -> RegressorSpec:
    kind = {"ppr": "ppr_cv"}.get(base, base)
    keys = ("degree", "order", "k", "terms", "cv_folds", "cv_seed", "knn_grid",
            "ppr_max_terms", "cart_cp", "cart_cv_alphas")
    kwargs = {key: options[key] for key in keys if key in options}
    if "knn_grid" in kwargs:
        kwargs["knn_grid"] = tuple(kwargs["knn_grid"])
    return RegressorSpec(kind=kind, **kwargs)


def _build_sampler(name: str, x_train: np.ndarray, options: dict, seed: int):
    cls = _SAMPLERS[name][1]
    if name == "empirical":
        kwargs = {k: options[k] for k in ("sigma", "eta") if k in options}
        return cls(x_train, **kwargs)
    if name == "ctree":
        kwargs = {k: options[k] for k in ("alpha", "minbucket") if k in options}
        return cls(x_train, **kwargs)
    if name in ("burr", "gh"):
        kwargs = {k: options[k] for k in ("n_starts", "max_iter") if k in options}
        return cls(x_train, seed=seed, **kwargs)
    return cls(x_train)


@dataclass
class MethodOutput:
    name: str
    klass: str
    v: ContributionMatrix
    model_summary: dict | None = None


def _dump_first_observation(sampler, ctx, k: int) -> None:
    """Reproduce and store the first test observation's conditional samples.

    Substreams make the re-draw identical to what the estimator consumed,
    so the dumped sets can be reused across runs.
    """
    from pathlib import Path

    from ..coalitions import nontrivial_coalitions
    from ..numerics import substream
    from ..samplers import dump_samples_csv

    out = Path(ctx.dump_dir) / sampler.name
    out.mkdir(parents=True, exist_ok=True)
    x_star = ctx.x_test[0]
    for coalition in nontrivial_coalitions(ctx.m):
        rng = substream(ctx.seed, sampler.name, coalition.bits, 0)
        ws = sampler.draw(coalition, x_star, k, rng)
        dump_samples_csv(out / f"coalition_{coalition.bits:03d}.csv", coalition, ws)


def run_method(method, ctx, timer) -> MethodOutput:
    """Compute the contribution matrix for one configured method.

    ``ctx`` carries the shared experiment state (data, model, phi0, run
    parameters); ``timer`` receives the phase attribution.
    """
    name, options = method.name, method.options
    klass = method_class(name)
    k = int(options.get("K", ctx.k))

    if name in _SAMPLERS:
        with timer.phase("training"):
            sampler = _build_sampler(name, ctx.x_train, options, ctx.seed)
        v = contribution_matrix(ctx.f, sampler, ctx.x_test, ctx.m, k, ctx.phi0,
                                ctx.seed, timer=timer, threads=ctx.threads)
        if ctx.dump_dir is not None:
            _dump_first_observation(sampler, ctx, k)
        summary = None
        if name in ("burr", "gh"):
            summary = {"converged": bool(sampler.params.converged)}
        return MethodOutput(name=name, klass=klass, v=v, model_summary=summary)

    base, paradigm = _split_regression_name(name)
    spec = _regressor_spec(base, options)
    if paradigm == "separate":
        with timer.phase("training"):
            model_set = fit_separate(spec, ctx.x_train, ctx.f, z=ctx.z_train)
        with timer.phase("predicting"):
            v = predict_v_separate(model_set, ctx.x_test, ctx.phi0, ctx.f)
        return MethodOutput(name=name, klass=klass, v=v, model_summary=model_set.summary())

    with timer.phase("training"):
        aug = build_augmented(ctx.x_train, ctx.f, row_cap=ctx.row_cap, z=ctx.z_train)
        surrogate = fit_surrogate(spec, aug)
    with timer.phase("predicting"):
        v = predict_v_surrogate(surrogate, ctx.x_test, ctx.phi0, ctx.f)
    return MethodOutput(name=name, klass=klass, v=v, model_summary=surrogate.summary())
