"""Separate regression: one model g_S per nontrivial coalition.

Training targets are the model predictions z = f(X), computed once and
shared across all coalition fits; g_S regresses z on the coalition's
columns and directly estimates the contribution function at x*.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from ..coalitions import nontrivial_coalitions
from ..errors import ShapcondError
from ..shapley import ContributionMatrix
from .fitting import fit_regressor
from .specs import RegressorSpec

__all__ = ["SeparateModelSet", "fit_separate", "predict_v_separate"]


@dataclass
class SeparateModelSet:
    m: int
    spec: RegressorSpec
    models: dict  # coalition bits -> fitted regressor

    def summary(self) -> dict:
        sizes = {}
        for coalition in nontrivial_coalitions(self.m):
            sizes[str(coalition)] = self.models[coalition.bits].summary()
        return {"kind": self.spec.label, "per_coalition": sizes}


def fit_separate(spec: RegressorSpec, x_train: np.ndarray, f,
                 z: np.ndarray | None = None) -> SeparateModelSet:
    """Fit g_S for every nontrivial coalition; f is called once in total."""
    x_train = np.atleast_2d(np.asarray(x_train, dtype=float))
    m = x_train.shape[1]
    if z is None:
        z = np.asarray(f(x_train), dtype=float).ravel()
    models = {}
    for coalition in nontrivial_coalitions(m):
        spec_c = spec
        if spec.kind == "ppr_fixed" and spec.terms is None:
            spec_c = replace(spec, terms=coalition.size)
        try:
            models[coalition.bits] = fit_regressor(spec_c, x_train[:, coalition.members()], z)
        except Exception as exc:
            raise ShapcondError(f"separate fit failed for coalition {coalition}: {exc}") from exc
    return SeparateModelSet(m=m, spec=spec, models=models)


def predict_v_separate(model_set: SeparateModelSet, x_test: np.ndarray, phi0: float,
                       f) -> ContributionMatrix:
    """Contribution matrix with the empty/full rows pinned to phi0 and f(x*)."""
    x_test = np.atleast_2d(np.asarray(x_test, dtype=float))
    m = model_set.m
    values = np.empty((1 << m, x_test.shape[0]))
    values[0] = phi0
    values[-1] = np.asarray(f(x_test), dtype=float).ravel()
    for row, coalition in enumerate(nontrivial_coalitions(m), start=1):
        g = model_set.models[coalition.bits]
        values[row] = np.asarray(g.predict(x_test[:, coalition.members()])).ravel()
    return ContributionMatrix(values=values, m=m)
