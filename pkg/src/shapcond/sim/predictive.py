"""Predictive models fitted to the simulated responses.

The oracle-basis linear model regresses y on the true surface's own basis
functions (cosines, linear terms, interaction blocks), mirroring a modeler
who knows the functional form.  The black-box alternatives (ppr, cart,
knn) are tuned by cross-validation on the raw features.
"""

from __future__ import annotations

import numpy as np

from ..errors import ConfigError
from ..regression import RegressorSpec, fit_regressor
from .truemodels import TrueModelSpec, pair_interaction

__all__ = ["PREDICTIVE_KINDS", "TrueBasisLm", "fit_predictive_model"]

PREDICTIVE_KINDS = ("lm_formula", "oracle_basis_lm", "ppr", "cart", "knn")


class TrueBasisLm:
    """OLS on the basis functions of a known response design."""

    def __init__(self, true_model: TrueModelSpec):
        self.true_model = true_model
        self.coef: np.ndarray | None = None

    def _design(self, x: np.ndarray) -> np.ndarray:
        x = np.atleast_2d(np.asarray(x, dtype=float))
        m = x.shape[1]
        spec = self.true_model
        n_cos = min(spec.n_cos_terms, m)
        cols = [np.ones(x.shape[0])]
        for j in range(m):
            cols.append(np.cos(x[:, j]) if j < n_cos else x[:, j])
        for i, j in spec.interaction_pairs:
            if j >= m:
                continue
            if spec.uses_products_only:
                cols.append(x[:, i] * x[:, j])
            else:
                cols.append(pair_interaction(x[:, i], x[:, j]))
        return np.column_stack(cols)

    def fit(self, x: np.ndarray, y: np.ndarray) -> "TrueBasisLm":
        design = self._design(x)
        self.coef, *_ = np.linalg.lstsq(design, np.asarray(y, dtype=float).ravel(),
                                        rcond=None)
        return self

    def predict(self, x: np.ndarray) -> np.ndarray:
        return self._design(x) @ self.coef

    def summary(self) -> dict:
        return {"kind": "oracle_basis_lm", "n_params": int(self.coef.size)}


def fit_predictive_model(kind: str, x_train: np.ndarray, y_train: np.ndarray,
                         true_model: TrueModelSpec | None = None):
    """Fitted model exposing .predict on (n, M) matrices."""
    if kind in ("lm_formula", "oracle_basis_lm"):
        if true_model is None:
            raise ConfigError(f"{kind} needs the true-model design")
        return TrueBasisLm(true_model).fit(x_train, y_train)
    if kind == "ppr":
        return fit_regressor(RegressorSpec("ppr_cv"), x_train, y_train)
    if kind == "cart":
        return fit_regressor(RegressorSpec("cart"), x_train, y_train)
    if kind == "knn":
        return fit_regressor(RegressorSpec("knn"), x_train, y_train)
    raise ConfigError(f"unknown predictive model kind {kind!r}; "
                      f"expected one of {PREDICTIVE_KINDS}")
