"""Fitting any RegressorSpec to (X, z) data.

Cross-validation uses deterministic folds: row indices are shuffled once
under a fixed seed and assigned round-robin.  kNN tunes k over a small
grid; CART grows a variance-reduction tree at a fixed complexity threshold
and then prunes by cross-validated cost-complexity; PPR tunes the number
of ridge terms along its forward path.
"""

from __future__ import annotations

import numpy as np
from sklearn.neighbors import KNeighborsRegressor
from sklearn.tree import DecisionTreeRegressor

from ..numerics import substream
from .linear import LinearBasisModel
from .ppr import PPRModel, ppr_fit, ppr_fit_path
from .specs import RegressorSpec

__all__ = ["fit_regressor", "cv_folds"]


def cv_folds(n: int, folds: int, seed: int) -> np.ndarray:
    """fold id per row: shuffled round-robin, deterministic in the seed."""
    perm = substream(seed, "cv-folds").permutation(n)
    fold_id = np.empty(n, dtype=int)
    fold_id[perm] = np.arange(n) % folds
    return fold_id


class KnnModel:
    def __init__(self, k: int, cv_mse: float | None = None):
        self.k = k
        self.cv_mse = cv_mse
        self._est = KNeighborsRegressor(n_neighbors=k)

    def fit(self, x, z):
        self._est.fit(np.atleast_2d(x), np.asarray(z, dtype=float).ravel())
        return self

    def predict(self, x):
        return self._est.predict(np.atleast_2d(x))

    def summary(self) -> dict:
        return {"k": self.k, "cv_mse": self.cv_mse}


def _fit_knn(spec: RegressorSpec, x, z) -> KnnModel:
    x = np.atleast_2d(x)
    n = x.shape[0]
    if spec.k is not None:
        return KnnModel(k=spec.k).fit(x, z)
    folds = min(spec.cv_folds, n)
    fold_id = cv_folds(n, folds, spec.cv_seed)
    min_train = min(np.sum(fold_id != f) for f in range(folds))
    grid = [k for k in spec.knn_grid if k <= min_train]
    if not grid:
        grid = [max(1, min_train)]
    best_k, best_mse = grid[0], np.inf
    z = np.asarray(z, dtype=float).ravel()
    for k in grid:
        errs = []
        for f in range(folds):
            tr, va = fold_id != f, fold_id == f
            pred = KNeighborsRegressor(n_neighbors=k).fit(x[tr], z[tr]).predict(x[va])
            errs.append(np.mean((pred - z[va]) ** 2))
        mse = float(np.mean(errs))
        if mse < best_mse:
            best_k, best_mse = k, mse
    return KnnModel(k=best_k, cv_mse=best_mse).fit(x, z)


class CartModel:
    def __init__(self, est: DecisionTreeRegressor, ccp_alpha: float,
                 cv_mse: float | None = None):
        self._est = est
        self.ccp_alpha = ccp_alpha
        self.cv_mse = cv_mse

    def predict(self, x):
        return self._est.predict(np.atleast_2d(x))

    def summary(self) -> dict:
        return {"ccp_alpha": self.ccp_alpha, "n_leaves": int(self._est.get_n_leaves()),
                "cv_mse": self.cv_mse}


def _grow_params(spec: RegressorSpec, z: np.ndarray) -> dict:
    # cp * Var(z) mirrors the relative-deviance split threshold of the
    # reference tree grower
    return dict(min_impurity_decrease=spec.cart_cp * float(np.var(z)),
                min_samples_split=20, min_samples_leaf=7, random_state=0)


def _fit_cart(spec: RegressorSpec, x, z) -> CartModel:
    x = np.atleast_2d(x)
    z = np.asarray(z, dtype=float).ravel()
    grow = _grow_params(spec, z)
    full = DecisionTreeRegressor(**grow).fit(x, z)
    path = full.cost_complexity_pruning_path(x, z)
    alphas = np.unique(path.ccp_alphas)
    alphas = alphas[alphas >= 0]
    if alphas.size > spec.cart_cv_alphas:
        qs = np.linspace(0.0, 1.0, spec.cart_cv_alphas)
        alphas = np.unique(np.quantile(alphas, qs))
    if alphas.size <= 1:
        return CartModel(full, ccp_alpha=0.0)
    n = x.shape[0]
    folds = min(spec.cv_folds, n)
    fold_id = cv_folds(n, folds, spec.cv_seed)
    best_alpha, best_mse = 0.0, np.inf
    for alpha in alphas:
        errs = []
        for f in range(folds):
            tr, va = fold_id != f, fold_id == f
            est = DecisionTreeRegressor(ccp_alpha=float(alpha), **grow).fit(x[tr], z[tr])
            errs.append(np.mean((est.predict(x[va]) - z[va]) ** 2))
        mse = float(np.mean(errs))
        if mse < best_mse:
            best_alpha, best_mse = float(alpha), mse
    est = DecisionTreeRegressor(ccp_alpha=best_alpha, **grow).fit(x, z)
    return CartModel(est, ccp_alpha=best_alpha, cv_mse=best_mse)


class PprCvModel:
    def __init__(self, model: PPRModel, n_terms: int, cv_mse: float | None):
        self._model = model
        self.n_terms = n_terms
        self.cv_mse = cv_mse

    def predict(self, x):
        return self._model.predict(x)

    def summary(self) -> dict:
        return {"n_terms": self.n_terms, "cv_mse": self.cv_mse}


def _fit_ppr_cv(spec: RegressorSpec, x, z) -> PprCvModel:
    x = np.atleast_2d(x)
    z = np.asarray(z, dtype=float).ravel()
    n, m = x.shape
    max_terms = min(m, spec.ppr_max_terms)
    folds = min(spec.cv_folds, n)
    fold_id = cv_folds(n, folds, spec.cv_seed)
    cv_mse = np.zeros(max_terms + 1)
    for f in range(folds):
        tr, va = fold_id != f, fold_id == f
        pathm = ppr_fit_path(x[tr], z[tr], max_terms, seed=spec.cv_seed)
        for n_terms, model in enumerate(pathm):
            cv_mse[n_terms] += np.mean((model.predict(x[va]) - z[va]) ** 2) / folds
    best_l = int(np.argmin(cv_mse[1:]) + 1)  # at least one term
    final = ppr_fit(x, z, best_l, seed=spec.cv_seed)
    return PprCvModel(final, n_terms=best_l, cv_mse=float(cv_mse[best_l]))


def fit_regressor(spec: RegressorSpec, x: np.ndarray, z: np.ndarray):
    """Fitted model with .predict(X) and .summary(); dispatches on spec.kind."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    z = np.asarray(z, dtype=float).ravel()
    if x.shape[0] < 2:
        raise ValueError("need at least 2 observations to fit a regressor")
    if spec.kind in ("lm", "poly", "lm_inter", "poly_inter"):
        return LinearBasisModel(spec, x.shape[1]).fit(x, z)
    if spec.kind == "knn":
        return _fit_knn(spec, x, z)
    if spec.kind == "cart":
        return _fit_cart(spec, x, z)
    if spec.kind == "ppr_cv":
        return _fit_ppr_cv(spec, x, z)
    if spec.kind == "ppr_fixed":
        if spec.terms is None:
            raise ValueError("ppr_fixed needs an explicit number of terms here")
        return ppr_fit(x, z, spec.terms, seed=spec.cv_seed)
    raise AssertionError(f"unhandled kind {spec.kind}")
