"""Surrogate regression: one model over mask-augmented inputs.

Every training observation is replicated once per nontrivial coalition as
[x o I(S), I(Sbar)] (observed values with zeros in the masked slots, then
the mask bits, 1 = unobserved), with the response f(x) repeated.  A single
regressor over these 2M columns then predicts v(S, x*) for any coalition
by augmenting x* the same way.  Mask bits enter as numeric 0/1 columns.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..coalitions import Coalition, nontrivial_coalitions
from ..errors import RowCapExceededError
from ..shapley import ContributionMatrix
from .fitting import fit_regressor
from .specs import RegressorSpec

__all__ = ["AugmentedDataset", "build_augmented", "augment_points", "fit_surrogate",
           "SurrogateModel", "predict_v_surrogate", "DEFAULT_ROW_CAP"]

DEFAULT_ROW_CAP = 4_000_000


@dataclass
class AugmentedDataset:
    x_aug: np.ndarray
    z_aug: np.ndarray
    n_obs: int
    m: int

    @property
    def n_rows(self) -> int:
        return self.x_aug.shape[0]

    def row_origin(self, row: int) -> tuple[int, Coalition]:
        """(observation index, coalition) that produced an augmented row."""
        n_coal = (1 << self.m) - 2
        obs, pos = divmod(row, n_coal)
        return obs, nontrivial_coalitions(self.m)[pos]


def _check_row_cap(n_obs: int, m: int, row_cap: int | None) -> None:
    cap = DEFAULT_ROW_CAP if row_cap is None else row_cap
    n_rows = n_obs * ((1 << m) - 2)
    if n_rows > cap:
        raise RowCapExceededError(
            f"augmented design would have {n_rows:,} rows "
            f"(N={n_obs} x (2^{m}-2)), exceeding the row cap of {cap:,}; "
            "lower N/M or raise the cap if you really have the memory")


def augment_points(x: np.ndarray, m: int) -> np.ndarray:
    """Augmented rows for given observations, coalition-major within each
    observation, matching the training layout."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    coalitions = nontrivial_coalitions(m)
    n_coal = len(coalitions)
    masks = np.stack([c.indicator() for c in coalitions])          # 1 = observed
    out = np.zeros((x.shape[0] * n_coal, 2 * m))
    for i, row in enumerate(x):
        block = slice(i * n_coal, (i + 1) * n_coal)
        out[block, :m] = row * masks
        out[block, m:] = 1 - masks
    return out


def build_augmented(x_train: np.ndarray, f, row_cap: int | None = None,
                    z: np.ndarray | None = None) -> AugmentedDataset:
    x_train = np.atleast_2d(np.asarray(x_train, dtype=float))
    n, m = x_train.shape
    _check_row_cap(n, m, row_cap)
    if z is None:
        z = np.asarray(f(x_train), dtype=float).ravel()
    n_coal = (1 << m) - 2
    x_aug = augment_points(x_train, m)
    z_aug = np.repeat(z, n_coal)
    return AugmentedDataset(x_aug=x_aug, z_aug=z_aug, n_obs=n, m=m)


@dataclass
class SurrogateModel:
    m: int
    spec: RegressorSpec
    model: object

    def summary(self) -> dict:
        return {"kind": self.spec.label, "model": self.model.summary()}


class _MaskLinearBasisModel:
    """Basis-expansion surrogate: full expansion over the value columns,
    the mask bits enter linearly (never inside polynomial/interaction terms)."""

    def __init__(self, spec: RegressorSpec, m: int):
        from .linear import basis_terms
        value_terms = basis_terms(spec.kind, m, spec.degree, spec.order)
        mask_terms = [((m + j, 1),) for j in range(m)]
        self.terms = value_terms + mask_terms
        self.coef: np.ndarray | None = None

    def _design(self, x: np.ndarray) -> np.ndarray:
        from .linear import design_matrix
        return design_matrix(x, self.terms)

    def fit(self, x, z):
        import numpy.linalg as npl
        design = self._design(x)
        z = np.asarray(z, dtype=float).ravel()
        coef, _, rank, _ = npl.lstsq(design, z, rcond=None)
        if rank < design.shape[1]:
            gram = design.T @ design + 1e-8 * np.eye(design.shape[1])
            coef = npl.solve(gram, design.T @ z)
        self.coef = coef
        return self

    def predict(self, x):
        return self._design(x) @ self.coef

    @property
    def n_params(self) -> int:
        return len(self.terms) + 1

    def summary(self) -> dict:
        return {"n_params": self.n_params}


def fit_surrogate(spec: RegressorSpec, aug: AugmentedDataset) -> SurrogateModel:
    if spec.kind in ("poly", "lm_inter", "poly_inter"):
        model = _MaskLinearBasisModel(spec, aug.m).fit(aug.x_aug, aug.z_aug)
    else:
        model = fit_regressor(spec, aug.x_aug, aug.z_aug)
    return SurrogateModel(m=aug.m, spec=spec, model=model)


def predict_v_surrogate(surrogate: SurrogateModel, x_test: np.ndarray, phi0: float,
                        f) -> ContributionMatrix:
    x_test = np.atleast_2d(np.asarray(x_test, dtype=float))
    m = surrogate.m
    n_coal = (1 << m) - 2
    preds = np.asarray(surrogate.model.predict(augment_points(x_test, m))).ravel()
    values = np.empty((1 << m, x_test.shape[0]))
    values[0] = phi0
    values[-1] = np.asarray(f(x_test), dtype=float).ravel()
    values[1:-1] = preds.reshape(x_test.shape[0], n_coal).T
    return ContributionMatrix(values=values, m=m)
