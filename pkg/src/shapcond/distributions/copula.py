"""Gaussian copula with empirical margins.

Fitting transforms each margin to normal scores v_j = Phi^{-1}(F_j(x_j))
and estimates a Gaussian on the transformed data.  Conditional sampling
runs the three-step procedure: transform the conditioning values, sample
the Gaussian conditional in v-space, and map each margin back through the
empirical quantile function.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr, ndtri

from ..coalitions import Coalition
from ..numerics import EmpiricalMargin, empirical_margin_fit
from .gaussian import GaussianConditioner, GaussianParams, gaussian_fit

__all__ = ["CopulaModel", "copula_fit", "copula_conditional_sample", "CopulaConditioner"]


@dataclass(frozen=True)
class CopulaModel:
    margins: tuple[EmpiricalMargin, ...]
    gauss: GaussianParams

    @property
    def dim(self) -> int:
        return len(self.margins)

    def to_normal_scores(self, x: np.ndarray, idx=None) -> np.ndarray:
        x = np.atleast_2d(np.asarray(x, dtype=float))
        idx = range(self.dim) if idx is None else idx
        cols = [ndtri(self.margins[j].cdf(x[:, k])) for k, j in enumerate(idx)]
        return np.column_stack(cols)

    def from_normal_scores(self, v: np.ndarray, idx=None) -> np.ndarray:
        v = np.atleast_2d(np.asarray(v, dtype=float))
        idx = range(self.dim) if idx is None else idx
        cols = [self.margins[j].quantile(ndtr(v[:, k])) for k, j in enumerate(idx)]
        return np.column_stack(cols)


def copula_fit(x: np.ndarray) -> CopulaModel:
    x = np.atleast_2d(np.asarray(x, dtype=float))
    margins = tuple(empirical_margin_fit(x[:, j]) for j in range(x.shape[1]))
    v = np.column_stack([ndtri(m.cdf(x[:, j])) for j, m in enumerate(margins)])
    return CopulaModel(margins=margins, gauss=gaussian_fit(v))


class CopulaConditioner:
    """Per-coalition v-space conditioner, reusable across observations."""

    def __init__(self, model: CopulaModel, coalition: Coalition):
        self.model = model
        self.coalition = coalition
        self.gauss_cond = GaussianConditioner(model.gauss, coalition)
        self.s_idx = coalition.members()
        self.sbar_idx = coalition.complement().members()

    def sample(self, x_s: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
        v_s = self.model.to_normal_scores(np.asarray(x_s)[None, :], self.s_idx)[0]
        v_draws = self.gauss_cond.sample(v_s, k, rng)
        return self.model.from_normal_scores(v_draws, self.sbar_idx)


def copula_conditional_sample(model: CopulaModel, coalition: Coalition, x_s: np.ndarray,
                              k: int, rng: np.random.Generator) -> np.ndarray:
    """k conditional draws of the unobserved features on the original scale."""
    return CopulaConditioner(model, coalition).sample(x_s, k, rng)
