"""Samplers backed by fitted parametric families.

Each sampler fits the joint distribution once, caches whatever per-coalition
factorization is reusable, and draws K unit-weight conditional samples.
"""

from __future__ import annotations

import numpy as np

from ..coalitions import Coalition, nontrivial_coalitions
from ..distributions import (CopulaConditioner, GaussianConditioner, burr_conditional,
                             burr_fit, burr_sample, copula_fit, gaussian_fit, gh_conditional,
                             gh_fit, gh_sample)
from .base import ConditionalSampler, WeightedSamples

__all__ = ["GaussianSampler", "CopulaSampler", "BurrSampler", "GHSampler"]


class GaussianSampler(ConditionalSampler):
    name = "gaussian"

    def __init__(self, x_train: np.ndarray, params=None):
        self.params = gaussian_fit(x_train) if params is None else params
        self._cond = {c.bits: GaussianConditioner(self.params, c)
                      for c in nontrivial_coalitions(self.params.dim)}

    def draw(self, coalition: Coalition, x_star: np.ndarray, k: int,
             rng: np.random.Generator) -> WeightedSamples:
        cond = self._cond[coalition.bits]
        draws = cond.sample(np.asarray(x_star)[coalition.members()], k, rng)
        return WeightedSamples(samples=draws, weights=np.ones(k))


class CopulaSampler(ConditionalSampler):
    name = "copula"

    def __init__(self, x_train: np.ndarray):
        self.model = copula_fit(x_train)
        self._cond = {c.bits: CopulaConditioner(self.model, c)
                      for c in nontrivial_coalitions(self.model.dim)}

    def draw(self, coalition: Coalition, x_star: np.ndarray, k: int,
             rng: np.random.Generator) -> WeightedSamples:
        cond = self._cond[coalition.bits]
        draws = cond.sample(np.asarray(x_star)[coalition.members()], k, rng)
        return WeightedSamples(samples=draws, weights=np.ones(k))


class BurrSampler(ConditionalSampler):
    name = "burr"

    def __init__(self, x_train: np.ndarray, params=None, **fit_kwargs):
        self.params = burr_fit(x_train, **fit_kwargs) if params is None else params

    def draw(self, coalition: Coalition, x_star: np.ndarray, k: int,
             rng: np.random.Generator) -> WeightedSamples:
        cond = burr_conditional(self.params, coalition,
                                np.asarray(x_star)[coalition.members()])
        return WeightedSamples(samples=burr_sample(cond, k, rng), weights=np.ones(k))


class GHSampler(ConditionalSampler):
    name = "gh"

    def __init__(self, x_train: np.ndarray, params=None, **fit_kwargs):
        self.params = gh_fit(x_train, **fit_kwargs) if params is None else params

    def draw(self, coalition: Coalition, x_star: np.ndarray, k: int,
             rng: np.random.Generator) -> WeightedSamples:
        cond = gh_conditional(self.params, coalition,
                              np.asarray(x_star)[coalition.members()])
        return WeightedSamples(samples=gh_sample(cond, k, rng), weights=np.ones(k))
