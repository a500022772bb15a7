"""Interventional sampling: the unobserved block is drawn from the
training data marginal, ignoring dependence on the conditioning values."""

from __future__ import annotations

import numpy as np

from ..coalitions import Coalition
from .base import ConditionalSampler, WeightedSamples

__all__ = ["IndependenceSampler", "independence_draw"]


class IndependenceSampler(ConditionalSampler):
    name = "independence"

    def __init__(self, x_train: np.ndarray):
        x_train = np.atleast_2d(np.asarray(x_train, dtype=float))
        if x_train.shape[0] == 0:
            raise ValueError("independence sampler needs a nonempty training set")
        self.x_train = x_train

    def draw(self, coalition: Coalition, x_star: np.ndarray, k: int,
             rng: np.random.Generator) -> WeightedSamples:
        rows = rng.integers(0, self.x_train.shape[0], size=k)
        cols = coalition.complement().members()
        return WeightedSamples(samples=self.x_train[np.ix_(rows, cols)],
                               weights=np.ones(k))


def independence_draw(x_train: np.ndarray, coalition: Coalition, k: int,
                      rng: np.random.Generator) -> WeightedSamples:
    return IndependenceSampler(x_train).draw(coalition, np.zeros(coalition.m), k, rng)
