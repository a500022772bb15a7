"""Kernel-weighted nearest-observation sampling.

Distances are scaled Mahalanobis in the conditioned coordinates,
D_S^2 = (x*_S - x_iS)' Sigma_SS^{-1} (x*_S - x_iS) / |S|, converted to
Gaussian kernel weights w = exp(-D^2 / (2 sigma^2)).  Training rows are
kept in decreasing weight order until their share of the total weight
exceeds eta; the contribution estimate is their weighted average.
"""

from __future__ import annotations

import logging

import numpy as np
import scipy.linalg

from ..coalitions import Coalition, nontrivial_coalitions
from ..errors import NumericalError
from .base import ConditionalSampler, WeightedSamples

log = logging.getLogger(__name__)

__all__ = ["EmpiricalSampler", "empirical_weights"]

DEFAULT_SIGMA = 0.1
DEFAULT_ETA = 0.95


class EmpiricalSampler(ConditionalSampler):
    name = "empirical"

    def __init__(self, x_train: np.ndarray, sigma: float = DEFAULT_SIGMA,
                 eta: float = DEFAULT_ETA):
        if sigma <= 0:
            raise ValueError("bandwidth sigma must be positive")
        if not 0 < eta <= 1:
            raise ValueError("eta must lie in (0, 1]")
        self.x_train = np.atleast_2d(np.asarray(x_train, dtype=float))
        self.sigma = float(sigma)
        self.eta = float(eta)
        self.m = self.x_train.shape[1]
        # full-data covariance restricted per coalition, factorized once
        cov = np.cov(self.x_train, rowvar=False, ddof=1).reshape(self.m, self.m)
        cov = cov + 1e-10 * np.eye(self.m)
        self._chol_ss = {}
        for coalition in nontrivial_coalitions(self.m):
            idx = coalition.members()
            block = cov[np.ix_(idx, idx)]
            try:
                self._chol_ss[coalition.bits] = np.linalg.cholesky(block)
            except np.linalg.LinAlgError as exc:
                raise NumericalError(
                    f"singular covariance block for {coalition}") from exc

    def weights_for(self, coalition: Coalition, x_star: np.ndarray):
        """(row order, weights in that order) for all training rows."""
        idx = coalition.members()
        diff = (np.asarray(x_star, dtype=float)[idx] - self.x_train[:, idx]).T
        solved = scipy.linalg.solve_triangular(self._chol_ss[coalition.bits], diff,
                                               lower=True)
        d2 = (solved ** 2).sum(axis=0) / idx.size
        w = np.exp(-d2 / (2.0 * self.sigma ** 2))
        order = np.argsort(-w, kind="stable")
        return order, w[order]

    def select(self, coalition: Coalition, x_star: np.ndarray):
        """Apply the cumulative-weight cutoff; returns (row indices, weights)."""
        order, w = self.weights_for(coalition, x_star)
        total = w.sum()
        if total <= 0 or not np.isfinite(total):
            log.warning("all empirical weights vanished; keeping nearest neighbour")
            return order[:1], np.ones(1)
        frac = np.cumsum(w) / total
        k_star = int(np.searchsorted(frac, self.eta, side="right")) + 1
        k_star = min(k_star, w.size)
        return order[:k_star], w[:k_star]

    def draw(self, coalition: Coalition, x_star: np.ndarray, k: int,
             rng: np.random.Generator) -> WeightedSamples:
        # deterministic given the training data: K plays no role here
        rows, w = self.select(coalition, x_star)
        cols = coalition.complement().members()
        return WeightedSamples(samples=self.x_train[np.ix_(rows, cols)], weights=w)


def empirical_weights(x_train: np.ndarray, coalition: Coalition, x_star: np.ndarray,
                      sigma: float = DEFAULT_SIGMA, eta: float = DEFAULT_ETA):
    """Convenience wrapper returning (training row indices, weights)."""
    sampler = EmpiricalSampler(x_train, sigma=sigma, eta=eta)
    return sampler.select(coalition, x_star)
