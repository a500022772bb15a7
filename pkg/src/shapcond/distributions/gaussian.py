"""Multivariate Gaussian fitting, conditioning and sampling."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from ..coalitions import Coalition
from ..errors import NumericalError
from ..numerics import chol_with_jitter

log = logging.getLogger(__name__)

__all__ = ["GaussianParams", "gaussian_fit", "gaussian_conditional", "gaussian_sample",
           "GaussianConditioner"]


@dataclass(frozen=True)
class GaussianParams:
    mu: np.ndarray
    sigma: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "mu", np.asarray(self.mu, dtype=float).ravel())
        object.__setattr__(self, "sigma", np.atleast_2d(np.asarray(self.sigma, dtype=float)))
        if self.sigma.shape != (self.dim, self.dim):
            raise ValueError(f"sigma shape {self.sigma.shape} does not match mu ({self.dim})")

    @property
    def dim(self) -> int:
        return self.mu.size


def gaussian_fit(x: np.ndarray) -> GaussianParams:
    """Sample mean and unbiased sample covariance, with a logged jitter fallback."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    n, m = x.shape
    if n <= m:
        log.warning("gaussian fit with N=%d <= M=%d is rank deficient", n, m)
    mu = x.mean(axis=0)
    if n < 2:
        sigma = np.zeros((m, m))
    else:
        sigma = np.cov(x, rowvar=False, ddof=1).reshape(m, m)
    # guarantee usability downstream even for degenerate data
    if np.linalg.matrix_rank(sigma) < m:
        log.warning("singular sample covariance; adding 1e-8 jitter on the diagonal")
        sigma = sigma + 1e-8 * np.eye(m)
    return GaussianParams(mu=mu, sigma=sigma)


def _split(p: GaussianParams, s_idx: np.ndarray, sbar_idx: np.ndarray):
    mu_s = p.mu[s_idx]
    mu_b = p.mu[sbar_idx]
    sig_ss = p.sigma[np.ix_(s_idx, s_idx)]
    sig_bs = p.sigma[np.ix_(sbar_idx, s_idx)]
    sig_bb = p.sigma[np.ix_(sbar_idx, sbar_idx)]
    return mu_s, mu_b, sig_ss, sig_bs, sig_bb


class GaussianConditioner:
    """Per-coalition cache of the regression matrix and conditional covariance.

    The conditional mean is affine in the conditioning values, so everything
    except the mean shift can be computed once per coalition and reused for
    every observation and Monte Carlo draw.
    """

    def __init__(self, params: GaussianParams, coalition: Coalition):
        if coalition.is_empty or coalition.is_full:
            raise ValueError("conditioning requires a nontrivial coalition")
        self.params = params
        self.s_idx = coalition.members()
        self.sbar_idx = coalition.complement().members()
        mu_s, mu_b, sig_ss, sig_bs, sig_bb = _split(params, self.s_idx, self.sbar_idx)
        self.mu_s, self.mu_b = mu_s, mu_b
        try:
            self.reg = scipy.linalg.solve(sig_ss, sig_bs.T, assume_a="pos").T
        except (scipy.linalg.LinAlgError, np.linalg.LinAlgError) as exc:
            raise NumericalError(f"singular conditioning block for {coalition}: {exc}") from exc
        self.cond_sigma = sig_bb - self.reg @ sig_bs.T
        self.cond_sigma = 0.5 * (self.cond_sigma + self.cond_sigma.T)
        self._chol = None

    def mean(self, x_s: np.ndarray) -> np.ndarray:
        return self.mu_b + self.reg @ (np.asarray(x_s, dtype=float) - self.mu_s)

    @property
    def chol(self) -> np.ndarray:
        if self._chol is None:
            self._chol = chol_with_jitter(self.cond_sigma)
        return self._chol

    def conditional(self, x_s: np.ndarray) -> GaussianParams:
        return GaussianParams(mu=self.mean(x_s), sigma=self.cond_sigma)

    def sample(self, x_s: np.ndarray, k: int, rng: np.random.Generator,
               antithetic: bool = False) -> np.ndarray:
        """k draws from x_Sbar | x_S = x_s; antithetic pairs (z, -z) halve variance."""
        d = self.sbar_idx.size
        if antithetic:
            half = (k + 1) // 2
            z = rng.standard_normal((half, d))
            z = np.vstack([z, -z])[:k]
        else:
            z = rng.standard_normal((k, d))
        return self.mean(x_s) + z @ self.chol.T


def gaussian_conditional(p: GaussianParams, coalition: Coalition,
                         x_s: np.ndarray) -> GaussianParams:
    """Exact conditional distribution of the features outside the coalition."""
    return GaussianConditioner(p, coalition).conditional(x_s)


def gaussian_sample(p: GaussianParams, n: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((n, p.dim))
    return p.mu + z @ chol_with_jitter(p.sigma).T
