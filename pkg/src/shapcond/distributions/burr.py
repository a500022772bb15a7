"""Multivariate Burr distribution: density, MLE, conditionals, sampling.

The joint survival function is (1 + sum_m r_m x_m^{b_m})^{-kappa}, so any
marginal keeps (kappa, b, r) restricted to its coordinates, and conditioning
on a block shifts kappa by the block size and rescales the remaining rates.
Sampling uses the gamma-compounded Weibull representation.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from ..coalitions import Coalition
from ..errors import DomainError
from ..numerics import nelder_mead

log = logging.getLogger(__name__)

__all__ = ["BurrParams", "burr_logpdf", "burr_log_survival", "burr_marginal",
           "burr_conditional", "burr_sample", "burr_fit"]


@dataclass(frozen=True)
class BurrParams:
    kappa: float
    b: np.ndarray
    r: np.ndarray
    converged: bool = True

    def __post_init__(self):
        object.__setattr__(self, "b", np.asarray(self.b, dtype=float).ravel())
        object.__setattr__(self, "r", np.asarray(self.r, dtype=float).ravel())
        if self.kappa <= 0 or np.any(self.b <= 0) or np.any(self.r <= 0):
            raise DomainError("Burr parameters must be strictly positive")
        if self.b.size != self.r.size:
            raise ValueError("b and r must have equal length")

    @property
    def dim(self) -> int:
        return self.b.size

    @property
    def n_free_params(self) -> int:
        return 2 * self.dim + 1


def _check_positive(x: np.ndarray, what: str) -> np.ndarray:
    x = np.atleast_2d(np.asarray(x, dtype=float))
    if np.any(x <= 0):
        raise DomainError(f"{what} must be strictly positive for the Burr distribution")
    return x


def burr_logpdf(x: np.ndarray, p: BurrParams) -> np.ndarray:
    x = _check_positive(x, "evaluation points")
    m = p.dim
    u = np.log1p((p.r * x ** p.b).sum(axis=1))
    const = gammaln(p.kappa + m) - gammaln(p.kappa) + np.sum(np.log(p.b) + np.log(p.r))
    return const + ((p.b - 1) * np.log(x)).sum(axis=1) - (p.kappa + m) * u


def burr_log_survival(x: np.ndarray, p: BurrParams) -> np.ndarray:
    """log P(X > x) componentwise-jointly, i.e. the joint survival function."""
    x = _check_positive(x, "evaluation points")
    return -p.kappa * np.log1p((p.r * x ** p.b).sum(axis=1))


def burr_marginal(p: BurrParams, idx: np.ndarray) -> BurrParams:
    idx = np.asarray(idx, dtype=int)
    return BurrParams(kappa=p.kappa, b=p.b[idx], r=p.r[idx])


def burr_conditional(p: BurrParams, coalition: Coalition, x_s: np.ndarray) -> BurrParams:
    """Distribution of the unobserved block given x_S = x_s.

    Conditioning on nothing returns the parameters unchanged.
    """
    if coalition.is_empty:
        return p
    s_idx = coalition.members()
    sbar_idx = coalition.complement().members()
    x_s = np.asarray(x_s, dtype=float).ravel()
    if np.any(x_s <= 0):
        raise DomainError("conditioning values must be strictly positive")
    denom = 1.0 + np.sum(p.r[s_idx] * x_s ** p.b[s_idx])
    return BurrParams(kappa=p.kappa + s_idx.size, b=p.b[sbar_idx], r=p.r[sbar_idx] / denom)


def burr_sample(p: BurrParams, n: int, rng: np.random.Generator) -> np.ndarray:
    """Gamma-compounded Weibull draws: theta ~ Gamma(kappa, 1), then
    x_m = (E_m / (theta r_m))^(1/b_m) with E_m ~ Exp(1)."""
    theta = rng.gamma(shape=p.kappa, scale=1.0, size=n)
    e = -np.log(rng.random((n, p.dim)))  # Exp(1) by inverse cdf
    return (e / (theta[:, None] * p.r)) ** (1.0 / p.b)


def _neg_loglik_factory(x: np.ndarray):
    x = np.atleast_2d(x)
    n, m = x.shape
    logx = np.log(x)
    sum_logx = logx.sum(axis=0)  # per-feature

    def nll(theta: np.ndarray) -> float:
        if np.any(np.abs(theta) > 20.0):
            return np.inf
        kappa = np.exp(theta[0])
        b = np.exp(theta[1:m + 1])
        r = np.exp(theta[m + 1:])
        u = np.log1p((r * x ** b).sum(axis=1))
        const = gammaln(kappa + m) - gammaln(kappa) + np.sum(np.log(b) + np.log(r))
        ll = n * const + ((b - 1.0) * sum_logx).sum() - (kappa + m) * u.sum()
        return -ll

    return nll


def _margin_prefit(col: np.ndarray) -> tuple[float, float, float]:
    """Quick univariate MLE (kappa_j, b_j, r_j) used to seed the joint fit."""
    logc = np.log(col)

    def nll(theta):
        if np.any(np.abs(theta) > 20.0):
            return np.inf
        kappa, b, r = np.exp(theta)
        u = np.log1p(r * col ** b)
        ll = col.size * (np.log(kappa) + np.log(b) + np.log(r)) \
            + (b - 1.0) * logc.sum() - (kappa + 1.0) * u.sum()
        return -ll

    start = np.log([1.0, 1.0, 1.0 / max(np.mean(col), 1e-12)])
    res = nelder_mead(nll, start, max_iter=1500, tol=1e-6)
    kappa, b, r = np.exp(res.x)
    return kappa, b, r


def burr_fit(x: np.ndarray, n_starts: int = 3, max_iter: int | None = None,
             seed: int = 0) -> BurrParams:
    """Maximum likelihood in log-parameter space via Nelder-Mead multistart."""
    x = _check_positive(x, "training data")
    n, m = x.shape
    nll = _neg_loglik_factory(x)

    prefits = [_margin_prefit(x[:, j]) for j in range(m)]
    kappa0 = float(np.median([p[0] for p in prefits]))
    b0 = np.array([p[1] for p in prefits])
    r0 = np.array([p[2] for p in prefits])
    base = np.log(np.concatenate([[kappa0], b0, r0]))

    rng = np.random.default_rng(seed)
    starts = [base]
    for _ in range(max(0, n_starts - 1)):
        starts.append(base + 0.3 * rng.standard_normal(base.size))

    best = None
    converged = False
    for start in starts:
        try:
            res = nelder_mead(nll, start, max_iter=max_iter, tol=1e-7)
        except Exception:  # a bad start is not fatal with other starts left
            continue
        if best is None or res.fun < best.fun:
            best = res
            converged = res.converged
    if best is None:
        raise DomainError("Burr likelihood could not be evaluated at any start")
    if not converged:
        log.warning("Burr MLE did not fully converge; returning best point found")
    theta = best.x
    return BurrParams(kappa=float(np.exp(theta[0])), b=np.exp(theta[1:m + 1]),
                      r=np.exp(theta[m + 1:]), converged=converged)
