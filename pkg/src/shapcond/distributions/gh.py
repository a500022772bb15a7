"""Generalized hyperbolic distribution as a GIG normal mean-variance mixture.

The unconditional family uses the (lambda, omega, mu, Sigma, beta)
parameterization with the GIG mixing variable W ~ GIG(lambda, omega, omega)
and x = mu + W beta + sqrt(W) U, U ~ N(0, Sigma).  Conditioning lands in the
wider (lambda, chi, psi, ...) parameterization, which this module handles
throughout; the unconditional case is simply chi = psi = omega.

The dispersion matrix is normalized to det(Sigma) = 1 during fitting; the
overall scale of the data is carried by the mixing distribution.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from scipy.special import kve
from scipy.stats import geninvgauss

from ..coalitions import Coalition
from ..errors import DomainError, NumericalError
from ..numerics import chol_with_jitter, nelder_mead

log = logging.getLogger(__name__)

__all__ = ["GHParams", "gig_sample", "gig_mean", "gh_logpdf", "gh_conditional",
           "gh_sample", "gh_fit"]


def _log_kv(nu, z):
    """log K_nu(z) via the exponentially scaled Bessel function."""
    val = kve(nu, z)
    with np.errstate(divide="ignore"):
        return np.log(val) - z


@dataclass(frozen=True)
class GHParams:
    """GH parameters; chi = psi = omega for an unconditional model."""

    lam: float
    chi: float
    psi: float
    mu: np.ndarray
    sigma: np.ndarray
    beta: np.ndarray
    converged: bool = True

    def __post_init__(self):
        object.__setattr__(self, "mu", np.asarray(self.mu, dtype=float).ravel())
        object.__setattr__(self, "beta", np.asarray(self.beta, dtype=float).ravel())
        object.__setattr__(self, "sigma", np.atleast_2d(np.asarray(self.sigma, dtype=float)))
        if self.chi <= 0 or self.psi <= 0:
            raise DomainError("chi and psi must be positive")
        if self.sigma.shape != (self.dim, self.dim) or self.beta.size != self.dim:
            raise ValueError("inconsistent GH parameter dimensions")

    @property
    def dim(self) -> int:
        return self.mu.size

    @property
    def omega(self) -> float:
        if not np.isclose(self.chi, self.psi):
            raise ValueError("omega is only defined when chi == psi")
        return float(self.chi)

    @property
    def n_free_params(self) -> int:
        # lambda, omega, mu, beta, and a det-normalized Cholesky factor
        m = self.dim
        return 2 + 2 * m + m * (m + 1) // 2 - 1


def gig_mean(lam: float, chi: float, psi: float) -> float:
    """E[W] = sqrt(chi/psi) K_{lam+1}(sqrt(chi psi)) / K_lam(sqrt(chi psi))."""
    z = np.sqrt(chi * psi)
    return float(np.sqrt(chi / psi) * np.exp(_log_kv(lam + 1.0, z) - _log_kv(lam, z)))


def gig_sample(lam: float, chi: float, psi: float, n: int,
               rng: np.random.Generator) -> np.ndarray:
    """Draws from GIG(lam, chi, psi) with density ~ w^(lam-1) exp(-(chi/w + psi w)/2)."""
    if chi <= 0 or psi <= 0:
        raise DomainError(f"GIG requires chi > 0 and psi > 0, got {chi}, {psi}")
    b = float(np.sqrt(chi * psi))
    y = geninvgauss.rvs(float(lam), b, size=n, random_state=rng)
    return np.sqrt(chi / psi) * y


def gh_logpdf(x: np.ndarray, p: GHParams) -> np.ndarray:
    x = np.atleast_2d(np.asarray(x, dtype=float))
    d = p.dim
    low = chol_with_jitter(p.sigma)
    half_logdet = float(np.sum(np.log(np.diag(low))))
    diff = x - p.mu
    solved = scipy.linalg.solve_triangular(low, diff.T, lower=True)
    delta = np.sum(solved ** 2, axis=0)
    sig_inv_beta = scipy.linalg.cho_solve((low, True), p.beta)
    q = float(p.beta @ sig_inv_beta)
    nu = p.lam - d / 2.0
    arg = np.sqrt((p.chi + delta) * (p.psi + q))
    return (0.5 * nu * (np.log(p.chi + delta) - np.log(p.psi + q))
            + 0.5 * p.lam * (np.log(p.psi) - np.log(p.chi))
            + _log_kv(nu, arg)
            - 0.5 * d * np.log(2.0 * np.pi) - half_logdet
            - _log_kv(p.lam, np.sqrt(p.chi * p.psi))
            + diff @ sig_inv_beta)


def gh_marginal(p: GHParams, idx: np.ndarray) -> GHParams:
    idx = np.asarray(idx, dtype=int)
    return GHParams(lam=p.lam, chi=p.chi, psi=p.psi, mu=p.mu[idx],
                    sigma=p.sigma[np.ix_(idx, idx)], beta=p.beta[idx])


def gh_conditional(p: GHParams, coalition: Coalition, x_s: np.ndarray) -> GHParams:
    """Conditional GH parameters of the unobserved block given x_S = x_s.

    lambda drops by |S|/2, chi grows by the Mahalanobis term of the observed
    block, psi grows by beta_S' Sigma_SS^{-1} beta_S, and mu/Sigma/beta get
    the usual Gaussian block updates.
    """
    if coalition.is_empty or coalition.is_full:
        raise ValueError("conditioning requires a nontrivial coalition")
    s_idx = coalition.members()
    sbar_idx = coalition.complement().members()
    x_s = np.asarray(x_s, dtype=float).ravel()

    sig_ss = p.sigma[np.ix_(s_idx, s_idx)]
    sig_bs = p.sigma[np.ix_(sbar_idx, s_idx)]
    sig_bb = p.sigma[np.ix_(sbar_idx, sbar_idx)]
    try:
        low = np.linalg.cholesky(sig_ss)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"singular observed block for {coalition}: {exc}") from exc

    diff = x_s - p.mu[s_idx]

    def solve(v):
        return scipy.linalg.cho_solve((low, True), v)

    reg = solve(sig_bs.T).T

    delta_s = float(diff @ solve(diff))
    q_s = float(p.beta[s_idx] @ solve(p.beta[s_idx]))
    return GHParams(
        lam=p.lam - s_idx.size / 2.0,
        chi=p.chi + delta_s,
        psi=p.psi + q_s,
        mu=p.mu[sbar_idx] + reg @ diff,
        sigma=sig_bb - reg @ sig_bs.T,
        beta=p.beta[sbar_idx] - reg @ p.beta[s_idx],
    )


def gh_sample(p: GHParams, n: int, rng: np.random.Generator) -> np.ndarray:
    w = gig_sample(p.lam, p.chi, p.psi, n, rng)
    z = rng.standard_normal((n, p.dim))
    u = z @ chol_with_jitter(p.sigma).T
    return p.mu + w[:, None] * p.beta + np.sqrt(w)[:, None] * u


# ---------------------------------------------------------------------------
# maximum likelihood
# ---------------------------------------------------------------------------

def _build_sigma(theta_l: np.ndarray, m: int) -> np.ndarray:
    """Lower-triangular factor with det 1 from m(m+1)/2 - 1 free entries."""
    low = np.zeros((m, m))
    if m == 1:
        low[0, 0] = 1.0
        return low
    log_diag = np.empty(m)
    log_diag[:m - 1] = theta_l[:m - 1]
    log_diag[m - 1] = -log_diag[:m - 1].sum()
    if np.any(np.abs(log_diag) > 20.0):
        raise FloatingPointError
    np.fill_diagonal(low, np.exp(log_diag))
    tril = np.tril_indices(m, k=-1)
    low[tril] = theta_l[m - 1:]
    return low


def _pack(lam, log_omega, mu, beta, low):
    m = mu.size
    log_diag = np.log(np.diag(low))
    log_diag = log_diag - log_diag.mean()  # project onto det = 1
    tril = np.tril_indices(m, k=-1)
    return np.concatenate([[lam, log_omega], mu, beta, log_diag[:m - 1], low[tril]])


def _make_nll(x: np.ndarray):
    x = np.atleast_2d(x)
    n, m = x.shape
    log_2pi_term = 0.5 * m * np.log(2.0 * np.pi)

    def nll(theta):
        lam = theta[0]
        # bounded search region: past it the family is numerically Gaussian and
        # (mu, beta) lose identifiability, letting the optimizer drift
        if abs(lam) > 12.0 or abs(theta[1]) > 7.0:
            return np.inf
        omega = np.exp(theta[1])
        mu = theta[2:2 + m]
        beta = theta[2 + m:2 + 2 * m]
        try:
            low = _build_sigma(theta[2 + 2 * m:], m)
        except FloatingPointError:
            return np.inf
        # det(Sigma) = 1 by construction, so the log-det term vanishes
        diff = x - mu
        solved = scipy.linalg.solve_triangular(low, diff.T, lower=True,
                                               check_finite=False)
        delta = np.einsum("ij,ij->j", solved, solved)
        beta_solved = scipy.linalg.solve_triangular(low, beta, lower=True,
                                                    check_finite=False)
        q = float(beta_solved @ beta_solved)
        sig_inv_beta = scipy.linalg.solve_triangular(low.T, beta_solved, lower=False,
                                                     check_finite=False)
        nu = lam - m / 2.0
        arg = np.sqrt((omega + delta) * (omega + q))
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            log_k_nu = np.log(kve(nu, arg)) - arg
            log_k_lam = np.log(kve(lam, omega)) - omega
            ll = float(np.sum(0.5 * nu * (np.log(omega + delta) - np.log(omega + q))
                              + log_k_nu + diff @ sig_inv_beta)
                       - n * (log_2pi_term + log_k_lam))
        return -ll if np.isfinite(ll) else np.inf

    return nll


def _scale_matched_start(s: float) -> tuple[float, float]:
    """(lambda, omega) whose mixing mean roughly matches the scale s."""
    best = (1.0, 1.0)
    best_err = np.inf
    for lam in (-8.0, -4.0, -2.0, -0.5, 0.5, 1.0, 2.0, 5.0, 10.0):
        for omega in np.geomspace(0.02, 1000.0, 40):
            err = abs(np.log(gig_mean(lam, omega, omega)) - np.log(s))
            if err < best_err:
                best, best_err = (lam, float(omega)), err
    return best


def gh_fit(x: np.ndarray, n_starts: int = 3, max_iter: int | None = None,
           seed: int = 0) -> GHParams:
    """MLE in the det-normalized parameterization via Nelder-Mead multistart.

    Starts from the Gaussian moments with beta = 0; the mixing parameters
    are seeded both at (1, 1) and at a scale-matched point so the optimizer
    does not have to travel far along the lambda-omega ridge.
    """
    x = np.atleast_2d(np.asarray(x, dtype=float))
    n, m = x.shape
    mu0 = x.mean(axis=0)
    sigma_hat = np.cov(x, rowvar=False, ddof=1).reshape(m, m) + 1e-10 * np.eye(m)
    scale = float(np.linalg.det(sigma_hat)) ** (1.0 / m)
    sigma0 = sigma_hat / scale
    low0 = chol_with_jitter(sigma0)

    nll = _make_nll(x)
    lam_s, omega_s = _scale_matched_start(scale)
    starts = [
        _pack(1.0, 0.0, mu0, np.zeros(m), low0),
        _pack(lam_s, np.log(omega_s), mu0, np.zeros(m), low0),
    ]
    rng = np.random.default_rng(seed)
    while len(starts) < max(n_starts, 2):
        jitter = 0.1 * rng.standard_normal(starts[0].size)
        starts.append(starts[1] + jitter)

    best = None
    converged = False
    for start in starts[:max(n_starts, 2)]:
        if not np.isfinite(nll(start)):
            continue
        res = nelder_mead(nll, start, max_iter=max_iter, tol=1e-6)
        if best is None or res.fun < best.fun:
            best = res
            converged = res.converged
    if best is None:
        raise NumericalError("GH likelihood not finite at any start value")
    if not converged:
        log.warning("GH MLE did not fully converge; returning best point found")

    theta = best.x
    low = _build_sigma(theta[2 + 2 * m:], m)
    return GHParams(lam=float(theta[0]), chi=float(np.exp(theta[1])),
                    psi=float(np.exp(theta[1])), mu=theta[2:2 + m],
                    beta=theta[2 + m:2 + 2 * m], sigma=low @ low.T, converged=converged)
