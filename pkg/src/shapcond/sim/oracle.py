"""Ground-truth Shapley values via the analytically known conditionals.

For simulated data the feature distribution is known exactly, so the
contribution function can be estimated to arbitrary precision by Monte
Carlo from the true conditional law (Gaussian block formulas or Burr
parameter updates).  Gaussian draws are antithetic (z, -z pairs), which is
unbiased and removes the variance of the linear part entirely.
"""

from __future__ import annotations

import numpy as np

from ..coalitions import nontrivial_coalitions
from ..distributions import burr_conditional, burr_sample
from ..distributions.gaussian import GaussianConditioner
from ..errors import ConfigError
from ..numerics import substream
from ..shapley import ContributionMatrix, ShapleyExplanation, solve_shapley_wls
from .data import DataSpec

__all__ = ["true_contribution_matrix", "true_shapley_oracle", "ORACLE_K"]

ORACLE_K = 10_000


def true_contribution_matrix(f, data_spec: DataSpec, x_test: np.ndarray, phi0: float,
                             k: int = ORACLE_K, seed: int = 0) -> ContributionMatrix:
    x_test = np.atleast_2d(np.asarray(x_test, dtype=float))
    m = data_spec.m
    n = x_test.shape[0]
    params = data_spec.true_params()
    values = np.empty((1 << m, n))
    values[0] = phi0
    values[-1] = np.asarray(f(x_test), dtype=float).ravel()

    for row, coalition in enumerate(nontrivial_coalitions(m), start=1):
        s_idx = coalition.members()
        sbar_idx = coalition.complement().members()
        cond = GaussianConditioner(params, coalition) if data_spec.family == "gaussian" else None
        for i in range(n):
            rng = substream(seed, "oracle", coalition.bits, i)
            if data_spec.family == "gaussian":
                draws = cond.sample(x_test[i, s_idx], k, rng, antithetic=True)
            elif data_spec.family == "burr":
                cond_params = burr_conditional(params, coalition, x_test[i, s_idx])
                draws = burr_sample(cond_params, k, rng)
            else:
                raise ConfigError(f"no closed-form conditionals for {data_spec.family!r}")
            full = np.empty((k, m))
            full[:, s_idx] = x_test[i, s_idx]
            full[:, sbar_idx] = draws
            values[row, i] = float(np.mean(f(full)))
    return ContributionMatrix(values=values, m=m)


def true_shapley_oracle(f, data_spec: DataSpec, x_test: np.ndarray, phi0: float,
                        k: int = ORACLE_K, seed: int = 0) -> ShapleyExplanation:
    vm = true_contribution_matrix(f, data_spec, x_test, phi0, k=k, seed=seed)
    return solve_shapley_wls(vm)
