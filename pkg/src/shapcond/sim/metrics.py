"""Evaluation criteria for estimated explanations.

MAE compares estimated Shapley values to the ground truth, averaged over
features and test observations (the baseline row is excluded).  MSE_v
scores contribution functions directly against the model predictions over
the nontrivial coalitions; it needs no ground truth and only ranks methods.
"""

from __future__ import annotations

import numpy as np

from ..shapley import ContributionMatrix, ShapleyExplanation

__all__ = ["mae_metric", "mse_v_metric", "efficiency_gaps"]


def _phi(a) -> np.ndarray:
    if isinstance(a, ShapleyExplanation):
        return a.phi
    return np.atleast_2d(np.asarray(a, dtype=float))


def mae_metric(phi_true, phi_hat) -> tuple[float, np.ndarray]:
    """(overall MAE, per-observation MAE) over the M feature rows."""
    t, h = _phi(phi_true), _phi(phi_hat)
    if t.shape != h.shape:
        raise ValueError(f"shape mismatch: {t.shape} vs {h.shape}")
    per_obs = np.mean(np.abs(t[1:] - h[1:]), axis=0)
    return float(per_obs.mean()), per_obs


def mse_v_metric(f_values: np.ndarray, v_hat) -> float:
    """Mean over nontrivial coalitions and observations of (f(x) - v_hat)^2."""
    if isinstance(v_hat, ContributionMatrix):
        v_rows = v_hat.nontrivial()
    else:
        v_rows = np.atleast_2d(np.asarray(v_hat, dtype=float))
    f_values = np.asarray(f_values, dtype=float).ravel()
    if v_rows.shape[1] != f_values.size:
        raise ValueError(f"{v_rows.shape[1]} contribution columns vs "
                         f"{f_values.size} model predictions")
    return float(np.mean((f_values[None, :] - v_rows) ** 2))


def efficiency_gaps(explanation: ShapleyExplanation, v: ContributionMatrix) -> np.ndarray:
    """|sum_j phi_j - (f(x*) - phi_0)| per observation, for invariant checks."""
    return np.abs(explanation.efficiency_gap(v))
