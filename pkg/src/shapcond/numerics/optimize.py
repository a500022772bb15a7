"""Nelder-Mead simplex minimizer.

Plain non-adaptive variant with reflection 1, expansion 2, contraction 0.5
and shrink 0.5, converging when the simplex diameter falls below ``tol``.
Non-finite objective values are treated as +inf so the simplex retreats
from invalid regions instead of crashing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import OptimizationError

__all__ = ["NelderMeadResult", "nelder_mead"]

_ALPHA = 1.0  # reflection
_GAMMA = 2.0  # expansion
_RHO = 0.5    # contraction
_SIGMA = 0.5  # shrink


@dataclass
class NelderMeadResult:
    x: np.ndarray
    fun: float
    converged: bool
    n_iter: int
    n_eval: int


def _wrap(objective):
    state = {"n": 0}

    def f(x):
        state["n"] += 1
        val = objective(x)
        val = float(val)
        return val if np.isfinite(val) else np.inf

    return f, state


def nelder_mead(objective, x0, max_iter: int | None = None, tol: float = 1e-8,
                initial_step: float = 0.05) -> NelderMeadResult:
    """Minimize ``objective`` starting from ``x0``; returns the best vertex."""
    x0 = np.asarray(x0, dtype=float).ravel()
    dim = x0.size
    if max_iter is None:
        max_iter = 2000 * max(dim, 1)

    f, evals = _wrap(objective)
    f0 = f(x0)
    if not np.isfinite(f0):
        raise OptimizationError("objective is not finite at the starting point")

    # initial simplex: perturb each coordinate by a relative (or absolute) step
    simplex = np.tile(x0, (dim + 1, 1))
    for i in range(dim):
        step = initial_step * abs(x0[i]) if x0[i] != 0.0 else initial_step * 0.005
        simplex[i + 1, i] += step
    fvals = np.array([f0] + [f(simplex[i + 1]) for i in range(dim)])
    if not np.any(np.isfinite(fvals)):
        raise OptimizationError("objective returned non-finite values at every trial point")

    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        order = np.argsort(fvals, kind="stable")
        simplex, fvals = simplex[order], fvals[order]

        diameter = np.max(np.abs(simplex[1:] - simplex[0])) if dim else 0.0
        if diameter < tol:
            converged = True
            break

        centroid = simplex[:-1].mean(axis=0)
        xr = centroid + _ALPHA * (centroid - simplex[-1])
        fr = f(xr)

        if fr < fvals[0]:
            xe = centroid + _GAMMA * (xr - centroid)
            fe = f(xe)
            if fe < fr:
                simplex[-1], fvals[-1] = xe, fe
            else:
                simplex[-1], fvals[-1] = xr, fr
        elif fr < fvals[-2]:
            simplex[-1], fvals[-1] = xr, fr
        else:
            if fr < fvals[-1]:
                xc = centroid + _RHO * (xr - centroid)
            else:
                xc = centroid + _RHO * (simplex[-1] - centroid)
            fc = f(xc)
            if fc < min(fr, fvals[-1]):
                simplex[-1], fvals[-1] = xc, fc
            else:
                # shrink toward the best vertex
                simplex[1:] = simplex[0] + _SIGMA * (simplex[1:] - simplex[0])
                fvals[1:] = [f(x) for x in simplex[1:]]
                if not np.any(np.isfinite(fvals)):
                    raise OptimizationError(
                        "objective returned non-finite values at every trial point")

    best = int(np.argmin(fvals))
    return NelderMeadResult(x=simplex[best].copy(), fun=float(fvals[best]),
                            converged=converged, n_iter=it, n_eval=evals["n"])
