"""Dense linear algebra helpers used throughout the estimators.

Thin wrappers around numpy/scipy that add the symmetry checks and error
types the rest of the package relies on.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from ..errors import NotPositiveDefiniteError, NumericalError

__all__ = ["check_symmetric", "cholesky", "spd_solve", "chol_with_jitter"]

_SYM_TOL = 1e-10


def check_symmetric(a: np.ndarray, tol: float = _SYM_TOL) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NumericalError(f"expected a square matrix, got shape {a.shape}")
    scale = max(1.0, float(np.max(np.abs(a))))
    if np.max(np.abs(a - a.T)) > tol * scale:
        raise NumericalError("matrix is not symmetric to tolerance")
    return a


def cholesky(a: np.ndarray) -> np.ndarray:
    """Lower-triangular L with L @ L.T == a, for symmetric positive definite a."""
    a = check_symmetric(a)
    try:
        return np.linalg.cholesky(a)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefiniteError(f"matrix is not positive definite: {exc}") from exc


def spd_solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve a @ x = b for symmetric positive definite a via Cholesky."""
    low = cholesky(a)
    return scipy.linalg.cho_solve((low, True), b)


def chol_with_jitter(a: np.ndarray, max_tries: int = 8) -> np.ndarray:
    """Cholesky factor of ``a``, adding an escalating diagonal jitter if needed.

    Accepts positive semidefinite matrices (e.g. nearly deterministic
    conditional covariances) that plain Cholesky rejects.
    """
    a = check_symmetric(a)
    scale = max(float(np.max(np.abs(np.diag(a)))), 1e-300)
    jitter = 0.0
    for k in range(max_tries):
        try:
            return np.linalg.cholesky(a + jitter * np.eye(a.shape[0]))
        except np.linalg.LinAlgError:
            jitter = scale * 10.0 ** (-12 + 2 * k)
    raise NotPositiveDefiniteError("matrix not positive definite even after jitter")
