"""Empirical marginal distributions with the rank/(n+1) convention.

Used by the copula transform: the cdf stays strictly inside (0, 1) so the
normal quantile never hits +-inf, and the quantile function inverts the cdf
exactly on the training support.
"""

from __future__ import annotations

import numpy as np

from ..errors import InsufficientDataError

__all__ = ["EmpiricalMargin", "empirical_margin_fit"]


class EmpiricalMargin:
    """One feature's empirical cdf/quantile pair.

    cdf(v_(k)) = k/(n+1) at the order statistics, linear in between, clamped
    to [1/(n+1), n/(n+1)] outside the observed range.  quantile() linearly
    interpolates the order statistics and is the exact inverse of cdf() on
    the training values.
    """

    def __init__(self, values: np.ndarray):
        values = np.asarray(values, dtype=float).ravel()
        values = values[np.isfinite(values)]
        if values.size < 2:
            raise InsufficientDataError("empirical margin needs at least 2 finite values")
        self.sorted = np.sort(values)
        n = values.size
        self.ranks = np.arange(1, n + 1) / (n + 1.0)

    @property
    def n(self) -> int:
        return self.sorted.size

    @property
    def lo(self) -> float:
        return float(self.sorted[0])

    @property
    def hi(self) -> float:
        return float(self.sorted[-1])

    def cdf(self, x) -> np.ndarray:
        # np.interp clamps outside the support, giving the 1/(n+1), n/(n+1) rule
        return np.interp(np.asarray(x, dtype=float), self.sorted, self.ranks)

    def quantile(self, u) -> np.ndarray:
        return np.interp(np.asarray(u, dtype=float), self.ranks, self.sorted)


def empirical_margin_fit(values) -> EmpiricalMargin:
    return EmpiricalMargin(np.asarray(values))
