"""Shapley values from contribution functions.

The production path solves the weighted least squares system with the
Shapley kernel weights; the infinite weights on the empty and grand
coalitions are replaced by a large constant C (default 1e6), which pins
v(empty) = phi_0 and v(full) = f(x*) up to O(1/C).  ``shapley_exact``
evaluates the permutation-weighted sum directly and serves as the test
oracle for small M.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .coalitions import Coalition, enumerate_coalitions
from .errors import IncompleteGameError, NumericalError

__all__ = [
    "DEFAULT_LARGE_CONSTANT",
    "KernelWeightTable",
    "ContributionMatrix",
    "ShapleyExplanation",
    "kernel_weight",
    "solve_shapley_wls",
    "shapley_exact",
]

DEFAULT_LARGE_CONSTANT = 1e6


def kernel_weight(m: int, s: int, large_constant: float = DEFAULT_LARGE_CONSTANT) -> float:
    """Shapley kernel weight k(M, s); the trivial sizes get the large constant."""
    if not 0 <= s <= m:
        raise ValueError(f"coalition size {s} out of range for M={m}")
    if s == 0 or s == m:
        return float(large_constant)
    return (m - 1) / (math.comb(m, s) * s * (m - s))


@dataclass(frozen=True)
class KernelWeightTable:
    m: int
    large_constant: float = DEFAULT_LARGE_CONSTANT
    weights: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        w = np.array([kernel_weight(self.m, s, self.large_constant)
                      for s in range(self.m + 1)])
        object.__setattr__(self, "weights", w)

    def for_coalitions(self, coalitions) -> np.ndarray:
        return self.weights[[c.size for c in coalitions]]


@dataclass
class ContributionMatrix:
    """v(S) for all 2^M coalitions (rows, canonical order) and N_test columns."""

    values: np.ndarray
    m: int

    def __post_init__(self):
        self.values = np.atleast_2d(np.asarray(self.values, dtype=float))
        if self.values.shape[0] != 1 << self.m:
            raise ValueError(
                f"expected {1 << self.m} rows for M={self.m}, got {self.values.shape[0]}")

    @property
    def coalition_index(self) -> tuple[Coalition, ...]:
        return enumerate_coalitions(self.m)

    @property
    def n_columns(self) -> int:
        return self.values.shape[1]

    def nontrivial(self) -> np.ndarray:
        """The (2^M - 2) x N block excluding the empty/full rows."""
        return self.values[1:-1]


@dataclass
class ShapleyExplanation:
    """phi matrix of shape (M+1) x N_test; row 0 is the baseline phi_0."""

    phi: np.ndarray

    @property
    def baseline(self) -> np.ndarray:
        return self.phi[0]

    @property
    def contributions(self) -> np.ndarray:
        return self.phi[1:]

    def efficiency_gap(self, v: ContributionMatrix) -> np.ndarray:
        """sum_j phi_j - (v(full) - v(empty)) per column."""
        return self.contributions.sum(axis=0) - (v.values[-1] - v.values[0])


class ShapleySolver:
    """Precomputes R = (Z' W Z)^{-1} Z' W for a fixed M and weight table.

    Immutable after construction; columns of V can be solved independently
    (solving is a single matrix multiply).
    """

    def __init__(self, m: int, large_constant: float = DEFAULT_LARGE_CONSTANT):
        self.m = m
        self.table = KernelWeightTable(m, large_constant)
        coalitions = enumerate_coalitions(m)
        z = np.ones((len(coalitions), m + 1))
        for i, c in enumerate(coalitions):
            z[i, 1:] = c.indicator()
        w = self.table.for_coalitions(coalitions)
        ztw = z.T * w  # (M+1) x 2^M
        normal = ztw @ z
        try:
            low = np.linalg.cholesky(normal)
            self.r = scipy.linalg.cho_solve((low, True), ztw)
        except np.linalg.LinAlgError:
            try:
                self.r = scipy.linalg.solve(normal, ztw)  # pivoted fallback
            except scipy.linalg.LinAlgError as exc:
                raise NumericalError(f"singular normal equations for M={m}: {exc}") from exc

    def solve(self, v: ContributionMatrix) -> ShapleyExplanation:
        if v.m != self.m:
            raise ValueError(f"contribution matrix has M={v.m}, solver has M={self.m}")
        return ShapleyExplanation(phi=self.r @ v.values)


def solve_shapley_wls(v: ContributionMatrix,
                      large_constant: float = DEFAULT_LARGE_CONSTANT) -> ShapleyExplanation:
    """Weighted least squares Shapley values for every column of v."""
    return ShapleySolver(v.m, large_constant).solve(v)


def shapley_exact(v: dict[int, float], m: int) -> np.ndarray:
    """Exact Shapley values from a full map {coalition bits -> v(S)}.

    Test oracle only; cost grows as M * 2^M.
    """
    full = (1 << m) - 1
    for bits in range(1 << m):
        if bits not in v:
            raise IncompleteGameError(f"game is missing v for coalition bits {bits:#x}")
    fact = [math.factorial(k) for k in range(m + 1)]
    phi = np.zeros(m)
    for j in range(m):
        for bits in range(1 << m):
            if bits & (1 << j):
                continue
            s = bits.bit_count()
            weight = fact[s] * fact[m - s - 1] / fact[m]
            phi[j] += weight * (v[bits | (1 << j)] - v[bits])
    return phi
