"""Least squares regressors over fixed basis expansions.

Covers the linear model and its polynomial / interaction extensions:

  lm          x_j
  poly(p)     x_j, x_j^2, ..., x_j^p per feature
  lm_inter(o) x_j plus products of 2..(o+1) distinct features
  poly_inter(d) all monomials of total degree <= d across features

Rank-deficient designs fall back to a 1e-8 ridge with a warning.
"""

from __future__ import annotations

import itertools
import logging

import numpy as np

from .specs import RegressorSpec

log = logging.getLogger(__name__)

__all__ = ["LinearBasisModel", "basis_terms", "design_matrix"]


def basis_terms(kind: str, m: int, degree: int = 2, order: int = 1) -> list[tuple]:
    """Each term is a tuple of (feature index, power) factors; () is handled
    by the intercept and not listed."""
    if kind == "lm":
        return [((j, 1),) for j in range(m)]
    if kind == "poly":
        return [((j, p),) for j in range(m) for p in range(1, degree + 1)]
    if kind == "lm_inter":
        terms: list[tuple] = []
        for size in range(1, order + 2):
            for combo in itertools.combinations(range(m), size):
                terms.append(tuple((j, 1) for j in combo))
        return terms
    if kind == "poly_inter":
        terms = []
        for total in range(1, degree + 1):
            for combo in itertools.combinations_with_replacement(range(m), total):
                counts: dict[int, int] = {}
                for j in combo:
                    counts[j] = counts.get(j, 0) + 1
                terms.append(tuple(sorted(counts.items())))
        return terms
    raise ValueError(f"no basis for kind {kind!r}")


def design_matrix(x: np.ndarray, terms: list[tuple]) -> np.ndarray:
    x = np.atleast_2d(x)
    cols = [np.ones(x.shape[0])]
    for term in terms:
        col = np.ones(x.shape[0])
        for j, p in term:
            col = col * x[:, j] ** p
        cols.append(col)
    return np.column_stack(cols)


class LinearBasisModel:
    def __init__(self, spec: RegressorSpec, m: int):
        self.terms = basis_terms(spec.kind, m, spec.degree, spec.order)
        self.m = m
        self.coef: np.ndarray | None = None

    def fit(self, x: np.ndarray, z: np.ndarray) -> "LinearBasisModel":
        design = design_matrix(x, self.terms)
        z = np.asarray(z, dtype=float).ravel()
        coef, _, rank, _ = np.linalg.lstsq(design, z, rcond=None)
        if rank < design.shape[1]:
            log.warning("rank-deficient design (%d < %d); adding 1e-8 ridge",
                        rank, design.shape[1])
            gram = design.T @ design + 1e-8 * np.eye(design.shape[1])
            coef = np.linalg.solve(gram, design.T @ z)
        self.coef = coef
        return self

    def predict(self, x: np.ndarray) -> np.ndarray:
        return design_matrix(x, self.terms) @ self.coef

    @property
    def n_params(self) -> int:
        return len(self.terms) + 1

    def summary(self) -> dict:
        return {"n_params": self.n_params}
