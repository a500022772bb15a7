"""Regressor menu shared by the separate and surrogate paradigms."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ConfigError

__all__ = ["RegressorSpec", "KINDS"]

KINDS = ("lm", "poly", "lm_inter", "poly_inter", "knn", "cart", "ppr_cv", "ppr_fixed")

DEFAULT_KNN_GRID = (3, 5, 10, 20, 40)


@dataclass(frozen=True)
class RegressorSpec:
    kind: str
    degree: int = 2                 # poly / poly_inter polynomial degree
    order: int = 1                  # lm_inter: products of up to order+1 features
    k: int | None = None            # knn: explicit k skips cross-validation
    terms: int | None = None        # ppr_fixed: number of ridge terms
    cv_folds: int = 5
    cv_seed: int = 0
    knn_grid: tuple = DEFAULT_KNN_GRID
    ppr_max_terms: int = 5
    cart_cp: float = 0.001
    cart_cv_alphas: int = 8

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown regressor kind {self.kind!r}; expected one of {KINDS}")
        if self.degree < 1:
            raise ConfigError("polynomial degree must be >= 1")
        if self.order < 1:
            raise ConfigError("interaction order must be >= 1")
        if self.cv_folds < 2:
            raise ConfigError("cross-validation needs at least 2 folds")
        if len(self.knn_grid) == 0:
            raise ConfigError("knn grid must be nonempty")
        # ppr_fixed with terms=None means "coalition size" in the separate
        # paradigm; a direct fit still requires an explicit term count

    @property
    def label(self) -> str:
        if self.kind == "poly":
            return f"poly{self.degree}"
        if self.kind == "lm_inter":
            return f"lm_inter{self.order}"
        if self.kind == "poly_inter":
            return f"poly_inter{self.degree}"
        return self.kind
