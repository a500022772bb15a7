"""True response surfaces used by the simulation benchmark.

Eight-feature designs: linear models with optional pairwise product
interactions, and additive models that replace the leading linear terms
with cosines, optionally plus nonlinear interaction pairs
g(a, b) = a*b + a*b^2 + b*a^2.  Coefficients default to the benchmark
values; noise is added by the data generators, never here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ConfigError, InvalidDimensionError

__all__ = ["TrueModelSpec", "eval_true_model", "TRUE_MODEL_NAMES", "pair_interaction"]

DEFAULT_BETA = (1.0, 0.2, -0.8, 1.0, 0.5, -0.8, 0.6, -0.7, -0.6)
DEFAULT_GAMMA = (0.8, -1.0, -2.0, 1.5)

# (number of leading cosine terms, number of interaction pairs)
_LM = {"lm_no": 0, "lm_some": 1, "lm_more": 2, "lm_many": 3, "lm_numerous": 4}
_GAM_COS = {"gam_one": 1, "gam_two": 2, "gam_three": 3, "gam_four": 4, "gam_five": 5,
            "gam_all": 8}
_GAM_INTER = {"gam_some": 1, "gam_more": 2, "gam_many": 3, "gam_numerous": 4}

TRUE_MODEL_NAMES = tuple(_LM) + tuple(_GAM_COS) + tuple(_GAM_INTER)

# interaction pairs enter in the fixed order (x1,x2), (x3,x4), (x5,x6), (x7,x8)
_PAIRS = ((0, 1), (2, 3), (4, 5), (6, 7))


def pair_interaction(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """g(a, b) = a b + a b^2 + b a^2."""
    return a * b + a * b ** 2 + b * a ** 2


@dataclass(frozen=True)
class TrueModelSpec:
    name: str
    beta: tuple = DEFAULT_BETA
    gamma: tuple = DEFAULT_GAMMA
    noise_sd: float = 1.0

    def __post_init__(self):
        if self.name not in TRUE_MODEL_NAMES:
            raise ConfigError(f"unknown true model {self.name!r}; "
                              f"expected one of {TRUE_MODEL_NAMES}")
        if len(self.beta) != 9 or len(self.gamma) != 4:
            raise ConfigError("beta must have 9 entries (intercept first), gamma 4")

    @property
    def n_cos_terms(self) -> int:
        if self.name in _LM:
            return 0
        if self.name in _GAM_COS:
            return _GAM_COS[self.name]
        return 8  # interaction designs extend the all-cosine model

    @property
    def n_interactions(self) -> int:
        if self.name in _LM:
            return _LM[self.name]
        if self.name in _GAM_INTER:
            return _GAM_INTER[self.name]
        return 0

    @property
    def interaction_pairs(self) -> tuple:
        return _PAIRS[:self.n_interactions]

    @property
    def uses_products_only(self) -> bool:
        """Linear designs use plain products; gam designs use g(a, b)."""
        return self.name in _LM


def eval_true_model(spec: TrueModelSpec, x: np.ndarray) -> np.ndarray:
    """Deterministic response surface at x (one row or a matrix of rows).

    The designs are defined on 8 features; fewer features evaluate the
    truncated model (leading terms and the interaction pairs that fit).
    """
    x = np.atleast_2d(np.asarray(x, dtype=float))
    m = x.shape[1]
    if not 1 <= m <= 8:
        raise InvalidDimensionError(f"true models are defined on up to 8 features, got {m}")
    beta = np.asarray(spec.beta)
    gamma = np.asarray(spec.gamma)
    n_cos = min(spec.n_cos_terms, m)
    out = np.full(x.shape[0], beta[0])
    if n_cos:
        out += np.cos(x[:, :n_cos]) @ beta[1:n_cos + 1]
    if n_cos < m:
        out += x[:, n_cos:m] @ beta[n_cos + 1:m + 1]
    for k, (i, j) in enumerate(spec.interaction_pairs):
        if j >= m:
            continue
        if spec.uses_products_only:
            out += gamma[k] * x[:, i] * x[:, j]
        else:
            out += gamma[k] * pair_interaction(x[:, i], x[:, j])
    return out
