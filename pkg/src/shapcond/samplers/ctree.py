"""Conditional inference trees as per-coalition sampling pools.

For each coalition S a binary tree is grown on the training data with x_S
as inputs and the multivariate x_Sbar as response.  At every node the
splitting feature is chosen by a significance test: Fisher-z transformed
Pearson correlations against each response dimension, the maximum
|statistic| converted to a p-value under the max-of-normals null, then
Bonferroni-corrected over candidate features.  Growth stops when the
smallest adjusted p-value exceeds alpha or the node is too small.  The
split point maximizes the standardized two-sample mean difference over
response dimensions.

Sampling routes x*_S to its leaf, resamples leaf rows with replacement and
collapses duplicates into frequency weights.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import ndtr

from ..coalitions import Coalition, nontrivial_coalitions
from .base import ConditionalSampler, WeightedSamples

__all__ = ["CtreeNode", "CtreeModel", "ctree_fit", "ctree_draw", "CtreeSampler"]

DEFAULT_ALPHA = 0.05
DEFAULT_MINBUCKET = 7


@dataclass
class CtreeNode:
    rows: np.ndarray
    feature: int | None = None      # local index into the coalition members
    split_value: float = np.nan
    p_value: float = np.nan
    left: "CtreeNode | None" = None
    right: "CtreeNode | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.feature is None


@dataclass
class CtreeModel:
    coalition: Coalition
    root: CtreeNode
    alpha: float
    minbucket: int
    n_train: int = 0
    leaves: list = field(default_factory=list)

    def route(self, x_star_s: np.ndarray) -> CtreeNode:
        node = self.root
        x_star_s = np.asarray(x_star_s, dtype=float).ravel()
        while not node.is_leaf:
            node = node.left if x_star_s[node.feature] <= node.split_value else node.right
        return node

    @property
    def n_leaves(self) -> int:
        return len(self.leaves)


def _fisher_z(r: np.ndarray, n: int) -> np.ndarray:
    r = np.clip(r, -1.0 + 1e-15, 1.0 - 1e-15)
    return np.sqrt(n - 3.0) * np.arctanh(r)


def _max_abs_normal_pvalue(z_max: float, d: int) -> float:
    """P(max of d |N(0,1)| >= z_max)."""
    inner = 2.0 * float(ndtr(z_max)) - 1.0
    if inner <= 0.0:
        return 1.0
    return float(-np.expm1(d * np.log(inner)))


def _select_feature(feats: np.ndarray, resp: np.ndarray, alpha: float):
    """(feature index, adjusted p) for the strongest association, or None."""
    n = feats.shape[0]
    if n < 4:
        return None
    f_sd = feats.std(axis=0)
    r_sd = resp.std(axis=0)
    cand = np.flatnonzero(f_sd > 0)
    resp_dims = np.flatnonzero(r_sd > 0)
    if cand.size == 0 or resp_dims.size == 0:
        return None
    fc = (feats[:, cand] - feats[:, cand].mean(axis=0)) / f_sd[cand]
    rc = (resp[:, resp_dims] - resp[:, resp_dims].mean(axis=0)) / r_sd[resp_dims]
    corr = fc.T @ rc / n
    z = np.abs(_fisher_z(corr, n)).max(axis=1)
    p = np.array([_max_abs_normal_pvalue(zj, resp_dims.size) for zj in z])
    p_adj = np.minimum(1.0, p * cand.size)
    best = int(np.argmin(p_adj))
    if p_adj[best] > alpha:
        return None
    return int(cand[best]), float(p_adj[best])


def _best_split(col: np.ndarray, resp: np.ndarray, minbucket: int):
    """Cut value maximizing the standardized two-sample statistic, or None."""
    n = col.size
    order = np.argsort(col, kind="stable")
    sorted_col = col[order]
    sorted_resp = resp[order]
    cum = np.cumsum(sorted_resp, axis=0)
    total = cum[-1]
    ks = np.arange(minbucket, n - minbucket + 1)
    if ks.size == 0:
        return None
    valid = sorted_col[ks - 1] < sorted_col[ks]  # only between distinct values
    ks = ks[valid]
    if ks.size == 0:
        return None
    var = sorted_resp.var(axis=0)
    var = np.where(var > 0, var, 1.0)
    left_mean = cum[ks - 1] / ks[:, None]
    right_mean = (total - cum[ks - 1]) / (n - ks)[:, None]
    scale = np.sqrt(var[None, :] * (1.0 / ks + 1.0 / (n - ks))[:, None])
    stat = (np.abs(left_mean - right_mean) / scale).max(axis=1)
    k = ks[int(np.argmax(stat))]
    return 0.5 * (sorted_col[k - 1] + sorted_col[k])


def _grow(rows: np.ndarray, feats: np.ndarray, resp: np.ndarray, alpha: float,
          minbucket: int, leaves: list) -> CtreeNode:
    node = CtreeNode(rows=rows)
    if rows.size < 2 * minbucket:
        leaves.append(node)
        return node
    picked = _select_feature(feats[rows], resp[rows], alpha)
    if picked is None:
        leaves.append(node)
        return node
    j, p_adj = picked
    split = _best_split(feats[rows, j], resp[rows], minbucket)
    if split is None:
        leaves.append(node)
        return node
    node.feature, node.split_value, node.p_value = j, float(split), p_adj
    go_left = feats[rows, j] <= split
    node.left = _grow(rows[go_left], feats, resp, alpha, minbucket, leaves)
    node.right = _grow(rows[~go_left], feats, resp, alpha, minbucket, leaves)
    return node


def ctree_fit(x_train: np.ndarray, coalition: Coalition, alpha: float = DEFAULT_ALPHA,
              minbucket: int = DEFAULT_MINBUCKET) -> CtreeModel:
    x_train = np.atleast_2d(np.asarray(x_train, dtype=float))
    feats = x_train[:, coalition.members()]
    resp = x_train[:, coalition.complement().members()]
    leaves: list = []
    root = _grow(np.arange(x_train.shape[0]), feats, resp, alpha, minbucket, leaves)
    return CtreeModel(coalition=coalition, root=root, alpha=alpha,
                      minbucket=minbucket, n_train=x_train.shape[0], leaves=leaves)


def ctree_draw(model: CtreeModel, x_train: np.ndarray, x_star_s: np.ndarray, k: int,
               rng: np.random.Generator) -> WeightedSamples:
    leaf = model.route(x_star_s)
    picks = leaf.rows[rng.integers(0, leaf.rows.size, size=k)]
    unique_rows, counts = np.unique(picks, return_counts=True)
    cols = model.coalition.complement().members()
    return WeightedSamples(samples=x_train[np.ix_(unique_rows, cols)],
                           weights=counts.astype(float))


class CtreeSampler(ConditionalSampler):
    name = "ctree"

    def __init__(self, x_train: np.ndarray, alpha: float = DEFAULT_ALPHA,
                 minbucket: int = DEFAULT_MINBUCKET):
        self.x_train = np.atleast_2d(np.asarray(x_train, dtype=float))
        m = self.x_train.shape[1]
        self.models = {c.bits: ctree_fit(self.x_train, c, alpha, minbucket)
                       for c in nontrivial_coalitions(m)}

    def draw(self, coalition: Coalition, x_star: np.ndarray, k: int,
             rng: np.random.Generator) -> WeightedSamples:
        model = self.models[coalition.bits]
        x_star_s = np.asarray(x_star)[coalition.members()]
        return ctree_draw(model, self.x_train, x_star_s, k, rng)
