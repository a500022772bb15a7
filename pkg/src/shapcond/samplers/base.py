"""Common machinery for Monte Carlo contribution estimation.

A conditional sampler turns (coalition, conditioning values) into weighted
draws of the unobserved features.  ``estimate_contributions`` assembles the
full feature vectors, evaluates the model once per unique draw, and reduces
to the weighted-average contribution estimate; the empty and grand
coalition rows are pinned to phi_0 and f(x*) exactly.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from ..coalitions import Coalition, enumerate_coalitions
from ..errors import NumericalError
from ..numerics import substream
from ..shapley import ContributionMatrix

__all__ = ["WeightedSamples", "ConditionalSampler", "estimate_contributions",
           "contribution_matrix", "dump_samples_csv"]


@dataclass
class WeightedSamples:
    """K* draws of x_Sbar with positive weights (unit weights for plain MC)."""

    samples: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        self.samples = np.atleast_2d(np.asarray(self.samples, dtype=float))
        self.weights = np.asarray(self.weights, dtype=float).ravel()
        if self.samples.shape[0] != self.weights.size:
            raise ValueError("weights must match the number of sample rows")
        if self.weights.size == 0:
            raise ValueError("need at least one weighted sample")
        total = self.weights.sum()
        if not np.isfinite(total) or total <= 0:
            raise ValueError("weights must sum to a positive finite value")

    @property
    def k_star(self) -> int:
        return self.weights.size


class ConditionalSampler:
    """Interface for the Monte Carlo estimator family.

    Implementations are immutable once fitted and safe to share across
    threads; all randomness comes from the generator handed to ``draw``.
    """

    name: str = "sampler"

    def draw(self, coalition: Coalition, x_star: np.ndarray, k: int,
             rng: np.random.Generator) -> WeightedSamples:
        raise NotImplementedError


def _assemble_full(coalition: Coalition, x_star: np.ndarray,
                   draws: np.ndarray) -> np.ndarray:
    full = np.empty((draws.shape[0], x_star.size))
    full[:, coalition.members()] = x_star[coalition.members()]
    full[:, coalition.complement().members()] = draws
    return full


def estimate_contributions(f, sampler: ConditionalSampler, x_star: np.ndarray,
                           m: int, k: int, phi0: float, seed: int,
                           obs_index: int = 0, timer=None) -> np.ndarray:
    """One column of the contribution matrix for a single observation.

    Randomness is keyed by (sampler name, coalition bits, observation), so
    results do not depend on scheduling.  ``timer``, when given, must
    provide a ``phase(name)`` context manager; sample generation and model
    evaluation are attributed separately.
    """
    from ..experiment.timing import NULL_TIMER
    timer = NULL_TIMER if timer is None else timer
    x_star = np.asarray(x_star, dtype=float).ravel()
    coalitions = enumerate_coalitions(m)
    column = np.empty(len(coalitions))
    column[0] = phi0
    with timer.phase("predicting"):
        column[-1] = float(np.asarray(f(x_star[None, :])).ravel()[0])
    for row, coalition in enumerate(coalitions[1:-1], start=1):
        with timer.phase("generating"):
            rng = substream(seed, sampler.name, coalition.bits, obs_index)
            ws = sampler.draw(coalition, x_star, k, rng)
        with timer.phase("predicting"):
            full = _assemble_full(coalition, x_star, ws.samples)
            fx = np.asarray(f(full), dtype=float).ravel()
            if not np.all(np.isfinite(fx)):
                raise NumericalError(
                    f"model returned non-finite values for coalition {coalition}")
            column[row] = float(np.average(fx, weights=ws.weights))
    return column


def contribution_matrix(f, sampler: ConditionalSampler, x_test: np.ndarray,
                        m: int, k: int, phi0: float, seed: int,
                        timer=None, threads: int = 1) -> ContributionMatrix:
    """Contribution matrix over test observations, optionally threaded.

    Columns are computed independently with observation-keyed substreams
    and written into their own slots, so the result is identical at any
    thread count.
    """
    x_test = np.atleast_2d(np.asarray(x_test, dtype=float))

    def column(i: int) -> np.ndarray:
        return estimate_contributions(f, sampler, x_test[i], m, k, phi0, seed,
                                      obs_index=i, timer=timer)

    n = x_test.shape[0]
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            cols = list(pool.map(column, range(n)))
    else:
        cols = [column(i) for i in range(n)]
    return ContributionMatrix(values=np.column_stack(cols), m=m)


def dump_samples_csv(path, coalition: Coalition, ws: WeightedSamples) -> None:
    """Write one coalition's generated samples for reuse or inspection."""
    feature_cols = [f"x{j + 1}" for j in coalition.complement().members()]
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["weight", *feature_cols])
        for w, row in zip(ws.weights, ws.samples):
            writer.writerow([format(w, ".10g"), *[format(v, ".10g") for v in row]])
