"""Conditional Shapley value explanations for tabular predictive models.

Monte Carlo estimators (independence, empirical, Gaussian, copula, Burr,
generalized hyperbolic, ctree) and regression estimators (separate
per-coalition models, mask-augmented surrogates) of the conditional
contribution function, a weighted-least-squares Shapley solver with an
exact brute-force oracle, and a simulation benchmark with ground-truth
MAE and MSE_v scoring.
"""

__version__ = "0.1.0"

from .coalitions import Coalition, enumerate_coalitions, nontrivial_coalitions
from .shapley import (ContributionMatrix, KernelWeightTable, ShapleyExplanation, ShapleySolver,
                      kernel_weight, shapley_exact, solve_shapley_wls)

__all__ = [
    "__version__",
    "Coalition", "enumerate_coalitions", "nontrivial_coalitions",
    "ContributionMatrix", "KernelWeightTable", "ShapleyExplanation", "ShapleySolver",
    "kernel_weight", "shapley_exact", "solve_shapley_wls",
]
