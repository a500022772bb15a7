from .base import (ConditionalSampler, WeightedSamples, contribution_matrix,
                   dump_samples_csv, estimate_contributions)
from .ctree import CtreeModel, CtreeNode, CtreeSampler, ctree_draw, ctree_fit
from .empirical import EmpiricalSampler, empirical_weights
from .independence import IndependenceSampler, independence_draw
from .parametric import BurrSampler, CopulaSampler, GaussianSampler, GHSampler

__all__ = [
    "ConditionalSampler", "WeightedSamples", "contribution_matrix", "dump_samples_csv",
    "estimate_contributions",
    "CtreeModel", "CtreeNode", "CtreeSampler", "ctree_draw", "ctree_fit",
    "EmpiricalSampler", "empirical_weights",
    "IndependenceSampler", "independence_draw",
    "BurrSampler", "CopulaSampler", "GaussianSampler", "GHSampler",
]
