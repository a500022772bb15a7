from .burr import (BurrParams, burr_conditional, burr_fit, burr_log_survival, burr_logpdf,
                   burr_marginal, burr_sample)
from .copula import CopulaConditioner, CopulaModel, copula_conditional_sample, copula_fit
from .gaussian import (GaussianConditioner, GaussianParams, gaussian_conditional, gaussian_fit,
                       gaussian_sample)
from .gh import (GHParams, gh_conditional, gh_fit, gh_logpdf, gh_marginal, gh_sample, gig_mean,
                 gig_sample)
from .io import load_params, params_from_dict, params_to_dict, save_params


def mle_fit(family: str, x, **kwargs):
    """Maximum likelihood fit for the heavy-tailed families ('burr' or 'gh')."""
    if family == "burr":
        return burr_fit(x, **kwargs)
    if family == "gh":
        return gh_fit(x, **kwargs)
    raise ValueError(f"unknown family {family!r}; expected 'burr' or 'gh'")


__all__ = [
    "BurrParams", "burr_conditional", "burr_fit", "burr_log_survival", "burr_logpdf",
    "burr_marginal", "burr_sample",
    "CopulaConditioner", "CopulaModel", "copula_conditional_sample", "copula_fit",
    "GaussianConditioner", "GaussianParams", "gaussian_conditional", "gaussian_fit",
    "gaussian_sample",
    "GHParams", "gh_conditional", "gh_fit", "gh_logpdf", "gh_marginal", "gh_sample",
    "gig_mean", "gig_sample",
    "load_params", "params_from_dict", "params_to_dict", "save_params",
    "mle_fit",
]
