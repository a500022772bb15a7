from .data import (BURR_B, BURR_R, DataSpec, SimData, ar1_covariance, gen_burr_data, gen_data,
                   gen_gaussian_data)
from .metrics import efficiency_gaps, mae_metric, mse_v_metric
from .oracle import ORACLE_K, true_contribution_matrix, true_shapley_oracle
from .predictive import PREDICTIVE_KINDS, TrueBasisLm, fit_predictive_model
from .truemodels import (DEFAULT_BETA, DEFAULT_GAMMA, TRUE_MODEL_NAMES, TrueModelSpec,
                         eval_true_model, pair_interaction)

__all__ = [
    "BURR_B", "BURR_R", "DataSpec", "SimData", "ar1_covariance", "gen_burr_data", "gen_data",
    "gen_gaussian_data",
    "efficiency_gaps", "mae_metric", "mse_v_metric",
    "ORACLE_K", "true_contribution_matrix", "true_shapley_oracle",
    "PREDICTIVE_KINDS", "TrueBasisLm", "fit_predictive_model",
    "DEFAULT_BETA", "DEFAULT_GAMMA", "TRUE_MODEL_NAMES", "TrueModelSpec", "eval_true_model",
    "pair_interaction",
]
