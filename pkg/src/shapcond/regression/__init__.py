from .fitting import cv_folds, fit_regressor
from .linear import LinearBasisModel, basis_terms
from .ppr import LocalLinearSmoother, PPRModel, ppr_fit, ppr_fit_path
from .separate import SeparateModelSet, fit_separate, predict_v_separate
from .specs import RegressorSpec
from .surrogate import (DEFAULT_ROW_CAP, AugmentedDataset, SurrogateModel, augment_points,
                        build_augmented, fit_surrogate, predict_v_surrogate)

__all__ = [
    "cv_folds", "fit_regressor",
    "LinearBasisModel", "basis_terms",
    "LocalLinearSmoother", "PPRModel", "ppr_fit", "ppr_fit_path",
    "SeparateModelSet", "fit_separate", "predict_v_separate",
    "RegressorSpec",
    "DEFAULT_ROW_CAP", "AugmentedDataset", "SurrogateModel", "augment_points",
    "build_augmented", "fit_surrogate", "predict_v_surrogate",
]
