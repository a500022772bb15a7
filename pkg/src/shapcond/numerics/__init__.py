from .linalg import check_symmetric, cholesky, spd_solve, chol_with_jitter
from .margins import EmpiricalMargin, empirical_margin_fit
from .optimize import NelderMeadResult, nelder_mead
from .rng import make_rng, sample_std_normal, substream
from .special import bessel_k, log_bessel_k

__all__ = [
    "check_symmetric", "cholesky", "spd_solve", "chol_with_jitter",
    "EmpiricalMargin", "empirical_margin_fit",
    "NelderMeadResult", "nelder_mead",
    "make_rng", "sample_std_normal", "substream",
    "bessel_k", "log_bessel_k",
]
