"""Machine verification of Hamming-cube isoperimetric inequalities.

Self-contained interval arithmetic, certified Gaussian special functions,
recursive dyadic partition certificates for a registry of positivity claims,
and an exhaustive small-cube oracle for independent cross-validation.
"""

from .interval import Interval, normal_cdf, normal_pdf, normal_quantile, strictly_greater
from .funcs import BetaParams, scalar_checks
from .claims import registry, run_all, run_claim

__all__ = [
    "Interval",
    "normal_cdf",
    "normal_pdf",
    "normal_quantile",
    "strictly_greater",
    "BetaParams",
    "scalar_checks",
    "registry",
    "run_all",
    "run_claim",
]

__version__ = "0.1.0"
