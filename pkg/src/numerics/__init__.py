"""Multiprecision evaluation and numerical verification (mpmath)."""

from src.numerics.qfunctions import EvalPoint, eval_rational, eval_term, phi21, qpoch_inf, theta
from src.numerics.sampling import PointSampler
from src.numerics.verify import (
    qbinomial_check,
    series_consistency,
    verify_g_ratios,
    verify_g_ratios_sampled,
    verify_symmetry,
)

__all__ = [
    "EvalPoint",
    "eval_rational",
    "eval_term",
    "phi21",
    "qpoch_inf",
    "theta",
    "PointSampler",
    "qbinomial_check",
    "series_consistency",
    "verify_g_ratios",
    "verify_g_ratios_sampled",
    "verify_symmetry",
]
