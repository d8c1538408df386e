"""Analytic reference laws for conclab.

This module exposes the AnalyticDistribution base class, the standard library
of laws and the semicircle increment bound.
"""

from conclab.distributions.base import AnalyticDistribution, bisect_quantile
from conclab.distributions.library import (
    AffineDistribution,
    Cauchy,
    Gaussian,
    Semicircle,
    ShiftMixture,
    TwoIntervalUniform,
    TwoSidedExponential,
    Uniform,
    affine,
    build_distribution,
    cauchy,
    gaussian,
    semicircle,
    semicircle_increment_bound,
    shift_mixture,
    standard_library,
    two_interval_uniform,
    two_sided_exponential,
    uniform,
)

__all__ = [
    "AffineDistribution",
    "AnalyticDistribution",
    "Cauchy",
    "Gaussian",
    "Semicircle",
    "ShiftMixture",
    "TwoIntervalUniform",
    "TwoSidedExponential",
    "Uniform",
    "affine",
    "bisect_quantile",
    "build_distribution",
    "cauchy",
    "gaussian",
    "semicircle",
    "semicircle_increment_bound",
    "shift_mixture",
    "standard_library",
    "two_interval_uniform",
    "two_sided_exponential",
    "uniform",
]
