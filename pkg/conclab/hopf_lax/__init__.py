"""Hopf-Lax infimum and supremum convolutions for conclab.

This module exposes GridFunction, the operators Q_t and P_t with their
semigroup and Hamilton-Jacobi checks, the empirical lifting oracle and the
infimum-convolution form of the log-Sobolev inequality.
"""

from conclab.hopf_lax.grid import GridFunction, grid_tolerance
from conclab.hopf_lax.lifting import MAX_ORACLE_DIMENSION, empirical_lift_check
from conclab.hopf_lax.lsi import INFCONV_TOLERANCE, infconv_lsi_check
from conclab.hopf_lax.operators import (
    hamilton_jacobi_residual,
    inf_convolution,
    semigroup_check,
    sup_convolution,
)

__all__ = [
    "GridFunction",
    "INFCONV_TOLERANCE",
    "MAX_ORACLE_DIMENSION",
    "empirical_lift_check",
    "grid_tolerance",
    "hamilton_jacobi_residual",
    "inf_convolution",
    "infconv_lsi_check",
    "semigroup_check",
    "sup_convolution",
]
