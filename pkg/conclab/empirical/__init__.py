"""Empirical distribution functions and distances for conclab.

This module exposes EmpiricalCdf, the Kolmogorov and W1 distances, the
partition bound and the order-statistics fluctuation estimate.
"""

from conclab.empirical.cdf import EmpiricalCdf, build_empirical
from conclab.empirical.metrics import (
    CdfLike,
    integrate_cdf,
    kolmogorov_distance,
    w1_empirical,
    w1_general,
)
from conclab.empirical.ordered import OrderedStatFluctuation, ordered_stat_fluctuation
from conclab.empirical.partition import IntervalPartition, partition_l1_bound

__all__ = [
    "CdfLike",
    "EmpiricalCdf",
    "IntervalPartition",
    "OrderedStatFluctuation",
    "build_empirical",
    "integrate_cdf",
    "kolmogorov_distance",
    "ordered_stat_fluctuation",
    "partition_l1_bound",
    "w1_empirical",
    "w1_general",
]
