"""Bound catalog for conclab.

Each module groups entries by the statistic they estimate: linear
statistics, distances between F_n and F, pointwise values of F_n, Wigner
spectra, and calibration or coordinate-level checks.
"""

from typing import List

from conclab.verifier.base import BoundCheck
from conclab.verifier.catalog.linear import linear_checks
from conclab.verifier.catalog.matrix import matrix_checks
from conclab.verifier.catalog.pointwise import pointwise_checks
from conclab.verifier.catalog.synthetic import synthetic_checks
from conclab.verifier.catalog.transport import transport_checks


def all_checks() -> List[BoundCheck]:
    """Fresh instances of every catalog entry, in catalog order."""
    return [
        *transport_checks(),
        *linear_checks(),
        *pointwise_checks(),
        *matrix_checks(),
        *synthetic_checks(),
    ]


__all__ = [
    "all_checks",
    "linear_checks",
    "matrix_checks",
    "pointwise_checks",
    "synthetic_checks",
    "transport_checks",
]
