"""Fluctuations of order statistics from replicated samples.

The mean absolute fluctuation (1/n) sum_i E|X_(i) - E X_(i)| of the sorted
sample sandwiches E W1(F_n, F) between half and twice its value.
"""

import logging

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from conclab.core.exceptions import EstimationError

logger = logging.getLogger(__name__)


class OrderedStatFluctuation(BaseModel):
    """Per-rank mean absolute deviations of the order statistics.

    Attributes:
        deviations: Estimated E|X_(i) - E X_(i)| for each rank i.
        normalized_sum: (1/n) times the sum of the deviations.
        stderr: Standard error of normalized_sum across replicates.
        replications: Number of replicates used.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    deviations: np.ndarray = Field(description="Per-rank mean absolute deviations")
    normalized_sum: float = Field(description="Average of the deviations")
    stderr: float = Field(ge=0.0, description="Standard error of the average")
    replications: int = Field(ge=2)


def ordered_stat_fluctuation(samples: np.ndarray) -> OrderedStatFluctuation:
    """Estimate E|X_(i) - E X_(i)| from R replicated samples of size n.

    Args:
        samples: Array of shape (R, n); rows are sorted here if needed.

    Returns:
        The per-rank deviations and their normalized sum.

    Raises:
        ValueError: If samples is not a matrix.
        EstimationError: If fewer than two replicates are given.

    Example:
        >>> result = ordered_stat_fluctuation(np.array([[0.0, 0.0], [1.0, 1.0]]))
        >>> result.deviations.tolist()
        [0.5, 0.5]
    """
    data = np.asarray(samples, dtype=float)
    if data.ndim != 2:
        raise ValueError("samples must be a matrix of shape (R, n)")
    if data.shape[0] < 2:
        raise EstimationError(
            "at least two replicates are required",
            details={"replicates": int(data.shape[0])},
        )
    ordered = np.sort(data, axis=1)
    centered = np.abs(ordered - ordered.mean(axis=0))
    deviations = centered.mean(axis=0)
    per_replicate = centered.mean(axis=1)
    stderr = float(per_replicate.std(ddof=1) / np.sqrt(data.shape[0]))
    return OrderedStatFluctuation(
        deviations=deviations,
        normalized_sum=float(deviations.mean()),
        stderr=stderr,
        replications=data.shape[0],
    )
