"""Partition bound for the L1 distance between two CDFs on an interval.

On [a, b] cut into pieces of length at most h, the integral of |F - G| is at
most the sum over pieces of |integral of (F - G)| plus 2h: on each piece the
two monotone functions can cross only in a way whose total oscillation is
bounded by the increments of F and G.
"""

import logging
from typing import Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from conclab.empirical.metrics import CdfLike, integrate_cdf, w1_general

logger = logging.getLogger(__name__)


class IntervalPartition(BaseModel):
    """Partition of [a, b] into N pieces.

    Uniform by default (cut points a + (b - a) k / N); ``from_cut_points``
    builds an irregular partition whose slack uses the largest piece.

    Attributes:
        a: Left end.
        b: Right end.
        N: Number of pieces.
        points: Explicit cut points for irregular partitions.

    Example:
        >>> IntervalPartition(a=0.0, b=1.0, N=4).cut_points.tolist()
        [0.0, 0.25, 0.5, 0.75, 1.0]
    """

    model_config = ConfigDict(frozen=True)

    a: float = Field(description="Left end of the interval")
    b: float = Field(description="Right end of the interval")
    N: int = Field(ge=1, description="Number of pieces")
    points: Optional[Tuple[float, ...]] = Field(
        default=None, description="Explicit cut points, a and b included"
    )

    @model_validator(mode="after")
    def _check(self) -> "IntervalPartition":
        if not self.a < self.b:
            raise ValueError("partition needs a < b")
        if self.points is not None:
            cuts = np.asarray(self.points, dtype=float)
            if cuts.size != self.N + 1 or cuts[0] != self.a or cuts[-1] != self.b:
                raise ValueError("cut points must run from a to b with N + 1 entries")
            if np.any(np.diff(cuts) <= 0):
                raise ValueError("cut points must be strictly increasing")
        return self

    @classmethod
    def from_cut_points(cls, points: Sequence[float]) -> "IntervalPartition":
        """Build an irregular partition from strictly increasing cut points."""
        cuts = tuple(float(p) for p in points)
        if len(cuts) < 2:
            raise ValueError("at least two cut points are required")
        return cls(a=cuts[0], b=cuts[-1], N=len(cuts) - 1, points=cuts)

    @property
    def cut_points(self) -> np.ndarray:
        if self.points is not None:
            return np.asarray(self.points, dtype=float)
        return self.a + (self.b - self.a) * np.arange(self.N + 1) / self.N

    @property
    def mesh(self) -> float:
        """Length of the longest piece."""
        if self.points is None:
            return (self.b - self.a) / self.N
        return float(np.max(np.diff(self.cut_points)))


def partition_l1_bound(
    F: CdfLike, G: CdfLike, part: IntervalPartition
) -> Tuple[float, float]:
    """Both sides of the partition bound on [a, b].

    Args:
        F: First CDF.
        G: Second CDF.
        part: Partition of [a, b].

    Returns:
        (lhs, rhs) with lhs the integral of |F - G| over [a, b] and rhs the sum
        of absolute piecewise integrals of F - G plus twice the mesh.
    """
    lhs = w1_general(F, G, truncation=(part.a, part.b))
    cuts = part.cut_points
    pieces = 0.0
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        pieces += abs(integrate_cdf(F, lo, hi) - integrate_cdf(G, lo, hi))
    rhs = pieces + 2.0 * part.mesh
    logger.debug(f"[PARTITION-N={part.N}] lhs={lhs:.6g} rhs={rhs:.6g}")
    return lhs, rhs
