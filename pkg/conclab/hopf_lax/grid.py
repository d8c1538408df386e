"""Grid functions for the Hopf-Lax operators.

This module provides GridFunction, a real function sampled on the uniform
grid x0 + k dx, and the grid tolerance used by every Hopf-Lax property
check.
"""

import logging
from typing import Callable, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

logger = logging.getLogger(__name__)


class GridFunction(BaseModel):
    """Function values on a uniform grid.

    Between nodes the function is evaluated by linear interpolation; outside
    the grid it takes the ``outside`` value passed to ``evaluate`` (+inf is
    the convention for infimum convolutions, -inf for supremum ones).

    Attributes:
        x0: First node.
        dx: Grid step.
        values: Values at the nodes; entries are finite or +/-inf.

    Example:
        >>> g = GridFunction.from_callable(lambda x: x**2, -1.0, 1.0, 0.5)
        >>> g.values.tolist()
        [1.0, 0.25, 0.0, 0.25, 1.0]
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    x0: float = Field(description="First grid node")
    dx: float = Field(gt=0.0, description="Grid step")
    values: np.ndarray = Field(description="Values at the nodes")

    @field_validator("values", mode="before")
    @classmethod
    def _as_array(cls, value) -> np.ndarray:
        array = np.array(value, dtype=float).reshape(-1)
        if array.size < 2:
            raise ValueError("a grid function needs at least two nodes")
        if np.any(np.isnan(array)):
            raise ValueError("grid values must not be NaN")
        array.setflags(write=False)
        return array

    @classmethod
    def from_callable(
        cls, func: Callable[[np.ndarray], np.ndarray], lo: float, hi: float, dx: float
    ) -> "GridFunction":
        """Sample a vectorized function on the nodes lo, lo + dx, ..., <= hi."""
        if not hi > lo:
            raise ValueError("grid needs lo < hi")
        if dx <= 0:
            raise ValueError("grid step must be positive")
        count = int(np.floor((hi - lo) / dx + 1e-9)) + 1
        nodes = lo + dx * np.arange(count)
        return cls(x0=lo, dx=dx, values=np.asarray(func(nodes), dtype=float))

    @property
    def size(self) -> int:
        return int(self.values.size)

    @property
    def nodes(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.size)

    @property
    def x_end(self) -> float:
        return self.x0 + self.dx * (self.size - 1)

    def with_values(self, values: np.ndarray) -> "GridFunction":
        """Same grid, new values."""
        return GridFunction(x0=self.x0, dx=self.dx, values=values)

    def __neg__(self) -> "GridFunction":
        return self.with_values(-self.values)

    def evaluate(self, x, outside: float = np.inf):
        """Linear interpolation at x, ``outside`` beyond the grid ends."""
        points = np.asarray(x, dtype=float)
        position = (points - self.x0) / self.dx
        inside = (position >= -1e-9) & (position <= self.size - 1 + 1e-9)
        position = np.clip(position, 0.0, self.size - 1)
        left = np.minimum(np.floor(position).astype(int), self.size - 2)
        frac = position - left
        lo, hi = self.values[left], self.values[left + 1]
        # exact node hits must not mix in an infinite neighbour
        with np.errstate(invalid="ignore"):
            blend = lo + frac * (hi - lo)
        inner = np.where(frac == 0.0, lo, np.where(frac == 1.0, hi, blend))
        result = np.where(inside, inner, outside)
        return float(result) if np.ndim(x) == 0 else result

    def max_slope(self) -> float:
        """Largest |difference quotient| between neighbouring finite nodes."""
        steps = np.diff(self.values)
        finite = np.isfinite(steps)
        if not np.any(finite):
            return 0.0
        return float(np.max(np.abs(steps[finite])) / self.dx)

    def oscillation(self) -> float:
        finite = self.values[np.isfinite(self.values)]
        if finite.size == 0:
            return 0.0
        return float(finite.max() - finite.min())

    def window(self, fraction: float = 0.5) -> slice:
        """Slice of the central ``fraction`` of the nodes."""
        margin = int(self.size * (1.0 - fraction) / 2.0)
        return slice(margin, self.size - margin)


def grid_tolerance(g: GridFunction, slope: Optional[float] = None) -> float:
    """Discretization tolerance 4 (1 + max|slope|) dx of the Hopf-Lax checks."""
    steepness = g.max_slope() if slope is None else slope
    return 4.0 * (1.0 + steepness) * g.dx
