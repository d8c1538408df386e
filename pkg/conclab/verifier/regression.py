"""Log-log rate regressions for bounds with unspecified absolute constants.

A bound of the form E[stat] <= C * shape(n) with unknown C is checked through
the decay exponent: the least-squares slope of log(stat) on log(n) must not
exceed the slope of log(shape) by more than RATE_TOLERANCE. The ratio
stat / shape is reported alongside so its boundedness over the sweep can be
inspected.
"""

import logging
import math
from typing import List, Sequence

from pydantic import BaseModel, ConfigDict, Field

from conclab.core.exceptions import DegenerateRegressionError
from conclab.verifier.stats import ols_slope

logger = logging.getLogger(__name__)

RATE_TOLERANCE = 0.1
MIN_DISTINCT_N = 3


class RatePoint(BaseModel):
    """One point of a decay curve.

    Attributes:
        n: Sample size or matrix dimension.
        lhs: Estimated statistic.
        stderr: Its standard error.
        shape: Right-side shape without its absolute constant.
    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    lhs: float
    stderr: float = Field(default=0.0, ge=0.0)
    shape: float

    @property
    def ratio(self) -> float:
        return self.lhs / self.shape if self.shape > 0 else math.nan


class RateFit(BaseModel):
    """Result of a log-log regression.

    Attributes:
        slope: Fitted exponent of n.
        intercept: Fitted log-constant.
        target_slope: Exponent the bound predicts.
        passed: slope <= target + tolerance (and >= target - tolerance when
            two-sided).
    """

    model_config = ConfigDict(frozen=True)

    slope: float
    intercept: float
    target_slope: float
    passed: bool
    tolerance: float = RATE_TOLERANCE


def _check_points(n_values: Sequence[int], estimates: Sequence[float]) -> None:
    if len(n_values) != len(estimates):
        raise DegenerateRegressionError(
            "n values and estimates differ in length",
            details={"n": len(n_values), "estimates": len(estimates)},
        )
    if len(set(n_values)) < MIN_DISTINCT_N:
        raise DegenerateRegressionError(
            details={"reason": f"need >= {MIN_DISTINCT_N} distinct n"}
        )
    bad = [v for v in estimates if not (math.isfinite(v) and v > 0)]
    if bad:
        raise DegenerateRegressionError(
            details={"reason": "nonpositive estimate", "values": bad}
        )


def fit_rate(
    n_values: Sequence[int],
    estimates: Sequence[float],
    target_slope: float,
    tolerance: float = RATE_TOLERANCE,
    two_sided: bool = False,
) -> RateFit:
    """Least squares of log(estimate) on log(n).

    Args:
        n_values: Sweep values (at least three distinct).
        estimates: Positive estimates, one per n.
        target_slope: Predicted exponent.
        tolerance: Allowed excess of the slope over the target.
        two_sided: Also require slope >= target - tolerance.

    Returns:
        The fit with its pass flag.

    Raises:
        DegenerateRegressionError: On nonpositive estimates or too few n.

    Example:
        >>> ns = [32, 64, 128]
        >>> fit = fit_rate(ns, [n ** (-2 / 3) for n in ns], -2 / 3)
        >>> round(fit.slope, 12), fit.passed
        (-0.666666666667, True)
    """
    _check_points(n_values, estimates)
    slope, intercept = ols_slope(
        [math.log(n) for n in n_values], [math.log(v) for v in estimates]
    )
    passed = slope <= target_slope + tolerance
    if two_sided:
        passed = passed and slope >= target_slope - tolerance
    return RateFit(
        slope=slope,
        intercept=intercept,
        target_slope=target_slope,
        passed=passed,
        tolerance=tolerance,
    )


def shape_slope(points: Sequence[RatePoint]) -> float:
    """Exponent of the shape over the sweep, fitted the same way as the data."""
    values = [p.shape for p in points]
    _check_points([p.n for p in points], values)
    slope, _ = ols_slope(
        [math.log(p.n) for p in points], [math.log(v) for v in values]
    )
    return slope


def curve_rows(bound_id: str, points: Sequence[RatePoint]) -> List[list]:
    """Plot-ready rows (bound_id, n, lhs, stderr, rhs, ratio); rhs is the shape."""
    return [[bound_id, p.n, p.lhs, p.stderr, p.shape, p.ratio] for p in points]
