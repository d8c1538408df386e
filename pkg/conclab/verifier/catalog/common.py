"""Statistics shared by several catalog modules."""

import logging
import math
from typing import Optional, Tuple

import numpy as np

from conclab.core.config import MonteCarloPlan
from conclab.core.exceptions import ScenarioError
from conclab.core.streams import MAIN_STREAM
from conclab.distributions.base import AnalyticDistribution
from conclab.empirical.metrics import kolmogorov_distance, w1_general
from conclab.verifier.scenario import Scenario
from conclab.verifier.stats import mean_and_stderr

logger = logging.getLogger(__name__)


def w1_values(
    scenario: Scenario,
    plan: MonteCarloPlan,
    truncation: Optional[Tuple[float, float]] = None,
    stream: int = MAIN_STREAM,
) -> np.ndarray:
    """W1(F_n, F) per replication, optionally restricted to a window."""
    F = scenario.mean_cdf()
    return np.array(
        [w1_general(emp, F, truncation) for emp in scenario.empirical(plan, stream)]
    )


def kolmogorov_values(
    scenario: Scenario,
    plan: MonteCarloPlan,
    against: Optional[AnalyticDistribution] = None,
) -> np.ndarray:
    """||F_n - F|| (or ||F_n - G|| when ``against`` is given) per replication."""
    target = scenario.mean_cdf() if against is None else against
    return np.array(
        [kolmogorov_distance(emp, target) for emp in scenario.empirical(plan)]
    )


def with_pool_error(scenario: Scenario, stderr: float, scale: float = 1.0) -> float:
    """Add the pooled-F error, scaled to the statistic, to a Monte Carlo error.

    For analytic F the pooling error is zero and stderr is returned unchanged.
    """
    return math.hypot(stderr, scale * scenario.pool_stderr())


def pooled_width(scenario: Scenario) -> float:
    """Width of the pooled spectral support; 0 for analytic F."""
    if scenario.pool_stderr() == 0.0:
        return 0.0
    lo, hi = scenario.pooled().cdf.bounds()
    return hi - lo


def mean_w1(
    scenario: Scenario,
    plan: MonteCarloPlan,
    truncation: Optional[Tuple[float, float]] = None,
) -> Tuple[float, float]:
    """E W1(F_n, F) and its error, pooled-F error included."""
    value, stderr = mean_and_stderr(w1_values(scenario, plan, truncation))
    if truncation is not None:
        width = truncation[1] - truncation[0]
    else:
        width = pooled_width(scenario)
    return value, with_pool_error(scenario, stderr, width)


def mean_kolmogorov(
    scenario: Scenario,
    plan: MonteCarloPlan,
    against: Optional[AnalyticDistribution] = None,
) -> Tuple[float, float]:
    """E||F_n - F|| (or against G) with the pooled-F error included."""
    value, stderr = mean_and_stderr(kolmogorov_values(scenario, plan, against))
    return value, with_pool_error(scenario, stderr)


def kolmogorov_mean_bound(beta: float) -> float:
    """5 beta log^(1/3)(1 + 1/beta)."""
    return 5.0 * beta * math.log1p(1.0 / beta) ** (1.0 / 3.0)


def interval_parameters(scenario: Scenario, bound_id: str) -> Tuple[float, float]:
    """The window (a, b) of an interval entry.

    Raises:
        MissingScenarioConstantError: If a or b is unset.
        ScenarioError: If a > b.
    """
    a = float(scenario.parameter("a", bound_id))
    b = float(scenario.parameter("b", bound_id))
    if a > b:
        raise ScenarioError(f"{bound_id} needs a <= b", details={"a": a, "b": b})
    return a, b
