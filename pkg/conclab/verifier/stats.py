"""Estimators and exact oracles shared by the bound catalog.

Monte Carlo means carry their standard error; frequencies use the Wilson
score interval; the value F_n(x) of a product-measure empirical CDF has an
exact Poisson-binomial (or, under comonotone coupling, step) law.
"""

import logging
import math
from typing import Callable, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator
from scipy import special, stats

from conclab.core.exceptions import EstimationError
from conclab.distributions.base import AnalyticDistribution

logger = logging.getLogger(__name__)

THRESHOLD_RTOL = 1e-12


def mean_and_stderr(values: Sequence[float]) -> Tuple[float, float]:
    """Sample mean and its standard error.

    Example:
        >>> mean_and_stderr([1.0, 3.0])
        (2.0, 1.0)
    """
    data = np.asarray(values, dtype=float).reshape(-1)
    if data.size < 2:
        raise EstimationError(
            "at least two values are required", details={"size": int(data.size)}
        )
    return float(data.mean()), float(data.std(ddof=1) / math.sqrt(data.size))


def wilson_interval(successes: int, trials: int, z: float) -> Tuple[float, float]:
    """Wilson score interval for a binomial proportion at z standard errors."""
    if trials < 1:
        raise EstimationError("trials must be positive", details={"trials": trials})
    if not 0 <= successes <= trials:
        raise EstimationError(
            "successes must lie in [0, trials]",
            details={"successes": successes, "trials": trials},
        )
    p = successes / trials
    if z == 0:
        return p, p
    denom = 1.0 + z * z / trials
    center = (p + z * z / (2.0 * trials)) / denom
    half = z * math.sqrt(p * (1.0 - p) / trials + z * z / (4.0 * trials**2)) / denom
    return max(0.0, center - half), min(1.0, center + half)


def frequency(indicator: Sequence[bool], z: float) -> Tuple[float, float]:
    """Observed frequency and a standard error read off the Wilson interval.

    The returned stderr satisfies ``p + z * stderr = wilson upper``, so the
    shared pass rule with ``slack_sigmas = z`` compares the Wilson upper end
    with the right side. With z = 0 the plain binomial error is returned.
    """
    hits = np.asarray(indicator, dtype=bool).reshape(-1)
    trials = int(hits.size)
    successes = int(hits.sum())
    if trials < 1:
        raise EstimationError("a frequency needs at least one trial")
    p = successes / trials
    if z <= 0:
        return p, math.sqrt(p * (1.0 - p) / trials)
    upper = wilson_interval(successes, trials, z)[1]
    return p, max(upper - p, 0.0) / z


def log_mean_exp(values: Sequence[float], t: float) -> Tuple[float, float]:
    """log E e^{t V} estimated from samples of V, with a delta-method error."""
    data = t * np.asarray(values, dtype=float).reshape(-1)
    value = float(special.logsumexp(data) - math.log(data.size))
    ratios = np.exp(data - value)
    return value, float(ratios.std(ddof=1) / math.sqrt(data.size))


def entropy_of_square(values: Sequence[float]) -> Tuple[float, float]:
    """Ent[g^2] = E g^2 log g^2 - E g^2 log E g^2 from samples of g."""
    squares = np.asarray(values, dtype=float).reshape(-1) ** 2
    plog = special.xlogy(squares, squares)
    second = float(squares.mean())
    value = float(plog.mean()) - float(special.xlogy(second, second))
    influence = plog - (math.log(second) + 1.0) * squares if second > 0 else plog
    return value, float(influence.std(ddof=1) / math.sqrt(squares.size))


def gaussian_abs_moment(sd: float, p: float) -> float:
    """E|Z|^p for Z ~ N(0, sd^2)."""
    return sd**p * 2.0 ** (p / 2.0) * special.gamma((p + 1.0) / 2.0) / math.sqrt(
        math.pi
    )


def gaussian_two_sided_tail(sd: float, h: float) -> float:
    """P{|Z| >= h} for Z ~ N(0, sd^2)."""
    return float(2.0 * stats.norm.sf(h / sd))


def poisson_binomial_pmf(probs: Sequence[float]) -> np.ndarray:
    """Law of a sum of independent Bernoulli(p_i) variables.

    Example:
        >>> poisson_binomial_pmf([0.5, 0.5]).tolist()
        [0.25, 0.5, 0.25]
    """
    p = np.clip(np.asarray(probs, dtype=float).reshape(-1), 0.0, 1.0)
    if p.size and np.ptp(p) == 0:
        return stats.binom.pmf(np.arange(p.size + 1), p.size, p[0])
    pmf = np.zeros(p.size + 1)
    pmf[0] = 1.0
    for i, prob in enumerate(p):
        shifted = pmf[: i + 1] * prob
        pmf[: i + 1] *= 1.0 - prob
        pmf[1 : i + 2] += shifted
    return pmf


def comonotone_count_pmf(
    law: AnalyticDistribution, thresholds: Sequence[float]
) -> np.ndarray:
    """Law of K = #{i : xi <= u_i} for a single draw xi of ``law``."""
    ordered = np.sort(np.asarray(thresholds, dtype=float))[::-1]
    at_least = np.concatenate([[1.0], np.asarray(law.cdf(ordered)), [0.0]])
    return np.clip(at_least[:-1] - at_least[1:], 0.0, None)


class PointLaw(BaseModel):
    """Law of a scalar statistic, exact or empirical.

    Exact laws come from an oracle (finite support with weights) and report
    zero standard errors; empirical laws are R equally weighted replications.

    Attributes:
        values: Support points or replicated values.
        weights: Probabilities summing to one.
        exact: Whether the law is an exact oracle.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    values: np.ndarray
    weights: np.ndarray
    exact: bool = Field(default=False)

    @field_validator("values", "weights", mode="before")
    @classmethod
    def _as_array(cls, value) -> np.ndarray:
        array = np.array(value, dtype=float).reshape(-1)
        array.setflags(write=False)
        return array

    @classmethod
    def from_samples(cls, values: Sequence[float]) -> "PointLaw":
        data = np.asarray(values, dtype=float).reshape(-1)
        if data.size < 2:
            raise EstimationError(
                "at least two replications are required",
                details={"size": int(data.size)},
            )
        return cls(values=data, weights=np.full(data.size, 1.0 / data.size))

    @classmethod
    def from_pmf(cls, values: Sequence[float], pmf: Sequence[float]) -> "PointLaw":
        weights = np.asarray(pmf, dtype=float)
        return cls(values=values, weights=weights / weights.sum(), exact=True)

    @property
    def replications(self) -> int:
        return int(self.values.size)

    def expect(self, func: Callable[[np.ndarray], np.ndarray]) -> Tuple[float, float]:
        """E func(V) and its standard error."""
        mapped = np.asarray(func(self.values), dtype=float)
        if self.exact:
            return float(self.weights @ mapped), 0.0
        return mean_and_stderr(mapped)

    def log_mgf(self, t: float, center: float) -> Tuple[float, float]:
        """log E e^{t (V - center)}."""
        shifted = self.values - center
        if self.exact:
            positive = self.weights > 0
            value = special.logsumexp(t * shifted[positive], b=self.weights[positive])
            return float(value), 0.0
        return log_mean_exp(shifted, t)

    def tail(
        self, threshold: float, center: float, z: float = 0.0
    ) -> Tuple[float, float]:
        """P{|V - center| >= threshold}.

        The threshold is relaxed by a relative 1e-12 so that lattice values
        sitting exactly on it are counted.
        """
        level = threshold - THRESHOLD_RTOL * max(1.0, abs(threshold))
        hits = np.abs(self.values - center) >= level
        if self.exact:
            return float(self.weights[hits].sum()), 0.0
        return frequency(hits, z)


def pointwise_law_exact(
    law: AnalyticDistribution,
    x: float,
    shifts: np.ndarray,
    coupling: str,
) -> PointLaw:
    """Exact law of F_n(x) for n shifted copies of ``law``."""
    n = int(shifts.size)
    thresholds = x - shifts
    if coupling == "comonotone":
        pmf = comonotone_count_pmf(law, thresholds)
    else:
        pmf = poisson_binomial_pmf(np.asarray(law.cdf(thresholds), dtype=float))
    return PointLaw.from_pmf(np.arange(n + 1) / n, pmf)


def ols_slope(x: Sequence[float], y: Sequence[float]) -> Tuple[float, float]:
    """Ordinary least squares slope and intercept of y on x."""
    fit = stats.linregress(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    return float(fit.slope), float(fit.intercept)

