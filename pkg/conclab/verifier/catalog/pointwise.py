"""Catalog entries on F_n at a point and on a window.

For product scenarios the law of F_n(x) is known exactly (Poisson-binomial,
or a step law under comonotone coupling), so tails, moments and Laplace
transforms of F_n(x) - F(x) are computed without sampling. Matrix scenarios
use replicated spectra and the pooled estimate of F.
"""

import logging
import math
from typing import Tuple

import numpy as np

from conclab.core.config import MonteCarloPlan
from conclab.core.exceptions import ScenarioError
from conclab.core.report import BoundReport
from conclab.matrix.spectrum import Spectrum, interval_count
from conclab.verifier.base import BoundCheck, RateCheck
from conclab.verifier.catalog.common import (
    interval_parameters,
    kolmogorov_mean_bound,
    mean_kolmogorov,
    mean_w1,
    with_pool_error,
)
from conclab.verifier.scenario import Scenario
from conclab.verifier.stats import THRESHOLD_RTOL, frequency

logger = logging.getLogger(__name__)

POINT_TAIL_RATE = 2.0 / 27.0
COUNT_RATE = 1.0 / 112.0
HENSLEY_FLOOR = 1.0 / math.sqrt(12.0)


def _cdf_at(F, x: float) -> float:
    return float(F.cdf(x))


def _point_tail(r: float) -> float:
    """2 exp(-2 r^3 / 27)."""
    return 2.0 * math.exp(-POINT_TAIL_RATE * r**3)


class PointMgfCheck(BoundCheck):
    """Laplace transform of F_n(x) - F(x) under LSI, h = sqrt(2 sigma^2 t / n).

    Upper: log E e^{t(F_n(x) - F(x))} <= t (F(x + h) - F(x)).
    Lower: log E e^{-t(F_n(x) - F(x))} <= t (F(x) - F(x - h)).
    """

    scenario_kinds = ("product", "wigner")

    def __init__(self, bound_id: str, description: str, upper: bool) -> None:
        super().__init__(bound_id, description)
        self.upper = upper

    def run(self, scenario: Scenario, plan: MonteCarloPlan) -> BoundReport:
        self.validate(scenario)
        x = float(scenario.parameter("x", self.bound_id))
        t = float(scenario.parameter("t", self.bound_id))
        sigma2 = scenario.sigma2("lsi", self.bound_id)
        h = math.sqrt(2.0 * sigma2 * t / scenario.n)
        F = scenario.mean_cdf()
        center = _cdf_at(F, x)
        if self.upper:
            rhs = t * (_cdf_at(F, x + h) - center)
        else:
            rhs = t * (center - _cdf_at(F, x - h))
        law = scenario.pointwise_law(plan, x)
        lhs, stderr = law.log_mgf(t if self.upper else -t, center)
        # the pooled F enters the centering and both rhs evaluations
        stderr = with_pool_error(scenario, stderr, 3.0 * t)
        return self.report(
            scenario,
            plan,
            lhs,
            rhs,
            stderr,
            exact=law.exact,
            metadata={"x": x, "t": t, "h": h, "sigma2": sigma2},
        )


class PointAbsCheck(BoundCheck):
    """E|F_n(x) - F(x)| <= F(x + h) - F(x - h) + log(2) / t."""

    scenario_kinds = ("product", "wigner")

    def __init__(self) -> None:
        super().__init__(
            "PROP_6_1_ABS", "E|F_n(x) - F(x)| <= F(x+h) - F(x-h) + log 2 / t"
        )

    def run(self, scenario: Scenario, plan: MonteCarloPlan) -> BoundReport:
        self.validate(scenario)
        x = float(scenario.parameter("x", self.bound_id))
        t = float(scenario.parameter("t", self.bound_id))
        sigma2 = scenario.sigma2("lsi", self.bound_id)
        h = math.sqrt(2.0 * sigma2 * t / scenario.n)
        F = scenario.mean_cdf()
        center = _cdf_at(F, x)
        rhs = _cdf_at(F, x + h) - _cdf_at(F, x - h) + math.log(2.0) / t
        law = scenario.pointwise_law(plan, x)
        lhs, stderr = law.expect(lambda v: np.abs(v - center))
        stderr = with_pool_error(scenario, stderr, 3.0)
        return self.report(
            scenario,
            plan,
            lhs,
            rhs,
            stderr,
            exact=law.exact,
            metadata={"x": x, "t": t, "h": h},
        )


class WindowL1Check(BoundCheck):
    """E int_a^b |F_n - F| <= 4 (sigma^2 (b - a) / n)^(1/3) under LSI."""

    scenario_kinds = ("product", "wigner")

    def __init__(self) -> None:
        super().__init__("COR_6_2", "E int_a^b |F_n - F| <= 4 (s2 (b - a) / n)^(1/3)")

    def run(self, scenario: Scenario, plan: MonteCarloPlan) -> BoundReport:
        self.validate(scenario)
        a, b = interval_parameters(scenario, self.bound_id)
        sigma2 = scenario.sigma2("lsi", self.bound_id)
        rhs = 4.0 * (sigma2 * (b - a) / scenario.n) ** (1.0 / 3.0)
        meta = {"a": a, "b": b, "sigma2": sigma2}
        if a == b:
            return self.report(scenario, plan, 0.0, rhs, exact=True, metadata=meta)
        lhs, stderr = mean_w1(scenario, plan, truncation=(a, b))
        return self.report(scenario, plan, lhs, rhs, stderr, metadata=meta)


class PointTailCheck(BoundCheck):
    """P{|F_n(x) - F(x)| >= beta r} <= 2 exp(-2 r^3 / 27) for Lipschitz F."""

    def __init__(self) -> None:
        super().__init__(
            "PROP_6_3_TAIL", "P{|F_n(x) - F(x)| >= beta r} <= 2 exp(-2 r^3 / 27)"
        )

    def run(self, scenario: Scenario, plan: MonteCarloPlan) -> BoundReport:
        self.validate(scenario)
        x = float(scenario.parameter("x", self.bound_id))
        r = float(scenario.parameter("r", self.bound_id))
        M = scenario.lipschitz_M(self.bound_id)
        beta = scenario.beta(M, "lsi", self.bound_id)
        law = scenario.pointwise_law(plan, x)
        center = _cdf_at(scenario.mean_cdf(), x)
        lhs, stderr = law.tail(beta * r, center, plan.slack_sigmas)
        return self.report(
            scenario,
            plan,
            lhs,
            _point_tail(r),
            stderr,
            exact=law.exact,
            metadata={"x": x, "r": r, "M": M, "beta": beta},
        )


class PointMeanRateCheck(RateCheck):
    """E|F_n(x) - F(x)| decays like beta = (M sigma)^(2/3) / n^(1/3)."""

    def __init__(self) -> None:
        super().__init__("PROP_6_3_MEAN", "E|F_n(x) - F(x)| vs C beta")

    def statistic(
        self, scenario: Scenario, plan: MonteCarloPlan
    ) -> Tuple[float, float]:
        x = float(scenario.parameter("x", self.bound_id))
        center = _cdf_at(scenario.mean_cdf(), x)
        law = scenario.pointwise_law(plan, x)
        return law.expect(lambda v: np.abs(v - center))

    def shape(self, scenario: Scenario) -> float:
        M = scenario.lipschitz_M(self.bound_id)
        return scenario.beta(M, "lsi", self.bound_id)


class ReferenceTailCheck(BoundCheck):
    """P{|F_n(x) - G(x)| >= beta r + ||F - G||} <= 2 exp(-2 r^3 / 27).

    beta is built from the density bound of the reference law G.
    """

    scenario_kinds = ("product", "wigner")

    def __init__(self) -> None:
        super().__init__(
            "PROP_6_4", "P{|F_n(x) - G(x)| >= beta r + ||F - G||} <= 2 exp(-2r^3/27)"
        )

    def run(self, scenario: Scenario, plan: MonteCarloPlan) -> BoundReport:
        self.validate(scenario)
        x = float(scenario.parameter("x", self.bound_id))
        r = float(scenario.parameter("r", self.bound_id))
        G = scenario.reference(self.bound_id)
        M = scenario.reference_M(self.bound_id)
        beta = scenario.beta(M, "lsi", self.bound_id)
        distance = scenario.distance_to_reference(self.bound_id)
        law = scenario.pointwise_law(plan, x)
        lhs, stderr = law.tail(beta * r + distance, _cdf_at(G, x), plan.slack_sigmas)
        return self.report(
            scenario,
            plan,
            lhs,
            _point_tail(r),
            stderr,
            exact=law.exact,
            metadata={
                "x": x,
                "r": r,
                "beta": beta,
                "distance": distance,
                "pool_stderr": scenario.pool_stderr(),
            },
        )


class IntervalCountCheck(BoundCheck):
    """P{|N_I - n int_I g| >= n delta |I|} <= 4 exp(-(delta |I| / beta)^3 / 112).

    The bound needs |I| >= 4 ||F - G|| / delta; below that the report is kept
    but not asserted.
    """

    scenario_kinds = ("product", "wigner")

    def __init__(self) -> None:
        super().__init__(
            "COR_6_5_COUNT",
            "P{|N_I - n int_I g| >= n delta |I|} <= 4 exp(-(delta|I|/beta)^3/112)",
        )

    def counts(self, scenario: Scenario, plan: MonteCarloPlan, a: float, b: float):
        rows = scenario.sample(plan)
        if scenario.kind == "wigner":
            return np.array(
                [interval_count(Spectrum(eigenvalues=row), (a, b)) for row in rows]
            )
        return np.count_nonzero((rows >= a) & (rows < b), axis=1)

    def run(self, scenario: Scenario, plan: MonteCarloPlan) -> BoundReport:
        self.validate(scenario)
        a, b = (float(v) for v in scenario.parameter("interval", self.bound_id))
        if not a < b:
            raise ScenarioError(
                f"{self.bound_id} needs a nonempty interval", details={"a": a, "b": b}
            )
        delta = float(scenario.parameter("delta", self.bound_id))
        G = scenario.reference(self.bound_id)
        M = scenario.reference_M(self.bound_id)
        beta = scenario.beta(M, "lsi", self.bound_id)
        length = b - a
        n = scenario.n
        distance = scenario.distance_to_reference(self.bound_id)
        asserted = self.asserted
        if length < 4.0 * distance / delta:
            logger.warning(
                f"[VERIFY-{self.bound_id}] |I|={length:.4g} < 4||F-G||/delta="
                f"{4.0 * distance / delta:.4g}; reporting without assertion"
            )
            asserted = False
        expected = n * (float(G.cdf(b)) - float(G.cdf(a)))
        threshold = n * delta * length
        level = threshold - THRESHOLD_RTOL * max(1.0, threshold)
        deviation = np.abs(self.counts(scenario, plan, a, b) - expected)
        lhs, stderr = frequency(deviation >= level, plan.slack_sigmas)
        rhs = 4.0 * math.exp(-COUNT_RATE * (delta * length / beta) ** 3)
        return self.report(
            scenario,
            plan,
            lhs,
            rhs,
            stderr,
            metadata={
                "interval": [a, b],
                "delta": delta,
                "beta": beta,
                "expected_count": expected,
                "distance": distance,
            },
            asserted=asserted,
        )


class ReferenceKolmogorovCheck(BoundCheck):
    """E||F_n - G|| <= 5 beta log^(1/3)(1 + 1/beta) + ||F - G||."""

    scenario_kinds = ("product", "wigner")

    def __init__(self) -> None:
        super().__init__(
            "THM_7_1", "E||F_n - G|| <= 5 beta log^(1/3)(1 + 1/beta) + ||F - G||"
        )

    def run(self, scenario: Scenario, plan: MonteCarloPlan) -> BoundReport:
        self.validate(scenario)
        G = scenario.reference(self.bound_id)
        M = scenario.reference_M(self.bound_id)
        beta = scenario.beta(M, "lsi", self.bound_id)
        distance = scenario.distance_to_reference(self.bound_id)
        lhs, stderr = mean_kolmogorov(scenario, plan, against=G)
        rhs = kolmogorov_mean_bound(beta) + distance
        return self.report(
            scenario,
            plan,
            lhs,
            rhs,
            stderr,
            metadata={"beta": beta, "distance": distance},
        )


class HensleyCheck(BoundCheck):
    """M sigma >= 1/sqrt(12) for an unshifted product with Lipschitz F.

    Stored as lhs = 1/sqrt(12) <= rhs = M sigma; both sides are exact.
    """

    def __init__(self) -> None:
        super().__init__("HENSLEY", "1/sqrt(12) <= M s")

    def validate(self, scenario: Scenario) -> None:
        super().validate(scenario)
        if scenario.config.shifts != "none":
            raise ScenarioError(f"{self.bound_id} needs an unshifted product")

    def run(self, scenario: Scenario, plan: MonteCarloPlan) -> BoundReport:
        self.validate(scenario)
        M = scenario.lipschitz_M(self.bound_id)
        sigma = math.sqrt(scenario.sigma2("pi", self.bound_id))
        return self.report(
            scenario,
            plan,
            HENSLEY_FLOOR,
            M * sigma,
            exact=True,
            metadata={"M": M, "sigma": sigma},
        )


def pointwise_checks():
    """Instances of every pointwise and window entry."""
    return [
        PointMgfCheck(
            "PROP_6_1_MGF", "log E e^{t(F_n(x)-F(x))} <= t(F(x+h) - F(x))", True
        ),
        PointMgfCheck(
            "PROP_6_1_MGF_LOWER",
            "log E e^{-t(F_n(x)-F(x))} <= t(F(x) - F(x-h))",
            False,
        ),
        PointAbsCheck(),
        WindowL1Check(),
        PointTailCheck(),
        PointMeanRateCheck(),
        ReferenceTailCheck(),
        IntervalCountCheck(),
        ReferenceKolmogorovCheck(),
        HensleyCheck(),
    ]
