"""Base bound check abstract classes for conclab.

This module provides the abstract base class for every catalog entry. A bound
check estimates the left side of one inequality on a scenario, evaluates the
right side from explicit constants and returns a BoundReport. RateCheck is the
variant for bounds whose absolute constant is unspecified: it sweeps n and
regresses the decay exponent instead.
"""

import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional, Tuple

from conclab.core.config import MonteCarloPlan
from conclab.core.exceptions import ScenarioError
from conclab.core.report import BoundReport, ReportKind
from conclab.verifier.regression import (
    RATE_TOLERANCE,
    RatePoint,
    fit_rate,
    shape_slope,
)
from conclab.verifier.scenario import Scenario

logger = logging.getLogger(__name__)


class BoundCheck(ABC):
    """Abstract base class for all catalog entries.

    Attributes:
        bound_id: Unique catalog identifier.
        description: The inequality in words, shown by ``conclab verify``.
        kind: inequality, rate or exploratory.
        asserted: Whether the entry counts toward the exit code.
        scenario_kinds: Scenario kinds the entry applies to.

    Example:
        >>> class Trivial(BoundCheck):
        ...     def __init__(self):
        ...         super().__init__("TRIVIAL", "0 <= 1")
        ...
        ...     def run(self, scenario, plan):
        ...         return self.report(scenario, plan, lhs=0.0, rhs=1.0)
        >>> str(Trivial())
        "Trivial(bound_id='TRIVIAL')"
    """

    scenario_kinds: Tuple[str, ...] = ("product",)

    def __init__(
        self,
        bound_id: str,
        description: str,
        kind: ReportKind = "inequality",
        asserted: bool = True,
    ) -> None:
        """Initialize the check.

        Raises:
            ValueError: If bound_id is empty.
        """
        if not bound_id:
            raise ValueError("Bound id cannot be empty")
        self.bound_id = bound_id
        self.description = description
        self.kind = kind
        self.asserted = asserted

    def validate(self, scenario: Scenario) -> None:
        """Refuse scenarios the entry does not apply to.

        Raises:
            ScenarioError: If the scenario kind is not supported.
        """
        if scenario.kind not in self.scenario_kinds:
            raise ScenarioError(
                f"{self.bound_id} does not apply to {scenario.kind} scenarios",
                details={"supported": list(self.scenario_kinds)},
            )

    @abstractmethod
    def run(self, scenario: Scenario, plan: MonteCarloPlan) -> BoundReport:
        """Evaluate the entry on a scenario.

        Args:
            scenario: Measure or matrix model at plan.n.
            plan: Seeded Monte Carlo plan.

        Returns:
            Deterministic BoundReport for (plan, scenario).

        Raises:
            NotImplementedError: If not implemented by concrete subclass.
            MissingScenarioConstantError: If a needed symbol is unset.
            ScenarioError: If the scenario does not fit the entry.
        """
        pass

    def report(
        self,
        scenario: Scenario,
        plan: MonteCarloPlan,
        lhs: float,
        rhs: float,
        stderr: float = 0.0,
        exact: bool = False,
        tolerance: float = 0.0,
        lower: Optional[float] = None,
        metadata: Optional[Dict[str, Any]] = None,
        asserted: Optional[bool] = None,
    ) -> BoundReport:
        """Build the entry's report; exact left sides get zero slack.

        ``asserted`` overrides the entry default for this run only.
        """
        report = BoundReport.evaluate(
            bound_id=self.bound_id,
            n=scenario.n,
            seed=plan.master_seed,
            lhs_estimate=lhs,
            rhs_value=rhs,
            lhs_stderr=stderr,
            slack_sigmas=0.0 if exact else plan.slack_sigmas,
            tolerance=tolerance,
            lower_value=lower,
            kind=self.kind,
            asserted=self.asserted if asserted is None else asserted,
            metadata={
                "method": "exact" if exact else "monte_carlo",
                **(metadata or {}),
            },
        )
        logger.debug(
            f"[VERIFY-{self.bound_id}] lhs={lhs:.6g} rhs={rhs:.6g} se={stderr:.3g}"
        )
        return report

    def __str__(self) -> str:
        """Return string representation of the check."""
        return f"{self.__class__.__name__}(bound_id='{self.bound_id}')"

    def __repr__(self) -> str:
        return self.__str__()


class RateCheck(BoundCheck):
    """Catalog entry checked by a log-log regression over the n-sweep.

    Subclasses supply the statistic E[stat] at one n and the shape of the
    right side without its absolute constant. By default the target slope is
    the fitted slope of the shape over the same sweep.

    Attributes:
        fixed_target: Target slope overriding the fitted shape slope.
        two_sided: Also require the slope to stay above target - tolerance.
    """

    def __init__(
        self,
        bound_id: str,
        description: str,
        kind: ReportKind = "rate",
        asserted: bool = True,
        fixed_target: Optional[float] = None,
        two_sided: bool = False,
    ) -> None:
        super().__init__(bound_id, description, kind=kind, asserted=asserted)
        self.fixed_target = fixed_target
        self.two_sided = two_sided

    @abstractmethod
    def statistic(
        self, scenario: Scenario, plan: MonteCarloPlan
    ) -> Tuple[float, float]:
        """Estimate of the statistic at scenario.n and its standard error."""
        pass

    @abstractmethod
    def shape(self, scenario: Scenario) -> float:
        """Right side at scenario.n without its absolute constant."""
        pass

    def points(self, scenario: Scenario, plan: MonteCarloPlan) -> List[RatePoint]:
        """One RatePoint per n of the scenario's sweep.

        Raises:
            ScenarioError: If the sweep is empty.
        """
        self.validate(scenario)
        if not scenario.sweep:
            raise ScenarioError(f"{self.bound_id} needs an n-sweep")
        points = []
        for n in scenario.sweep:
            at_n = scenario.with_n(n)
            value, stderr = self.statistic(at_n, plan.with_n(n))
            points.append(
                RatePoint(n=n, lhs=value, stderr=stderr, shape=self.shape(at_n))
            )
            logger.debug(f"[RATE-{self.bound_id}] n={n} lhs={value:.6g}")
        return points

    def target_slope(self, points: List[RatePoint]) -> float:
        if self.fixed_target is not None:
            return self.fixed_target
        return shape_slope(points)

    def run(self, scenario: Scenario, plan: MonteCarloPlan) -> BoundReport:
        """Regress the statistic over the sweep.

        The report stores the fitted slope as lhs and the target slope as rhs.

        Raises:
            DegenerateRegressionError: On nonpositive estimates or < 3 n values.
        """
        points = self.points(scenario, plan)
        target = self.target_slope(points)
        fit = fit_rate(
            [p.n for p in points],
            [p.lhs for p in points],
            target,
            tolerance=RATE_TOLERANCE,
            two_sided=self.two_sided,
        )
        ratios = [p.ratio for p in points]
        logger.info(
            f"[RATE-{self.bound_id}] slope={fit.slope:.4f} target={target:.4f}"
        )
        return BoundReport.evaluate(
            bound_id=self.bound_id,
            n=points[-1].n,
            seed=plan.master_seed,
            lhs_estimate=fit.slope,
            rhs_value=target,
            tolerance=RATE_TOLERANCE,
            lower_value=target if self.two_sided else None,
            kind=self.kind,
            asserted=self.asserted,
            metadata={
                "intercept": fit.intercept,
                "n_sweep": [p.n for p in points],
                "estimates": [p.lhs for p in points],
                "stderrs": [p.stderr for p in points],
                "shapes": [p.shape for p in points],
                "ratio_min": min(ratios),
                "ratio_max": max(ratios),
            },
        )
