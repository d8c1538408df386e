"""Execution of catalog entries.

This module provides run_bound_check, the single entry point that evaluates
one bound on one scenario, VerificationRun, which evaluates an ordered set of
entries and hands the reports to a saver, and the rate-regression and curve
helpers used by ``conclab curve``.
"""

import logging
import math
import time
from typing import Dict, List, Optional, Sequence

from conclab.core.config import MonteCarloPlan, RunConfig
from conclab.core.exceptions import ScenarioError
from conclab.core.persistence import ReportSaver
from conclab.core.report import BoundReport
from conclab.verifier.base import BoundCheck, RateCheck
from conclab.verifier.regression import RateFit, curve_rows, fit_rate
from conclab.verifier.registry import get_check
from conclab.verifier.scenario import Scenario

logger = logging.getLogger(__name__)


def build_scenario(config: RunConfig, n: Optional[int] = None) -> Scenario:
    """Instantiate the configured scenario at n (default: the run n).

    Raises:
        ConfigurationError: If no n is configured or a law id is invalid.
    """
    plan = config.plan(n)
    return Scenario(config.scenario, n=plan.n, seed=config.seed, sweep=config.sweep())


def _at_plan(scenario: Scenario, plan: MonteCarloPlan) -> Scenario:
    return scenario if scenario.n == plan.n else scenario.with_n(plan.n)


def run_bound_check(
    bound_id: str, plan: MonteCarloPlan, scenario: Scenario
) -> BoundReport:
    """Evaluate one catalog entry and attach its runtime.

    Args:
        bound_id: Catalog id.
        plan: Seeded Monte Carlo plan; plan.n selects the scenario's n.
        scenario: Measure or matrix model.

    Returns:
        The entry's BoundReport with runtime_ms set.

    Raises:
        UnknownBoundError: If bound_id is not in the catalog.
        MissingScenarioConstantError: If the scenario lacks a needed symbol.
        ScenarioError: If the entry does not apply to the scenario.
    """
    check = get_check(bound_id)
    return _timed(check, plan, _at_plan(scenario, plan))


def _timed(check: BoundCheck, plan: MonteCarloPlan, scenario: Scenario) -> BoundReport:
    logger.info(f"[VERIFY-{check.bound_id}] start n={plan.n} R={plan.replications}")
    started = time.perf_counter()
    report = check.run(scenario, plan)
    elapsed = (time.perf_counter() - started) * 1000.0
    status = "pass" if report.passed else "FAIL"
    logger.info(f"[VERIFY-{check.bound_id}] {status} in {elapsed:.1f} ms")
    if report.failed_assertion:
        logger.warning(
            f"[VERIFY-{check.bound_id}] lhs={report.lhs_estimate:.6g} "
            f"exceeds rhs={report.rhs_value:.6g}"
        )
    return report.with_runtime(elapsed)


class VerificationRun:
    """Ordered set of catalog entries evaluated on one scenario.

    Attributes:
        checks: Entries keyed by bound id, in insertion order.
        saver: Optional saver receiving the reports once every entry ran.

    Example:
        >>> run = VerificationRun()
        >>> run.add_check(get_check("COR_6_2"))
        >>> reports = run.execute(scenario, plan)
        >>> reports[0].bound_id
        'COR_6_2'
    """

    def __init__(self, saver: Optional[ReportSaver] = None) -> None:
        self.checks: Dict[str, BoundCheck] = {}
        self.saver = saver

    @classmethod
    def from_ids(
        cls, bound_ids: Sequence[str], saver: Optional[ReportSaver] = None
    ) -> "VerificationRun":
        """Build a run from catalog ids.

        Raises:
            UnknownBoundError: If an id is not in the catalog.
        """
        run = cls(saver=saver)
        for bound_id in bound_ids:
            run.add_check(get_check(bound_id))
        return run

    def add_check(self, check: BoundCheck) -> None:
        """Add an entry.

        Raises:
            ValueError: If an entry with the same bound id was added already.
        """
        if check.bound_id in self.checks:
            raise ValueError(f"Check '{check.bound_id}' already added")
        self.checks[check.bound_id] = check

    def has_check(self, bound_id: str) -> bool:
        return bound_id in self.checks

    def get_bound_ids(self) -> List[str]:
        return list(self.checks)

    def execute(self, scenario: Scenario, plan: MonteCarloPlan) -> List[BoundReport]:
        """Evaluate every entry in order, then save the reports.

        Nothing is saved when an entry raises, so a failed run leaves no
        report files behind.

        Raises:
            ValueError: If the run has no entries.
        """
        if not self.checks:
            raise ValueError("Cannot execute an empty run")
        scenario = _at_plan(scenario, plan)
        reports = [_timed(check, plan, scenario) for check in self.checks.values()]
        if self.saver is not None:
            self.saver.save(reports)
        passed = sum(1 for r in reports if r.passed)
        logger.info(f"[VERIFY] {passed}/{len(reports)} reports pass")
        return reports

    def __str__(self) -> str:
        return f"VerificationRun(checks={len(self.checks)})"

    def __repr__(self) -> str:
        return self.__str__()


def exit_code(reports: Sequence[BoundReport]) -> int:
    """0 when every asserted report passes, 1 otherwise."""
    return 1 if any(r.failed_assertion for r in reports) else 0


def _with_sweep(scenario: Scenario, n_sweep: Sequence[int]) -> Scenario:
    if list(n_sweep) == scenario.sweep:
        return scenario
    return Scenario(scenario.config, scenario.n, scenario.seed, sweep=list(n_sweep))


def _rate_check(bound_id: str) -> RateCheck:
    check = get_check(bound_id)
    if not isinstance(check, RateCheck):
        raise ScenarioError(f"{bound_id} is not a rate entry")
    return check


def rate_regression(
    bound_id: str,
    n_sweep: Sequence[int],
    plan: MonteCarloPlan,
    scenario: Scenario,
) -> RateFit:
    """Log-log least squares of a rate entry's statistic over ``n_sweep``.

    Raises:
        UnknownBoundError: If bound_id is not in the catalog.
        ScenarioError: If the entry is not a rate entry or the sweep is empty.
        DegenerateRegressionError: On nonpositive estimates or < 3 distinct n.
    """
    check = _rate_check(bound_id)
    points = check.points(_with_sweep(scenario, n_sweep), plan)
    return fit_rate(
        [p.n for p in points],
        [p.lhs for p in points],
        check.target_slope(points),
        two_sided=check.two_sided,
    )


def curve(bound_id: str, plan: MonteCarloPlan, scenario: Scenario) -> List[list]:
    """Plot-ready rows (bound_id, n, lhs, stderr, rhs, ratio) over the sweep.

    Rate entries report the shape of their right side as rhs; inequality
    entries are run at each n and report their explicit right side.

    Raises:
        ScenarioError: If the scenario has no n-sweep.
    """
    check = get_check(bound_id)
    if not scenario.sweep:
        raise ScenarioError(f"{bound_id} needs an n-sweep for a curve")
    if isinstance(check, RateCheck):
        rows = curve_rows(bound_id, check.points(scenario, plan))
    else:
        rows = []
        for n in scenario.sweep:
            report = check.run(scenario.with_n(n), plan.with_n(n))
            rhs = report.rhs_value
            ratio = report.lhs_estimate / rhs if rhs > 0 else math.nan
            rows.append(
                [bound_id, n, report.lhs_estimate, report.lhs_stderr, rhs, ratio]
            )
    logger.info(f"[CURVE-{bound_id}] {len(rows)} rows")
    return rows
