"""Unit tests for the verification engine."""

import pytest

from conclab.core.config import MonteCarloPlan, RunConfig, ScenarioConfig
from conclab.core.exceptions import (
    ConfigurationError,
    MissingScenarioConstantError,
    ScenarioError,
    UnknownBoundError,
)
from conclab.core.persistence import ReportSaver
from conclab.core.report import BoundReport
from conclab.verifier.engine import (
    VerificationRun,
    build_scenario,
    curve,
    exit_code,
    rate_regression,
    run_bound_check,
)
from conclab.verifier.registry import get_check
from conclab.verifier.scenario import Scenario


@pytest.fixture
def plan():
    """Plan at n = 64."""
    return MonteCarloPlan(replications=20, master_seed=9, n=64)


@pytest.fixture
def scenario():
    """Gaussian scenario with a window and a sweep."""
    config = ScenarioConfig(a=0.0, b=0.0, n_sweep=[16, 32, 64])
    return Scenario(config, n=64, seed=9)


def make_report(passed, asserted=True):
    """Report with a chosen outcome."""
    return BoundReport.evaluate(
        bound_id="X",
        n=1,
        seed=0,
        lhs_estimate=0.0 if passed else 2.0,
        rhs_value=1.0,
        asserted=asserted,
    )


class TestBuildScenario:
    """Test scenario construction from a run configuration."""

    def test_uses_first_n(self):
        """Test that the run n selects the scenario n."""
        scenario = build_scenario(RunConfig(seed=1, n=[10, 20]))

        assert scenario.n == 10
        assert scenario.seed == 1
        assert scenario.sweep == [10, 20]

    def test_explicit_n(self):
        """Test building at another n."""
        assert build_scenario(RunConfig(seed=1, n=[10]), 30).n == 30

    def test_no_n(self):
        """Test that an n is required."""
        with pytest.raises(ConfigurationError):
            build_scenario(RunConfig(seed=1))


class TestRunBoundCheck:
    """Test run_bound_check."""

    def test_follows_plan_n(self, scenario):
        """Test that plan.n selects the scenario n and runtime is set."""
        plan = MonteCarloPlan(replications=20, master_seed=9, n=32)

        report = run_bound_check("COR_6_2", plan, scenario)

        assert report.n == 32
        assert report.runtime_ms >= 0.0
        assert report.passed

    def test_unknown(self, plan, scenario):
        """Test that unknown ids are rejected."""
        with pytest.raises(UnknownBoundError):
            run_bound_check("NOPE", plan, scenario)

    def test_missing_constant(self, plan, scenario):
        """Test that missing symbols propagate."""
        with pytest.raises(MissingScenarioConstantError):
            run_bound_check("PROP_6_3_TAIL", plan, scenario)


class TestVerificationRun:
    """Test VerificationRun."""

    def test_from_ids(self):
        """Test that ids are kept in order."""
        run = VerificationRun.from_ids(["HENSLEY", "COR_6_2"])

        assert run.get_bound_ids() == ["HENSLEY", "COR_6_2"]
        assert run.has_check("HENSLEY")
        assert str(run) == "VerificationRun(checks=2)"

    def test_from_unknown_id(self):
        """Test that unknown ids fail before anything runs."""
        with pytest.raises(UnknownBoundError):
            VerificationRun.from_ids(["HENSLEY", "NOPE"])

    def test_duplicate(self):
        """Test that an entry cannot be added twice."""
        run = VerificationRun()
        run.add_check(get_check("HENSLEY"))

        with pytest.raises(ValueError, match="already added"):
            run.add_check(get_check("HENSLEY"))

    def test_empty_run(self, plan, scenario):
        """Test that an empty run cannot execute."""
        with pytest.raises(ValueError, match="empty run"):
            VerificationRun().execute(scenario, plan)

    def test_execute_saves_reports(self, mocker, plan, scenario):
        """Test that the saver receives every report once."""
        saver = mocker.Mock(spec=ReportSaver)
        run = VerificationRun.from_ids(["HENSLEY", "COR_6_2"], saver=saver)

        reports = run.execute(scenario, plan)

        assert [r.bound_id for r in reports] == ["HENSLEY", "COR_6_2"]
        saver.save.assert_called_once_with(reports)
        assert exit_code(reports) == 0

    def test_failed_entry_saves_nothing(self, mocker, plan, scenario):
        """Test that a raising entry leaves no reports behind."""
        saver = mocker.Mock(spec=ReportSaver)
        run = VerificationRun.from_ids(["HENSLEY", "PROP_6_3_TAIL"], saver=saver)

        with pytest.raises(MissingScenarioConstantError):
            run.execute(scenario, plan)

        saver.save.assert_not_called()


class TestExitCode:
    """Test exit_code."""

    def test_all_pass(self):
        """Test 0 when every report passes."""
        assert exit_code([make_report(True), make_report(True)]) == 0

    def test_asserted_failure(self):
        """Test 1 on an asserted failure."""
        assert exit_code([make_report(True), make_report(False)]) == 1

    def test_unasserted_failure(self):
        """Test that exploratory failures do not count."""
        assert exit_code([make_report(False, asserted=False)]) == 0


class TestRatesAndCurves:
    """Test rate_regression and curve."""

    def test_rate_regression(self, plan, scenario):
        """Test the calibration slope over an explicit sweep."""
        fit = rate_regression("SYNTHETIC_RATE", [32, 64, 128, 256], plan, scenario)

        assert fit.slope == pytest.approx(-2 / 3)
        assert fit.passed

    def test_rate_regression_needs_rate_entry(self, plan, scenario):
        """Test that inequality entries cannot be regressed."""
        with pytest.raises(ScenarioError, match="not a rate entry"):
            rate_regression("HENSLEY", [16, 32, 64], plan, scenario)

    def test_rate_curve(self, plan, scenario):
        """Test one row per sweep value with the shape as rhs."""
        rows = curve("SYNTHETIC_RATE", plan, scenario)

        assert [row[1] for row in rows] == [16, 32, 64]
        assert all(row[0] == "SYNTHETIC_RATE" for row in rows)
        assert all(row[5] == pytest.approx(1.0) for row in rows)

    def test_inequality_curve(self, plan, scenario):
        """Test that inequality entries are run at every n."""
        rows = curve("HENSLEY", plan, scenario)

        assert len(rows) == 3
        assert all(row[2] < row[4] for row in rows)

    def test_curve_needs_sweep(self, plan):
        """Test that an empty sweep is refused."""
        bare = Scenario(ScenarioConfig(), n=64, seed=9)

        with pytest.raises(ScenarioError, match="n-sweep"):
            curve("HENSLEY", plan, bare)
