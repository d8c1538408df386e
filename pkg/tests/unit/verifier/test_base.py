"""Unit tests for the BoundCheck and RateCheck base classes."""

import pytest

from conclab.core.config import MonteCarloPlan, ScenarioConfig
from conclab.core.exceptions import ScenarioError
from conclab.verifier.base import BoundCheck, RateCheck
from conclab.verifier.scenario import Scenario


class ConstantCheck(BoundCheck):
    """Entry reporting fixed sides."""

    def __init__(self, lhs, rhs, stderr=0.0, exact=False, asserted=True):
        super().__init__("CONSTANT", "lhs <= rhs", asserted=asserted)
        self.values = (lhs, rhs, stderr, exact)

    def run(self, scenario, plan):
        self.validate(scenario)
        lhs, rhs, stderr, exact = self.values
        return self.report(scenario, plan, lhs, rhs, stderr, exact=exact)


class PowerRate(RateCheck):
    """Rate entry with statistic 2 n^power and shape n^power."""

    def __init__(self, power, fixed_target=None, two_sided=False):
        super().__init__(
            "POWER", "2 n^p vs C n^p", fixed_target=fixed_target, two_sided=two_sided
        )
        self.power = power

    def statistic(self, scenario, plan):
        return 2.0 * scenario.n**self.power, 0.01

    def shape(self, scenario):
        return scenario.n**self.power


@pytest.fixture
def plan():
    """Plan with three standard errors of slack."""
    return MonteCarloPlan(replications=10, master_seed=5, n=16)


@pytest.fixture
def scenario():
    """Gaussian product scenario with a sweep."""
    return Scenario(ScenarioConfig(n_sweep=[16, 32, 64, 128]), n=16, seed=5)


class TestBoundCheck:
    """Test the BoundCheck base class."""

    def test_is_abstract(self):
        """Test that BoundCheck cannot be instantiated."""
        with pytest.raises(TypeError):
            BoundCheck("X", "x")

    def test_empty_id(self):
        """Test that the bound id is required."""

        class Empty(ConstantCheck):
            def __init__(self):
                BoundCheck.__init__(self, "", "nothing")

        with pytest.raises(ValueError, match="Bound id cannot be empty"):
            Empty()

    def test_str(self):
        """Test the string form."""
        assert str(ConstantCheck(0.0, 1.0)) == "ConstantCheck(bound_id='CONSTANT')"

    def test_report_stamps_run(self, scenario, plan):
        """Test that the report carries n, seed and the slack."""
        report = ConstantCheck(0.5, 1.0, stderr=0.1).run(scenario, plan)

        assert report.bound_id == "CONSTANT"
        assert report.n == 16
        assert report.seed == 5
        assert report.slack_sigmas == 3.0
        assert report.metadata["method"] == "monte_carlo"
        assert report.passed

    def test_slack_rescues_noisy_estimate(self, scenario, plan):
        """Test lhs <= rhs + s se with s = 3."""
        assert ConstantCheck(1.25, 1.0, stderr=0.1).run(scenario, plan).passed
        assert not ConstantCheck(1.35, 1.0, stderr=0.1).run(scenario, plan).passed

    def test_exact_has_no_slack(self, scenario, plan):
        """Test that exact left sides are compared without slack."""
        report = ConstantCheck(1.25, 1.0, stderr=0.1, exact=True).run(scenario, plan)

        assert report.slack_sigmas == 0.0
        assert report.metadata["method"] == "exact"
        assert not report.passed

    def test_unasserted_failure(self, scenario, plan):
        """Test that unasserted failures are not failed assertions."""
        report = ConstantCheck(2.0, 1.0, asserted=False).run(scenario, plan)

        assert not report.passed
        assert not report.failed_assertion

    def test_validate_refuses_wigner(self, plan):
        """Test that product-only entries refuse matrix scenarios."""
        wigner = Scenario(ScenarioConfig(kind="wigner"), n=16, seed=5)

        with pytest.raises(ScenarioError, match="does not apply"):
            ConstantCheck(0.0, 1.0).run(wigner, plan)


class TestRateCheck:
    """Test the RateCheck base class."""

    def test_points(self, scenario, plan):
        """Test one point per sweep value."""
        points = PowerRate(-0.5).points(scenario, plan)

        assert [p.n for p in points] == [16, 32, 64, 128]
        assert all(p.ratio == pytest.approx(2.0) for p in points)

    def test_empty_sweep(self, plan):
        """Test that a rate entry needs a sweep."""
        bare = Scenario(ScenarioConfig(), n=16, seed=5)

        with pytest.raises(ScenarioError, match="n-sweep"):
            PowerRate(-0.5).points(bare, plan)

    def test_run_reports_slopes(self, scenario, plan):
        """Test lhs = fitted slope and rhs = shape slope."""
        report = PowerRate(-0.5).run(scenario, plan)

        assert report.kind == "rate"
        assert report.lhs_estimate == pytest.approx(-0.5)
        assert report.rhs_value == pytest.approx(-0.5)
        assert report.n == 128
        assert report.metadata["ratio_min"] == pytest.approx(2.0)
        assert report.passed

    def test_fixed_target(self, scenario, plan):
        """Test that a fixed target overrides the shape slope."""
        report = PowerRate(-0.2, fixed_target=-0.9).run(scenario, plan)

        assert report.rhs_value == -0.9
        assert not report.passed

    def test_two_sided(self, scenario, plan):
        """Test the lower side of a two-sided rate entry."""
        report = PowerRate(-1.0, fixed_target=-0.5, two_sided=True).run(
            scenario, plan
        )

        assert report.lower_value == -0.5
        assert not report.passed
