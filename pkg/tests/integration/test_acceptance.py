"""End-to-end runs of the shipped scenario files.

These reproduce the headline numbers with full replication counts and take
minutes; deselect them with ``-m "not slow"``.
"""

from pathlib import Path

import pytest

from conclab.core.config import load_run_config
from conclab.verifier.engine import VerificationRun, build_scenario, rate_regression
from conclab.verifier.registry import get_check
from conclab.verifier.scenario import Scenario

CONFIGS = Path(__file__).resolve().parents[2] / "configs"

pytestmark = pytest.mark.slow


def run_config(name, **overrides):
    """Execute every bound of a scenario file and index the reports by id."""
    config = load_run_config(CONFIGS / name, overrides)
    run = VerificationRun.from_ids(config.bounds)
    reports = run.execute(build_scenario(config), config.plan())
    return {report.bound_id: report for report in reports}


class TestGaussianProduct:
    """Explicit-constant suite on i.i.d. standard Gaussians, n = 200."""

    @pytest.fixture(scope="class")
    def reports(self):
        return run_config("gaussian_product.yaml")

    def test_every_entry_passes(self, reports):
        """Test that no asserted entry fails with three standard errors."""
        failed = [bound_id for bound_id, r in reports.items() if not r.passed]

        assert failed == []

    def test_oracles_are_exact(self, reports):
        """Test that the Gaussian and binomial oracles carry no error."""
        for bound_id in ("PROP_5_2_TAIL", "PROP_6_3_TAIL", "HENSLEY"):
            assert reports[bound_id].metadata["method"] == "exact"
            assert reports[bound_id].lhs_stderr == 0.0

    def test_sandwich_is_two_sided(self, reports):
        """Test that the sandwich carries its lower side."""
        report = reports["EQ_1_4_SANDWICH"]

        assert report.lower_value == pytest.approx(report.rhs_value / 4.0)

    @pytest.mark.parametrize("r", [0.1, 0.2])
    def test_kolmogorov_tail_at_both_levels(self, r):
        """Test THM_1_2_TAIL at r = 0.1 and r = 0.2 with the suite's n and R."""
        config = load_run_config(CONFIGS / "gaussian_product.yaml")
        scenario_config = config.scenario.model_copy(update={"r": r})
        plan = config.plan()
        scenario = Scenario(scenario_config, n=plan.n, seed=config.seed)

        report = get_check("THM_1_2_TAIL").run(scenario, plan)

        assert report.metadata["r"] == r
        assert report.passed


class TestExamples:
    """The two examples that bracket the Kolmogorov rate."""

    def test_staircase_decays_like_one_over_n(self):
        """Test slope <= -0.9 over n = 64..512."""
        report = run_config("example1.yaml")["EX_1"]

        assert report.passed
        assert report.lhs_estimate <= -0.9

    def test_comonotone_does_not_decay(self):
        """Test E||F_n - F|| stays in [0.2, 0.8] at every n."""
        report = run_config("example2.yaml")["EX_2"]

        assert report.passed
        assert all(0.2 <= v <= 0.8 for v in report.metadata["estimates"])


class TestWigner:
    """Gaussian Wigner matrices with a pooled F."""

    @pytest.fixture(scope="class")
    def reports(self):
        return run_config("wigner.yaml")

    def test_every_entry_passes(self, reports):
        """Test the deterministic inequalities, the count tail and the rate."""
        failed = [bound_id for bound_id, r in reports.items() if not r.passed]

        assert failed == []

    def test_w1_slope(self, reports):
        """Test that E W1 decays at least like n^(-0.6) over n = 32..256."""
        assert reports["THM_1_3_W1"].lhs_estimate <= -0.6


class TestCalibration:
    """The exact n^(-2/3) statistic through the regression."""

    def test_synthetic_rate(self):
        """Test that the fit recovers -2/3."""
        config = load_run_config(CONFIGS / "gaussian_product.yaml")
        scenario = build_scenario(config)

        fit = rate_regression(
            "SYNTHETIC_RATE", [32, 64, 128, 256, 512], config.plan(), scenario
        )

        assert fit.slope == pytest.approx(-2.0 / 3.0, abs=1e-9)
        assert fit.passed
