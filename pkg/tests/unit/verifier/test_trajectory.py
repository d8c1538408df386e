"""Unit tests for single-path W1 trajectories."""

import math

import pytest

from conclab.core.config import MonteCarloPlan, ScenarioConfig
from conclab.core.exceptions import ScenarioError
from conclab.core.streams import AUX_STREAM, replication_rng
from conclab.empirical.cdf import build_empirical
from conclab.empirical.metrics import w1_general
from conclab.verifier.scenario import Scenario
from conclab.verifier.trajectory import TrajectoryPoint, sample_trajectory

SWEEP = [16, 32, 64]


@pytest.fixture
def plan():
    """Plan seeded for the path."""
    return MonteCarloPlan(replications=10, master_seed=21, n=16)


@pytest.fixture
def scenario():
    """Gaussian product scenario with a sweep."""
    return Scenario(ScenarioConfig(n_sweep=[64, 16, 32]), n=16, seed=21)


class TestTrajectoryPoint:
    """Test TrajectoryPoint."""

    def test_row(self):
        """Test the row layout and the ratio."""
        point = TrajectoryPoint(n=8, w1=0.5, shape=0.25)

        assert point.as_row() == [8, 0.5, 0.25, 2.0]

    def test_zero_shape(self):
        """Test that a zero shape gives a nan ratio."""
        assert math.isnan(TrajectoryPoint(n=8, w1=0.5, shape=0.0).ratio)


class TestSampleTrajectory:
    """Test sample_trajectory."""

    def test_sorted_sizes(self, scenario, plan):
        """Test one point per sweep value in increasing n."""
        points = sample_trajectory(scenario, plan)

        assert [p.n for p in points] == SWEEP
        assert all(p.w1 > 0.0 for p in points)

    def test_prefixes_of_one_path(self, scenario, plan):
        """Test that each point uses the first n draws of a single path."""
        rng = replication_rng(21, 0, AUX_STREAM)
        path = scenario.with_n(64).product.sample(rng)

        points = sample_trajectory(scenario, plan)

        for point in points:
            expected = w1_general(build_empirical(path[: point.n]), scenario.mean_cdf())
            assert point.w1 == pytest.approx(expected)

    def test_shape(self, scenario, plan):
        """Test sigma ((A + log n) / n)^(1/3) with sigma = 1 and A = 0."""
        points = sample_trajectory(scenario, plan)

        for point in points:
            expected = (math.log(point.n) / point.n) ** (1 / 3)
            assert point.shape == pytest.approx(expected)

    def test_deterministic(self, scenario, plan):
        """Test that a seed fixes the path."""
        first = sample_trajectory(scenario, plan)
        second = sample_trajectory(Scenario(scenario.config, 16, 21), plan)

        assert first == second

    def test_empty_sweep(self, plan):
        """Test that a sweep is required."""
        with pytest.raises(ScenarioError, match="n-sweep"):
            sample_trajectory(Scenario(ScenarioConfig(), n=16, seed=1), plan)

    def test_wigner_needs_two(self, plan):
        """Test the Wigner dimension floor."""
        config = ScenarioConfig(kind="wigner", n_sweep=[1, 4])

        with pytest.raises(ScenarioError, match="n >= 2"):
            sample_trajectory(Scenario(config, n=4, seed=1), plan)

    def test_wigner_minors(self, plan):
        """Test a short Wigner path on leading minors."""
        config = ScenarioConfig(
            kind="wigner",
            n_sweep=[8, 16],
            pool_replications=10,
            pool_max_replications=10,
        )

        points = sample_trajectory(Scenario(config, n=8, seed=1), plan)

        assert [p.n for p in points] == [8, 16]
        assert all(p.w1 >= 0.0 and p.shape > 0.0 for p in points)
