"""Unit tests for order-statistic fluctuations."""

import numpy as np
import pytest

from conclab.core.exceptions import EstimationError
from conclab.distributions import uniform
from conclab.empirical import build_empirical, ordered_stat_fluctuation, w1_general


class TestOrderedStatFluctuation:
    """Test the per-rank deviation estimate."""

    def test_two_replicates(self):
        """Test the hand-computed case."""
        result = ordered_stat_fluctuation(np.array([[0.0, 0.0], [1.0, 1.0]]))

        assert result.deviations.tolist() == [0.5, 0.5]
        assert result.normalized_sum == 0.5
        assert result.replications == 2

    def test_rows_are_sorted(self):
        """Test that unsorted rows give the same answer as sorted rows."""
        rows = np.array([[2.0, 0.0, 1.0], [0.5, 1.5, 2.5]])

        unsorted = ordered_stat_fluctuation(rows)
        presorted = ordered_stat_fluctuation(np.sort(rows, axis=1))

        np.testing.assert_array_equal(unsorted.deviations, presorted.deviations)

    def test_constant_samples(self):
        """Test zero fluctuation when every replicate agrees."""
        result = ordered_stat_fluctuation(np.tile([1.0, 2.0, 3.0], (5, 1)))

        assert result.normalized_sum == 0.0
        assert result.stderr == 0.0

    def test_needs_matrix(self):
        """Test the shape checks."""
        with pytest.raises(ValueError, match="shape"):
            ordered_stat_fluctuation(np.zeros(4))
        with pytest.raises(EstimationError, match="two replicates"):
            ordered_stat_fluctuation(np.zeros((1, 4)))

    def test_sandwiches_expected_w1(self):
        """Test that the fluctuation is within a factor two of E W1."""
        rng = np.random.default_rng(11)
        samples = rng.uniform(size=(400, 50))
        law = uniform()

        expected_w1 = np.mean(
            [w1_general(build_empirical(row), law) for row in samples]
        )
        fluctuation = ordered_stat_fluctuation(samples).normalized_sum

        assert 0.4 * expected_w1 <= fluctuation <= 2.5 * expected_w1
