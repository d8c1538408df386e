"""Unit tests for the spectral perturbation checks and pooling."""

import math

import numpy as np
import pytest

from conclab.core.config import MonteCarloPlan
from conclab.core.exceptions import DimensionMismatchError
from conclab.distributions import gaussian, uniform
from conclab.matrix import (
    HW_TOLERANCE,
    WignerEnsembleConfig,
    hoffman_wielandt_check,
    matrix_from_entries,
    pooled_spectral_cdf,
    sample_matrix,
    sample_spectra,
    spectral_lipschitz_ratio,
    spectral_map_lipschitz_check,
)


class TestHoffmanWielandt:
    """Test the sorted-spectrum comparison."""

    def test_identical(self):
        """Test m1 = m2."""
        m = np.array([[1.0, 0.5], [0.5, -1.0]])

        lhs, rhs = hoffman_wielandt_check(m, m)

        assert lhs == pytest.approx(0.0, abs=1e-24)
        assert rhs == 0.0

    def test_commuting_pair(self):
        """Test equality for diagonal matrices in the same order."""
        lhs, rhs = hoffman_wielandt_check(np.diag([1.0, 2.0]), np.diag([2.0, 4.0]))

        assert lhs == pytest.approx(5.0)
        assert rhs == 5.0

    @pytest.mark.parametrize("n", [4, 16, 64])
    def test_random_pairs(self, n):
        """Test lhs <= rhs on 100 perturbed pairs."""
        cfg = WignerEnsembleConfig.standardized(n, gaussian(), seed=n)
        rng = np.random.default_rng(n)
        for replication in range(100):
            m1 = sample_matrix(cfg, replication)
            noise = rng.normal(scale=0.1, size=(n, n))
            m2 = m1 + (noise + noise.T) / 2.0

            lhs, rhs = hoffman_wielandt_check(m1, m2)

            assert lhs <= rhs + HW_TOLERANCE

    def test_dimension_mismatch(self):
        """Test matrices of different shapes."""
        with pytest.raises(DimensionMismatchError):
            hoffman_wielandt_check(np.eye(2), np.eye(3))


class TestSpectralLipschitz:
    """Test the entries-to-spectrum Lipschitz bound."""

    def test_identical_entries_skipped(self):
        """Test the 0/0 case."""
        entries = np.arange(6, dtype=float)

        assert spectral_lipschitz_ratio(3, entries, entries) is None

    def test_diagonal_perturbation(self):
        """Test a single diagonal entry moved by delta."""
        n = 4
        entries = np.zeros(n * (n + 1) // 2)
        moved = entries.copy()
        moved[0] = 0.3

        ratio = spectral_lipschitz_ratio(n, entries, moved)

        assert ratio == pytest.approx(1.0 / math.sqrt(n))
        assert ratio <= math.sqrt(2.0 / n)

    def test_length_mismatch(self):
        """Test entry vectors of different lengths."""
        with pytest.raises(DimensionMismatchError):
            spectral_lipschitz_ratio(2, np.zeros(3), np.zeros(4))

    @pytest.mark.parametrize("law", [gaussian(), uniform(-1.0, 1.0)])
    def test_random_trials(self, law):
        """Test 100 random pairs at n = 16."""
        cfg = WignerEnsembleConfig.standardized(16, law, seed=8)

        worst = spectral_map_lipschitz_check(cfg, trials=100)

        assert 0.0 < worst <= math.sqrt(2.0 / 16) + 1e-8

    def test_trials_positive(self):
        """Test the trial count check."""
        cfg = WignerEnsembleConfig.standardized(4, gaussian(), seed=0)

        with pytest.raises(ValueError, match="one trial"):
            spectral_map_lipschitz_check(cfg, trials=0)


class TestSampleSpectra:
    """Test seeded batches of spectra."""

    def test_shape_and_order(self):
        """Test one sorted row per replication."""
        cfg = WignerEnsembleConfig.standardized(6, gaussian(), seed=2)
        plan = MonteCarloPlan(replications=5, master_seed=2, n=6)

        rows = sample_spectra(cfg, plan)

        assert rows.shape == (5, 6)
        assert np.all(np.diff(rows, axis=1) >= 0)

    def test_rows_match_entries(self):
        """Test that a row is the spectrum of the replication's matrix."""
        cfg = WignerEnsembleConfig.standardized(3, gaussian(), seed=4)
        plan = MonteCarloPlan(replications=2, master_seed=4, n=3)

        rows = sample_spectra(cfg, plan)
        direct = np.linalg.eigvalsh(sample_matrix(cfg, replication=1))

        np.testing.assert_allclose(rows[1], np.sort(direct), atol=1e-12)
        assert matrix_from_entries(3, np.zeros(6)).shape == (3, 3)


class TestPooledSpectralCdf:
    """Test the pooled mean spectral CDF."""

    def test_replication_bounds(self):
        """Test that pooling stops at the cap."""
        cfg = WignerEnsembleConfig.standardized(8, gaussian(), seed=6)

        pooled = pooled_spectral_cdf(cfg, base_replications=4, max_replications=16)

        assert 4 < pooled.replications <= 16
        assert pooled.cdf.n == 8 * pooled.replications
        assert pooled.stderr == pytest.approx(1.0 / math.sqrt(pooled.cdf.n))
        assert pooled.last_change >= 0.0

    def test_deterministic(self):
        """Test that the pooled estimate depends only on the seed."""
        cfg = WignerEnsembleConfig.standardized(4, gaussian(), seed=6)

        first = pooled_spectral_cdf(cfg, base_replications=4, max_replications=8)
        second = pooled_spectral_cdf(cfg, base_replications=4, max_replications=8)

        assert first.cdf == second.cdf

    def test_arguments(self):
        """Test the replication range check."""
        cfg = WignerEnsembleConfig.standardized(4, gaussian(), seed=0)

        with pytest.raises(ValueError, match="base_replications"):
            pooled_spectral_cdf(cfg, base_replications=8, max_replications=4)
