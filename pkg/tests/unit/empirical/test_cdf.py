"""Unit tests for EmpiricalCdf."""

import math

import numpy as np
import pytest

from conclab.core.exceptions import EmptySampleError, NonFiniteSampleError
from conclab.empirical import EmpiricalCdf, build_empirical


class TestBuildEmpirical:
    """Test construction and validation."""

    def test_sorts_atoms(self):
        """Test that atoms are stored sorted."""
        F = build_empirical([3.0, 1.0, 2.0])

        assert F.atoms.tolist() == [1.0, 2.0, 3.0]
        assert F.n == 3
        assert len(F) == 3

    def test_accepts_generators(self):
        """Test iterables other than arrays."""
        assert build_empirical(x for x in (2.0, 1.0)).n == 2

    def test_empty_sample(self):
        """Test that an empty sample is refused."""
        with pytest.raises(EmptySampleError, match="empty sample"):
            build_empirical([])

    @pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
    def test_nonfinite_sample(self, bad):
        """Test that non-finite observations are refused."""
        with pytest.raises(NonFiniteSampleError, match="non-finite sample"):
            build_empirical([0.0, bad])

    def test_atoms_read_only(self):
        """Test immutability of the atom array."""
        F = build_empirical([1.0, 2.0])

        with pytest.raises(ValueError):
            F.atoms[0] = 5.0


class TestEvaluation:
    """Test CDF evaluation, quantiles and integrals."""

    @pytest.fixture
    def F(self):
        """Empirical CDF with a duplicated atom."""
        return build_empirical([0.0, 1.0, 1.0, 3.0])

    def test_right_continuous(self, F):
        """Test jumps including accumulated duplicate mass."""
        assert F.cdf(-1.0) == 0.0
        assert F.cdf(0.0) == 0.25
        assert F.cdf(1.0) == 0.75
        assert F(2.9) == 0.75
        assert F.cdf(3.0) == 1.0

    def test_left_limit(self, F):
        """Test F(x-)."""
        assert F.left_limit(1.0) == 0.25
        assert F.left_limit(0.0) == 0.0

    def test_vectorized(self, F):
        """Test array input."""
        np.testing.assert_array_equal(F.cdf(np.array([0.5, 5.0])), [0.25, 1.0])

    def test_quantile(self, F):
        """Test the generalized inverse."""
        assert F.quantile(0.25) == 0.0
        assert F.quantile(0.26) == 1.0
        assert F.quantile(1.0) == 3.0
        assert F.quantile(0.0) == 0.0
        with pytest.raises(ValueError):
            F.quantile(-0.1)

    def test_unique(self, F):
        """Test distinct atoms and multiplicities."""
        values, counts = F.unique()

        assert values.tolist() == [0.0, 1.0, 3.0]
        assert counts.tolist() == [1, 2, 1]

    def test_integrate(self, F):
        """Test the exact integral against the step areas."""
        # on [0, 4]: 0.25 * 1 + 0.75 * 2 + 1.0 * 1
        assert F.integrate(0.0, 4.0) == pytest.approx(2.75)
        assert F.integrate(-5.0, 0.0) == 0.0
        assert F.integrate(2.0, 1.0) == 0.0

    def test_bounds(self, F):
        """Test the extreme atoms."""
        assert F.bounds() == (0.0, 3.0)

    def test_equality_and_hash(self, F):
        """Test value semantics."""
        other = build_empirical([3.0, 1.0, 0.0, 1.0])

        assert F == other
        assert hash(F) == hash(other)
        assert F != build_empirical([0.0])

    def test_str(self, F):
        """Test the string form."""
        assert str(F) == "EmpiricalCdf(n=4)"
        assert isinstance(F, EmpiricalCdf)
