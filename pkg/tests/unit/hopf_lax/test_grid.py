"""Unit tests for GridFunction."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from conclab.hopf_lax import GridFunction, grid_tolerance


class TestGridFunction:
    """Test grid construction and evaluation."""

    def test_from_callable(self):
        """Test sampling on the nodes."""
        g = GridFunction.from_callable(lambda x: x**2, -1.0, 1.0, 0.5)

        assert g.values.tolist() == [1.0, 0.25, 0.0, 0.25, 1.0]
        assert g.size == 5
        assert g.x_end == 1.0
        assert g.nodes.tolist() == [-1.0, -0.5, 0.0, 0.5, 1.0]

    def test_from_callable_arguments(self):
        """Test the interval and step checks."""
        with pytest.raises(ValueError, match="lo < hi"):
            GridFunction.from_callable(np.sin, 1.0, 1.0, 0.1)
        with pytest.raises(ValueError, match="positive"):
            GridFunction.from_callable(np.sin, 0.0, 1.0, 0.0)

    def test_validation(self):
        """Test the value checks."""
        with pytest.raises(ValidationError, match="two nodes"):
            GridFunction(x0=0.0, dx=1.0, values=[1.0])
        with pytest.raises(ValidationError, match="NaN"):
            GridFunction(x0=0.0, dx=1.0, values=[1.0, math.nan])
        with pytest.raises(ValidationError):
            GridFunction(x0=0.0, dx=-1.0, values=[1.0, 2.0])

    def test_infinite_values_allowed(self):
        """Test the infinite sentinels."""
        g = GridFunction(x0=0.0, dx=1.0, values=[0.0, math.inf, 2.0])

        assert g.evaluate(1.0) == math.inf
        assert g.evaluate(0.0) == 0.0

    def test_interpolation(self):
        """Test linear interpolation and the outside value."""
        g = GridFunction(x0=0.0, dx=1.0, values=[0.0, 2.0, 4.0])

        assert g.evaluate(0.5) == 1.0
        np.testing.assert_array_equal(g.evaluate(np.array([1.5, 2.0])), [3.0, 4.0])
        assert g.evaluate(3.0) == math.inf
        assert g.evaluate(-1.0, outside=-math.inf) == -math.inf

    def test_negation(self):
        """Test -g."""
        g = GridFunction(x0=0.0, dx=1.0, values=[1.0, -2.0])

        assert (-g).values.tolist() == [-1.0, 2.0]

    def test_slope_and_oscillation(self):
        """Test the finite-difference summaries."""
        g = GridFunction(x0=0.0, dx=0.5, values=[0.0, 1.0, math.inf, 0.5])

        assert g.max_slope() == 2.0
        assert g.oscillation() == 1.0

    def test_window(self):
        """Test the central window."""
        g = GridFunction(x0=0.0, dx=1.0, values=np.zeros(8))

        assert g.window(0.5) == slice(2, 6)

    def test_grid_tolerance(self):
        """Test 4 (1 + slope) dx."""
        g = GridFunction(x0=0.0, dx=0.5, values=[0.0, 1.0])

        assert grid_tolerance(g) == pytest.approx(6.0)
        assert grid_tolerance(g, slope=0.0) == pytest.approx(2.0)
