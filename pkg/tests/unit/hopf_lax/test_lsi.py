"""Unit tests for the infimum-convolution form of the LSI."""

import numpy as np
import pytest

from conclab.core.exceptions import MissingScenarioConstantError
from conclab.distributions import gaussian, two_sided_exponential
from conclab.functional import MeasureModel
from conclab.hopf_lax import INFCONV_TOLERANCE, GridFunction, infconv_lsi_check

STEP = 1.0 / 64


@pytest.fixture
def model():
    """Standard Gaussian with LSI constant 1."""
    return MeasureModel.from_distribution(gaussian())


def _g(func):
    return GridFunction.from_callable(func, -12.0, 12.0, STEP)


class TestInfConvolutionLsi:
    """Test both inequalities on the Gaussian."""

    def test_constant_is_equality(self, model):
        """Test zero defect for a constant."""
        report = infconv_lsi_check(model, _g(lambda x: np.full_like(x, 0.7)))

        assert report.passed
        assert report.lhs_estimate == pytest.approx(0.0, abs=1e-12)

    def test_linear_is_equality(self, model):
        """Test g(x) = x, where P_1 g = x + 1/2 and log E e^X = 1/2."""
        report = infconv_lsi_check(model, _g(lambda x: x))

        assert report.passed
        assert abs(report.lhs_estimate) < INFCONV_TOLERANCE
        assert report.metadata["sigma2"] == 1.0

    def test_step_is_strict(self, model):
        """Test a 0/1 step, where both defects are negative."""
        report = infconv_lsi_check(model, _g(lambda x: (x > 0).astype(float)))

        assert report.passed
        assert report.lhs_estimate < 0.0
        assert report.metadata["sup_defect"] < 0.0
        assert report.metadata["inf_defect"] < 0.0

    def test_needs_lsi_constant(self):
        """Test a law with PI only."""
        model = MeasureModel.from_distribution(two_sided_exponential())

        with pytest.raises(MissingScenarioConstantError):
            infconv_lsi_check(model, _g(np.sin))

    def test_bounded_values(self, model):
        """Test that infinite grid values are refused."""
        g = GridFunction(x0=0.0, dx=1.0, values=[0.0, np.inf])

        with pytest.raises(ValueError, match="bounded"):
            infconv_lsi_check(model, g)
