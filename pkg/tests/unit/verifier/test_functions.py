"""Unit tests for the test-function library."""

import numpy as np
import pytest

from conclab.core.exceptions import ScenarioError
from conclab.verifier.functions import TEST_FUNCTIONS, get_test_function


class TestFunctionLibrary:
    """Test lookup and the derivatives."""

    @pytest.mark.parametrize("name", sorted(TEST_FUNCTIONS))
    def test_derivative_matches_difference_quotient(self, name):
        """Test f' against a central difference."""
        spec = get_test_function(name)
        x = np.linspace(-3.0, 3.0, 13)
        eps = 1e-6

        quotient = (spec.f(x + eps) - spec.f(x - eps)) / (2 * eps)

        np.testing.assert_allclose(spec.derivative(x), quotient, atol=1e-6)

    @pytest.mark.parametrize("name", sorted(TEST_FUNCTIONS))
    def test_one_lipschitz(self, name):
        """Test that every library function is 1-Lipschitz."""
        spec = get_test_function(name)
        x = np.linspace(-10.0, 10.0, 2001)

        assert spec.lipschitz == 1.0
        assert np.max(np.abs(spec.derivative(x))) <= 1.0 + 1e-12

    def test_identity_is_unbounded(self):
        """Test the bounded flag."""
        assert not get_test_function("identity").bounded
        assert get_test_function("sin").bounded

    def test_unknown_function(self):
        """Test that an unknown id is a scenario error."""
        with pytest.raises(ScenarioError, match="unknown test function"):
            get_test_function("cube")
