"""Unit tests for the empirical lifting oracle."""

import numpy as np
import pytest

from conclab.core.exceptions import AtomCountMismatchError, OracleSizeExceededError
from conclab.hopf_lax import GridFunction, empirical_lift_check, inf_convolution

STEP = 0.25


def _f(func):
    return GridFunction.from_callable(func, -2.0, 2.0, STEP)


class TestEmpiricalLift:
    """Test the brute-force oracle against the one-dimensional operator."""

    def test_single_atom_is_inf_convolution(self):
        """Test that n = 1 reduces to Q_t f at the atom."""
        f = _f(np.cos)
        lhs, rhs = empirical_lift_check(f, 1, 0.5, [0.5])

        assert lhs == pytest.approx(rhs, abs=1e-12)
        assert rhs == pytest.approx(inf_convolution(f, 0.5).evaluate(0.5), abs=1e-12)

    @pytest.mark.parametrize(
        "atoms", [[0.0, 1.0], [-1.5, 0.25, 1.0], [-0.5, -0.5, 0.75]]
    )
    def test_atoms_on_nodes(self, atoms):
        """Test agreement for n = 2 and n = 3 quadratic and cosine f."""
        for func in (lambda x: x**2 / 2.0, np.cos):
            lhs, rhs = empirical_lift_check(_f(func), len(atoms), 1.0, atoms)

            assert lhs == pytest.approx(rhs, abs=1e-12)

    def test_random_atoms_within_grid_tolerance(self):
        """Test atoms between nodes against 2 dx."""
        rng = np.random.default_rng(5)
        f = _f(np.abs)
        for n in (2, 3):
            atoms = rng.uniform(-1.5, 1.5, size=n)
            lhs, rhs = empirical_lift_check(f, n, 0.8, atoms)

            assert abs(lhs - rhs) <= 2.0 * STEP

    def test_constant(self):
        """Test that both sides equal the constant."""
        f = _f(lambda x: np.full_like(x, 3.0))
        lhs, rhs = empirical_lift_check(f, 2, 1.0, [0.0, 1.0])

        assert lhs == pytest.approx(3.0)
        assert rhs == pytest.approx(3.0)

    def test_oracle_size(self):
        """Test the dimension limit."""
        with pytest.raises(OracleSizeExceededError, match="oracle size exceeded"):
            empirical_lift_check(_f(np.cos), 5, 1.0, [0.0] * 5)

    def test_arguments(self):
        """Test atom count, time and range checks."""
        f = _f(np.cos)

        with pytest.raises(AtomCountMismatchError):
            empirical_lift_check(f, 2, 1.0, [0.0])
        with pytest.raises(ValueError, match="positive"):
            empirical_lift_check(f, 1, 0.0, [0.0])
        with pytest.raises(ValueError, match="inside the grid"):
            empirical_lift_check(f, 1, 1.0, [3.0])
