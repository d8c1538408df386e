"""Unit tests for the BoundReport model."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from conclab.core.report import BoundReport


def _report(**overrides):
    values = dict(
        bound_id="COR_6_2",
        n=100,
        seed=1,
        lhs_estimate=0.1,
        rhs_value=0.2,
    )
    values.update(overrides)
    return BoundReport.evaluate(**values)


class TestPassRule:
    """Test the shared pass rule."""

    def test_lhs_below_rhs_passes(self):
        """Test the plain inequality."""
        assert _report().passed

    def test_lhs_above_rhs_fails(self):
        """Test a violated inequality without slack."""
        assert not _report(lhs_estimate=0.3).passed

    def test_slack_rescues_estimate(self):
        """Test that slack_sigmas * stderr widens the margin."""
        report = _report(lhs_estimate=0.25, lhs_stderr=0.02, slack_sigmas=3.0)

        assert report.passed

    def test_tolerance_is_added(self):
        """Test the absolute tolerance."""
        assert _report(lhs_estimate=0.2 + 1e-9, tolerance=1e-8).passed

    def test_lower_side(self):
        """Test two-sided entries."""
        assert _report(lower_value=0.05).passed
        assert not _report(lower_value=0.15).passed
        assert _report(lower_value=0.15, lhs_stderr=0.02, slack_sigmas=3.0).passed

    def test_nonfinite_lhs_fails(self):
        """Test that NaN or inf never passes."""
        assert not BoundReport.holds(math.nan, 1.0)
        assert not BoundReport.holds(math.inf, math.inf)

    def test_equality_passes(self):
        """Test that lhs = rhs passes, e.g. an empty window 0 <= 0."""
        assert _report(lhs_estimate=0.0, rhs_value=0.0).passed


class TestSerialization:
    """Test JSON-facing behaviour."""

    def test_pass_alias_in_json(self):
        """Test that the JSON field is named 'pass'."""
        payload = _report().to_json_dict()

        assert payload["pass"] is True
        assert "passed" not in payload

    def test_runtime_excluded(self):
        """Test that runtime never reaches JSON."""
        report = _report().with_runtime(12.5)

        assert report.runtime_ms == 12.5
        assert "runtime_ms" not in report.to_json_dict()

    def test_metadata_made_plain(self):
        """Test numpy values and infinities in metadata."""
        report = _report(
            metadata={
                "beta": np.float64(0.5),
                "k": np.int64(3),
                "values": np.array([1.0, 2.0]),
                "big": math.inf,
            }
        )

        assert report.metadata == {
            "beta": 0.5,
            "k": 3,
            "values": [1.0, 2.0],
            "big": "inf",
        }

    def test_construct_from_alias(self):
        """Test round-tripping through the alias."""
        payload = _report().to_json_dict()

        assert BoundReport(**payload) == _report()

    def test_frozen(self):
        """Test that reports are immutable."""
        report = _report()

        with pytest.raises(ValidationError):
            report.n = 5

    def test_negative_stderr_rejected(self):
        """Test field validation."""
        with pytest.raises(ValidationError):
            _report(lhs_stderr=-1.0)


class TestFailedAssertion:
    """Test the exit-code helper property."""

    def test_unasserted_failure_is_not_counted(self):
        """Test that exploratory failures do not count."""
        report = _report(lhs_estimate=1.0, asserted=False)

        assert not report.passed
        assert not report.failed_assertion

    def test_asserted_failure_counts(self):
        """Test that asserted failures count."""
        assert _report(lhs_estimate=1.0).failed_assertion
