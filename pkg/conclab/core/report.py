"""Bound report model for conclab verification runs.

This module provides the BoundReport class that stores the outcome of one
verified inequality: the estimated left side with its standard error, the
right side computed from explicit constants, the pass flag and the parameters
the check was run with.
"""

import math
from typing import Any, Dict, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

ReportKind = Literal["inequality", "rate", "exploratory"]


def _plain(value: Any) -> Any:
    """Convert numpy scalars/arrays and non-finite floats to JSON-safe values."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    return value


class BoundReport(BaseModel):
    """Outcome of one verified inequality or rate regression.

    The pass flag always satisfies
    ``lower - s*se - tol <= lhs <= rhs + s*se + tol`` where ``s`` is
    ``slack_sigmas``, ``se`` is ``lhs_stderr`` and the lower check applies
    only when ``lower_value`` is set. Rate entries store the fitted slope in
    ``lhs_estimate`` and the target slope in ``rhs_value``.

    Attributes:
        bound_id: Catalog identifier.
        kind: inequality, rate or exploratory.
        n: Sample size or matrix dimension (last n of a sweep for rates).
        seed: Master seed of the run.
        lhs_estimate: Estimated left side.
        lhs_stderr: Standard error of the estimate (0 for exact oracles).
        rhs_value: Right side from explicit constants, or the target slope.
        lower_value: Lower side for two-sided entries.
        slack_sigmas: Standard errors of slack.
        tolerance: Absolute numerical tolerance.
        passed: Whether the inequality held.
        asserted: Whether the entry counts toward the exit code.
        metadata: Parameters and intermediate values (sigma, M, beta, ...).
        runtime_ms: Wall time of the check, never serialized to JSON.

    Example:
        >>> report = BoundReport.evaluate(
        ...     bound_id="COR_6_2", n=100, seed=1,
        ...     lhs_estimate=0.01, lhs_stderr=0.001, rhs_value=0.2,
        ... )
        >>> report.passed
        True
    """

    model_config = ConfigDict(populate_by_name=True, frozen=True)

    bound_id: str = Field(description="Catalog identifier")
    kind: ReportKind = Field(default="inequality")
    n: int = Field(ge=0, description="Sample size or matrix dimension")
    seed: int = Field(ge=0, description="Master seed")
    lhs_estimate: float = Field(description="Estimated left side")
    lhs_stderr: float = Field(ge=0.0, description="Standard error of the left side")
    rhs_value: float = Field(description="Right side or target slope")
    lower_value: Optional[float] = Field(default=None, description="Lower side")
    slack_sigmas: float = Field(default=0.0, ge=0.0)
    tolerance: float = Field(default=0.0, ge=0.0)
    passed: bool = Field(alias="pass", description="Whether the check held")
    asserted: bool = Field(default=True)
    metadata: Dict[str, Any] = Field(default_factory=dict)
    runtime_ms: float = Field(default=0.0, ge=0.0, exclude=True)

    @field_validator("metadata")
    @classmethod
    def _json_safe(cls, value: Dict[str, Any]) -> Dict[str, Any]:
        return _plain(value)

    @staticmethod
    def holds(
        lhs: float,
        rhs: float,
        stderr: float = 0.0,
        slack_sigmas: float = 0.0,
        tolerance: float = 0.0,
        lower: Optional[float] = None,
    ) -> bool:
        """Apply the pass rule shared by every report.

        Returns:
            True when lhs lies below rhs (and above lower, if given) within
            ``slack_sigmas * stderr + tolerance``.
        """
        margin = slack_sigmas * stderr + tolerance
        if not math.isfinite(lhs):
            return False
        upper_ok = lhs <= rhs + margin
        lower_ok = lower is None or lhs >= lower - margin
        return bool(upper_ok and lower_ok)

    @classmethod
    def evaluate(
        cls,
        bound_id: str,
        n: int,
        seed: int,
        lhs_estimate: float,
        rhs_value: float,
        lhs_stderr: float = 0.0,
        slack_sigmas: float = 0.0,
        tolerance: float = 0.0,
        lower_value: Optional[float] = None,
        kind: ReportKind = "inequality",
        asserted: bool = True,
        metadata: Optional[Dict[str, Any]] = None,
    ) -> "BoundReport":
        """Build a report and compute its pass flag from the shared rule."""
        passed = cls.holds(
            lhs_estimate,
            rhs_value,
            lhs_stderr,
            slack_sigmas,
            tolerance,
            lower_value,
        )
        return cls(
            bound_id=bound_id,
            kind=kind,
            n=n,
            seed=seed,
            lhs_estimate=float(lhs_estimate),
            lhs_stderr=float(lhs_stderr),
            rhs_value=float(rhs_value),
            lower_value=None if lower_value is None else float(lower_value),
            slack_sigmas=slack_sigmas,
            tolerance=tolerance,
            passed=passed,
            asserted=asserted,
            metadata=metadata or {},
        )

    def with_runtime(self, runtime_ms: float) -> "BoundReport":
        """Return a copy carrying the measured runtime."""
        return self.model_copy(update={"runtime_ms": float(runtime_ms)})

    def to_json_dict(self) -> Dict[str, Any]:
        """Serialize with stable field names; runtime is left out."""
        return _plain(self.model_dump(by_alias=True))

    @property
    def failed_assertion(self) -> bool:
        """True when an asserted entry did not pass."""
        return self.asserted and not self.passed
