"""Custom exceptions for the conclab package.

This module defines the exception hierarchy used throughout the package so that
numerical failures (divergent integrals, degenerate constants) and usage
failures (unknown bounds, bad configuration) can be told apart by callers and
mapped to exit codes by the command-line interface.
"""

from datetime import datetime
from typing import Any, Dict, Optional


class ConcLabError(Exception):
    """Base exception for every error raised by conclab.

    Attributes:
        message: The error message describing the failure.
        details: Dictionary with the numeric context of the failure.
        timestamp: When the error occurred.
        correlation_id: Optional identifier of the run that failed.
    """

    label = "ConcLab Error"

    def __init__(
        self,
        message: str,
        details: Optional[Dict[str, Any]] = None,
        correlation_id: Optional[str] = None,
    ) -> None:
        """Initialize the error.

        Args:
            message: Descriptive error message.
            details: Dictionary with numeric context information.
            correlation_id: Identifier of the run, when known.
        """
        super().__init__(message)
        self.message = message
        self.details = details or {}
        self.timestamp = datetime.now().isoformat()
        self.correlation_id = correlation_id

    def __str__(self) -> str:
        """Return a detailed string representation of the error."""
        error_parts = [f"{self.label}: {self.message}"]

        if self.correlation_id:
            error_parts.append(f"Correlation ID: {self.correlation_id}")

        if self.details:
            error_parts.append(f"Details: {self.details}")

        return " | ".join(error_parts)

    def get_full_context(self) -> Dict[str, Any]:
        """Get complete error context as a dictionary.

        Returns:
            Dictionary containing all error context information.
        """
        return {
            "error_type": type(self).__name__,
            "message": self.message,
            "timestamp": self.timestamp,
            "correlation_id": self.correlation_id,
            "details": self.details,
        }


class EmptySampleError(ConcLabError):
    """Raised when an empirical CDF is built from no observations."""

    label = "Sample Error"

    def __init__(self, message: str = "empty sample", **kwargs: Any) -> None:
        super().__init__(message, **kwargs)


class NonFiniteSampleError(ConcLabError):
    """Raised when a sample contains NaN or infinite values."""

    label = "Sample Error"

    def __init__(self, message: str = "non-finite sample", **kwargs: Any) -> None:
        super().__init__(message, **kwargs)


class AtomCountMismatchError(ConcLabError):
    """Raised when two empirical CDFs must share the same atom count."""

    label = "Sample Error"

    def __init__(self, left: int, right: int) -> None:
        super().__init__(
            "atom count mismatch", details={"left_n": left, "right_n": right}
        )
        self.left = left
        self.right = right


class DivergentIntegralError(ConcLabError):
    """Raised when an integral over the real line is not finite."""

    label = "Divergent Integral"


class NonFiniteMomentError(ConcLabError):
    """Raised when a moment needed by a functional inequality is not finite."""

    label = "Non-finite Moment"


class InfiniteHardyConstantError(ConcLabError):
    """Raised when a Hardy-type constant diverges, so the measure fails PI."""

    label = "Hardy Constant"

    def __init__(self, message: str = "infinite Hardy constant", **kwargs: Any) -> None:
        super().__init__(message, **kwargs)


class ZeroIsoperimetricConstantError(ConcLabError):
    """Raised when the Cheeger constant vanishes numerically."""

    label = "Cheeger Constant"

    def __init__(
        self, message: str = "zero isoperimetric constant", **kwargs: Any
    ) -> None:
        super().__init__(message, **kwargs)


class OracleSizeExceededError(ConcLabError):
    """Raised when a brute-force oracle is asked for a too large dimension."""

    label = "Oracle Error"

    def __init__(self, n: int, limit: int) -> None:
        super().__init__("oracle size exceeded", details={"n": n, "limit": limit})
        self.n = n
        self.limit = limit


class NonSymmetricMatrixError(ConcLabError):
    """Raised when a matrix handed to the symmetric eigensolver is not symmetric."""

    label = "Matrix Error"


class DimensionMismatchError(ConcLabError):
    """Raised when two matrices or vectors must share a dimension."""

    label = "Matrix Error"


class EntryLawError(ConcLabError):
    """Raised when a Wigner entry law cannot be standardized."""

    label = "Entry Law"


class LipschitzViolationError(ConcLabError):
    """Raised when a Lipschitz bound that holds in theory fails numerically."""

    label = "Lipschitz Violation"


class UnknownBoundError(ConcLabError):
    """Raised when a bound identifier is not in the catalog."""

    label = "Unknown Bound"

    def __init__(self, bound_id: str, known: Optional[list] = None) -> None:
        super().__init__(
            f"unknown bound_id '{bound_id}'",
            details={"known": sorted(known)} if known else None,
        )
        self.bound_id = bound_id


class MissingScenarioConstantError(ConcLabError):
    """Raised when a scenario lacks a constant a catalog entry needs.

    Attributes:
        symbol: Name of the missing symbol (for example ``sigma2`` or ``r``).
        bound_id: Catalog entry that asked for it.
    """

    label = "Missing Constant"

    def __init__(self, symbol: str, bound_id: str = "") -> None:
        where = f" for {bound_id}" if bound_id else ""
        super().__init__(
            f"scenario does not supply '{symbol}'{where}",
            details={"symbol": symbol, "bound_id": bound_id},
        )
        self.symbol = symbol
        self.bound_id = bound_id


class ScenarioError(ConcLabError):
    """Raised when a scenario is incompatible with a catalog entry."""

    label = "Scenario Error"


class EstimationError(ConcLabError):
    """Raised when a Monte Carlo estimate cannot be formed from its replications."""

    label = "Estimation Error"


class DegenerateRegressionError(ConcLabError):
    """Raised when a log-log rate regression cannot be fitted."""

    label = "Regression Error"

    def __init__(
        self, message: str = "degenerate regression", **kwargs: Any
    ) -> None:
        super().__init__(message, **kwargs)


class ConfigurationError(ConcLabError):
    """Raised for invalid run configuration or environment settings."""

    label = "Configuration Error"
