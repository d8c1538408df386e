"""Base class for analytic one-dimensional distributions.

This module provides the AnalyticDistribution abstract class bundling density,
CDF, quantile, support and the Lipschitz seminorm of the CDF (the supremum of
the density), together with quadrature helpers shared by every law.
"""

import logging
import math
import warnings
from abc import ABC, abstractmethod
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

import numpy as np
from scipy import integrate

from conclab.core.exceptions import NonFiniteMomentError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

QUANTILE_TOL = 1e-12
QUAD_EPSABS = 1e-13
QUAD_EPSREL = 1e-11


def _out(x: Any, values: np.ndarray) -> ArrayLike:
    """Return a float for scalar input and an array otherwise."""
    if np.ndim(x) == 0:
        return float(values)
    return values


def bisect_quantile(
    cdf: Callable[[np.ndarray], np.ndarray],
    t: np.ndarray,
    lo: float,
    hi: float,
    tol: float = QUANTILE_TOL,
) -> np.ndarray:
    """Invert a nondecreasing CDF by vectorized bisection.

    Infinite bracket ends are expanded by doubling until they enclose every
    requested level.

    Args:
        cdf: Vectorized CDF.
        t: Levels in [0, 1].
        lo: Lower bracket (may be -inf).
        hi: Upper bracket (may be +inf).
        tol: Absolute width at which bisection stops.

    Returns:
        Smallest x (to ``tol``) with cdf(x) >= t, elementwise.
    """
    t = np.asarray(t, dtype=float)
    left = np.full(t.shape, lo if math.isfinite(lo) else -1.0)
    right = np.full(t.shape, hi if math.isfinite(hi) else 1.0)
    if not math.isfinite(lo):
        for _ in range(2000):
            low_mask = cdf(left) > t
            if not np.any(low_mask):
                break
            left = np.where(low_mask, 2.0 * left - 1.0, left)
    if not math.isfinite(hi):
        for _ in range(2000):
            high_mask = cdf(right) < t
            if not np.any(high_mask):
                break
            right = np.where(high_mask, 2.0 * right + 1.0, right)

    for _ in range(200):
        if np.all(right - left <= tol * np.maximum(1.0, np.abs(left))):
            break
        mid = 0.5 * (left + right)
        below = cdf(mid) < t
        left = np.where(below, mid, left)
        right = np.where(below, right, mid)
    return right


class AnalyticDistribution(ABC):
    """Abstract base class for analytic laws on the real line.

    Attributes:
        name: Library id of the law.
        support: Closed support interval, ends may be infinite.
        lipschitz_M: Supremum of the density; +inf marks unbounded density.
        pi_constant: Known Poincare constant sigma^2, or None.
        lsi_constant: Known log-Sobolev constant sigma^2, or None.
        has_finite_mean: False for laws without a first moment.

    Example:
        >>> law = gaussian()
        >>> law.cdf(0.0)
        0.5
    """

    def __init__(
        self,
        name: str,
        support: Tuple[float, float] = (-math.inf, math.inf),
        lipschitz_M: float = math.inf,
        pi_constant: Optional[float] = None,
        lsi_constant: Optional[float] = None,
        has_finite_mean: bool = True,
    ) -> None:
        """Initialize the shared attributes.

        Raises:
            ValueError: If the support is empty or M is negative.
        """
        if not support[0] < support[1]:
            raise ValueError("support must be a nonempty interval")
        if lipschitz_M < 0:
            raise ValueError("lipschitz_M must be nonnegative")
        self.name = name
        self.support = (float(support[0]), float(support[1]))
        self.lipschitz_M = float(lipschitz_M)
        self.pi_constant = pi_constant
        self.lsi_constant = lsi_constant
        self.has_finite_mean = has_finite_mean

    @abstractmethod
    def density(self, x: ArrayLike) -> ArrayLike:
        """Evaluate the density at x (vectorized)."""
        pass

    @abstractmethod
    def cdf(self, x: ArrayLike) -> ArrayLike:
        """Evaluate the CDF at x (vectorized)."""
        pass

    def sf(self, x: ArrayLike) -> ArrayLike:
        """Survival function 1 - cdf(x); laws override it for tail accuracy."""
        return _out(x, 1.0 - np.asarray(self.cdf(np.asarray(x, dtype=float))))

    def quantile(self, t: ArrayLike) -> ArrayLike:
        """Generalized inverse of the CDF, by bisection unless overridden."""
        levels = np.asarray(t, dtype=float)
        if np.any((levels < 0.0) | (levels > 1.0)):
            raise ValueError("quantile levels must lie in [0, 1]")
        values = bisect_quantile(
            lambda z: np.asarray(self.cdf(z)), levels, *self.support
        )
        values = np.where(levels <= 0.0, self.support[0], values)
        values = np.where(levels >= 1.0, self.support[1], values)
        return _out(t, values)

    def isf(self, t: ArrayLike) -> ArrayLike:
        """Inverse survival function: the point with upper tail mass t."""
        return self.quantile(1.0 - np.asarray(t, dtype=float))

    @property
    def median(self) -> float:
        """Median of the law."""
        return float(self.quantile(0.5))

    @property
    def mode(self) -> float:
        """A point where the density attains lipschitz_M."""
        return self.median

    def breakpoints(self) -> List[float]:
        """Points where the density is not smooth, used to split quadrature."""
        return [p for p in self.support if math.isfinite(p)]

    def params(self) -> Dict[str, float]:
        """Constructor parameters, for reports and repr."""
        return {}

    def tail_bounds(self, level: float = 1e-9) -> Tuple[float, float]:
        """Support truncated to the quantiles at ``level`` and ``1 - level``."""
        lo, hi = self.support
        if not math.isfinite(lo):
            lo = float(self.quantile(level))
        if not math.isfinite(hi):
            hi = float(self.isf(level))
        return lo, hi

    def integrate(
        self,
        func: Callable[[float], float],
        lo: Optional[float] = None,
        hi: Optional[float] = None,
        weighted: bool = True,
        extra_points: Optional[List[float]] = None,
    ) -> float:
        """Integrate ``func`` (times the density when ``weighted``) by quadpack.

        The range is split at the law's breakpoints so every piece is smooth.

        Args:
            func: Scalar integrand.
            lo: Lower limit, defaults to the support start.
            hi: Upper limit, defaults to the support end.
            weighted: Multiply by the density.
            extra_points: Additional split points.

        Returns:
            The integral.

        Raises:
            NonFiniteMomentError: If quadpack reports a non-finite or
                unreliable value.
        """
        lo = self.support[0] if lo is None else lo
        hi = self.support[1] if hi is None else hi
        if not lo < hi:
            return 0.0
        cuts = sorted(
            {p for p in self.breakpoints() + list(extra_points or []) if lo < p < hi}
        )
        edges = [lo] + cuts + [hi]

        if weighted:
            def integrand(x: float) -> float:
                weight = float(self.density(x))
                return func(x) * weight if weight > 0.0 else 0.0
        else:
            integrand = func

        total = 0.0
        for a, b in zip(edges[:-1], edges[1:]):
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", integrate.IntegrationWarning)
                value, error = integrate.quad(
                    integrand, a, b, epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL, limit=500
                )
            if not math.isfinite(value) or error > 1e-6 * max(1.0, abs(value)):
                raise NonFiniteMomentError(
                    f"quadrature of a {self.name} expectation did not converge",
                    details={"lo": a, "hi": b, "value": value, "error": error},
                )
            total += value
        return total

    def expect(self, func: Callable[[float], float]) -> float:
        """Expectation of ``func`` under the law."""
        return self.integrate(func)

    def mean(self) -> float:
        """Mean of the law.

        Raises:
            NonFiniteMomentError: If the law has no first moment.
        """
        if not self.has_finite_mean:
            raise NonFiniteMomentError(f"{self.name} has no finite mean")
        return self.expect(lambda x: x)

    def variance(self) -> float:
        """Variance of the law."""
        mu = self.mean()
        return self.expect(lambda x: (x - mu) ** 2)

    def sample(self, rng: np.random.Generator, size: Any) -> np.ndarray:
        """Draw samples by inversion of uniform levels."""
        levels = rng.random(size)
        return np.asarray(self.quantile(levels), dtype=float)

    def __str__(self) -> str:
        args = ", ".join(f"{k}={v:g}" for k, v in self.params().items())
        return f"{self.__class__.__name__}({args})"

    def __repr__(self) -> str:
        return self.__str__()
