"""Standard library of analytic reference laws.

This module provides the Gaussian, uniform, two-sided exponential and
semicircle laws with their known Poincare/log-Sobolev constants, the heavy
tailed and gapped laws used as negative fixtures, the affine and shift-mixture
constructions, and the semicircle increment bound.
"""

import logging
import math
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np
from scipy import special, stats

from conclab.core.exceptions import ConfigurationError
from conclab.distributions.base import (
    AnalyticDistribution,
    ArrayLike,
    _out,
    bisect_quantile,
)

logger = logging.getLogger(__name__)


class Gaussian(AnalyticDistribution):
    """Normal law N(mean, var); PI and LSI hold with sigma^2 = var."""

    def __init__(self, mean: float = 0.0, var: float = 1.0) -> None:
        if var <= 0:
            raise ValueError("variance must be positive")
        self.loc = float(mean)
        self.var = float(var)
        self.scale = math.sqrt(var)
        super().__init__(
            "gaussian",
            lipschitz_M=1.0 / math.sqrt(2.0 * math.pi * var),
            pi_constant=self.var,
            lsi_constant=self.var,
        )

    def density(self, x: ArrayLike) -> ArrayLike:
        z = (np.asarray(x, dtype=float) - self.loc) / self.scale
        return _out(x, np.exp(-0.5 * z * z) / (self.scale * math.sqrt(2.0 * math.pi)))

    def cdf(self, x: ArrayLike) -> ArrayLike:
        return _out(
            x, special.ndtr((np.asarray(x, dtype=float) - self.loc) / self.scale)
        )

    def sf(self, x: ArrayLike) -> ArrayLike:
        return _out(
            x, special.ndtr((self.loc - np.asarray(x, dtype=float)) / self.scale)
        )

    def quantile(self, t: ArrayLike) -> ArrayLike:
        return _out(
            t, self.loc + self.scale * special.ndtri(np.asarray(t, dtype=float))
        )

    def isf(self, t: ArrayLike) -> ArrayLike:
        return _out(
            t, self.loc - self.scale * special.ndtri(np.asarray(t, dtype=float))
        )

    @property
    def median(self) -> float:
        return self.loc

    def mean(self) -> float:
        return self.loc

    def variance(self) -> float:
        return self.var

    def params(self) -> Dict[str, float]:
        return {"mean": self.loc, "var": self.var}

    def sample(self, rng: np.random.Generator, size) -> np.ndarray:
        return rng.normal(self.loc, self.scale, size)


class Uniform(AnalyticDistribution):
    """Uniform law on [a, b]; PI and LSI hold with sigma^2 = (b - a)^2 / pi^2."""

    def __init__(self, a: float = 0.0, b: float = 1.0) -> None:
        if not a < b:
            raise ValueError("uniform law needs a < b")
        self.a = float(a)
        self.b = float(b)
        width = self.b - self.a
        constant = width**2 / math.pi**2
        super().__init__(
            "uniform",
            support=(self.a, self.b),
            lipschitz_M=1.0 / width,
            pi_constant=constant,
            lsi_constant=constant,
        )

    def density(self, x: ArrayLike) -> ArrayLike:
        z = np.asarray(x, dtype=float)
        inside = (z >= self.a) & (z <= self.b)
        return _out(x, np.where(inside, 1.0 / (self.b - self.a), 0.0))

    def cdf(self, x: ArrayLike) -> ArrayLike:
        z = np.asarray(x, dtype=float)
        return _out(x, np.clip((z - self.a) / (self.b - self.a), 0.0, 1.0))

    def quantile(self, t: ArrayLike) -> ArrayLike:
        levels = np.asarray(t, dtype=float)
        if np.any((levels < 0.0) | (levels > 1.0)):
            raise ValueError("quantile levels must lie in [0, 1]")
        return _out(t, self.a + levels * (self.b - self.a))

    @property
    def median(self) -> float:
        return 0.5 * (self.a + self.b)

    def mean(self) -> float:
        return 0.5 * (self.a + self.b)

    def variance(self) -> float:
        return (self.b - self.a) ** 2 / 12.0

    def params(self) -> Dict[str, float]:
        return {"a": self.a, "b": self.b}

    def sample(self, rng: np.random.Generator, size) -> np.ndarray:
        return rng.uniform(self.a, self.b, size)


class TwoSidedExponential(AnalyticDistribution):
    """Laplace law with density exp(-|x - loc|/scale) / (2 scale).

    Satisfies PI with sigma^2 = 4 scale^2 but no log-Sobolev inequality (its
    tails are not sub-Gaussian).
    """

    def __init__(self, loc: float = 0.0, scale: float = 1.0) -> None:
        if scale <= 0:
            raise ValueError("scale must be positive")
        self.loc = float(loc)
        self.scale = float(scale)
        super().__init__(
            "two_sided_exponential",
            lipschitz_M=1.0 / (2.0 * self.scale),
            pi_constant=4.0 * self.scale**2,
        )

    def density(self, x: ArrayLike) -> ArrayLike:
        z = np.abs(np.asarray(x, dtype=float) - self.loc) / self.scale
        return _out(x, 0.5 * np.exp(-z) / self.scale)

    def cdf(self, x: ArrayLike) -> ArrayLike:
        z = (np.asarray(x, dtype=float) - self.loc) / self.scale
        left = 0.5 * np.exp(np.minimum(z, 0.0))
        right = 1.0 - 0.5 * np.exp(-np.maximum(z, 0.0))
        return _out(x, np.where(z < 0.0, left, right))

    def sf(self, x: ArrayLike) -> ArrayLike:
        z = (np.asarray(x, dtype=float) - self.loc) / self.scale
        right = 0.5 * np.exp(-np.maximum(z, 0.0))
        left = 1.0 - 0.5 * np.exp(np.minimum(z, 0.0))
        return _out(x, np.where(z > 0.0, right, left))

    def quantile(self, t: ArrayLike) -> ArrayLike:
        levels = np.asarray(t, dtype=float)
        if np.any((levels < 0.0) | (levels > 1.0)):
            raise ValueError("quantile levels must lie in [0, 1]")
        with np.errstate(divide="ignore"):
            low = self.loc + self.scale * np.log(2.0 * levels)
            high = self.loc - self.scale * np.log(2.0 * (1.0 - levels))
        return _out(t, np.where(levels < 0.5, low, high))

    def isf(self, t: ArrayLike) -> ArrayLike:
        levels = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore"):
            high = self.loc - self.scale * np.log(2.0 * levels)
            low = self.loc + self.scale * np.log(2.0 * (1.0 - levels))
        return _out(t, np.where(levels < 0.5, high, low))

    @property
    def median(self) -> float:
        return self.loc

    def breakpoints(self) -> List[float]:
        return [self.loc]

    def mean(self) -> float:
        return self.loc

    def variance(self) -> float:
        return 2.0 * self.scale**2

    def params(self) -> Dict[str, float]:
        return {"loc": self.loc, "scale": self.scale}

    def sample(self, rng: np.random.Generator, size) -> np.ndarray:
        return rng.laplace(self.loc, self.scale, size)


class Semicircle(AnalyticDistribution):
    """Standard semicircle law with density sqrt(4 - x^2) / (2 pi) on [-2, 2].

    Mean 0, variance 1, density bounded by 1/pi. The quantile has no closed
    form and is computed by bisection on the closed-form CDF.
    """

    def __init__(self) -> None:
        super().__init__("semicircle", support=(-2.0, 2.0), lipschitz_M=1.0 / math.pi)

    def density(self, x: ArrayLike) -> ArrayLike:
        z = np.asarray(x, dtype=float)
        inside = np.clip(4.0 - z * z, 0.0, None)
        return _out(x, np.sqrt(inside) / (2.0 * math.pi))

    def cdf(self, x: ArrayLike) -> ArrayLike:
        z = np.clip(np.asarray(x, dtype=float), -2.0, 2.0)
        values = (
            0.5
            + z * np.sqrt(np.clip(4.0 - z * z, 0.0, None)) / (4.0 * math.pi)
            + np.arcsin(z / 2.0) / math.pi
        )
        return _out(x, np.clip(values, 0.0, 1.0))

    @property
    def median(self) -> float:
        return 0.0

    @property
    def mode(self) -> float:
        return 0.0

    def mean(self) -> float:
        return 0.0

    def variance(self) -> float:
        return 1.0


class Cauchy(AnalyticDistribution):
    """Cauchy law; no finite mean and no Poincare inequality."""

    def __init__(self, loc: float = 0.0, scale: float = 1.0) -> None:
        if scale <= 0:
            raise ValueError("scale must be positive")
        self.loc = float(loc)
        self.scale = float(scale)
        super().__init__(
            "cauchy", lipschitz_M=1.0 / (math.pi * self.scale), has_finite_mean=False
        )

    def density(self, x: ArrayLike) -> ArrayLike:
        return _out(
            x, stats.cauchy.pdf(np.asarray(x, dtype=float), self.loc, self.scale)
        )

    def cdf(self, x: ArrayLike) -> ArrayLike:
        return _out(
            x, stats.cauchy.cdf(np.asarray(x, dtype=float), self.loc, self.scale)
        )

    def sf(self, x: ArrayLike) -> ArrayLike:
        return _out(
            x, stats.cauchy.sf(np.asarray(x, dtype=float), self.loc, self.scale)
        )

    def quantile(self, t: ArrayLike) -> ArrayLike:
        return _out(
            t, stats.cauchy.ppf(np.asarray(t, dtype=float), self.loc, self.scale)
        )

    def isf(self, t: ArrayLike) -> ArrayLike:
        return _out(
            t, stats.cauchy.isf(np.asarray(t, dtype=float), self.loc, self.scale)
        )

    @property
    def median(self) -> float:
        return self.loc

    def params(self) -> Dict[str, float]:
        return {"loc": self.loc, "scale": self.scale}


class TwoIntervalUniform(AnalyticDistribution):
    """Uniform law on [a, b] union [c, d]; the density vanishes on (b, c)."""

    def __init__(
        self, a: float = -2.0, b: float = -1.0, c: float = 1.0, d: float = 2.0
    ) -> None:
        if not (a < b <= c < d):
            raise ValueError("two-interval uniform needs a < b <= c < d")
        self.a, self.b, self.c, self.d = float(a), float(b), float(c), float(d)
        self.length = (self.b - self.a) + (self.d - self.c)
        super().__init__(
            "two_interval_uniform",
            support=(self.a, self.d),
            lipschitz_M=1.0 / self.length,
        )

    def density(self, x: ArrayLike) -> ArrayLike:
        z = np.asarray(x, dtype=float)
        inside = ((z >= self.a) & (z <= self.b)) | ((z >= self.c) & (z <= self.d))
        return _out(x, np.where(inside, 1.0 / self.length, 0.0))

    def cdf(self, x: ArrayLike) -> ArrayLike:
        z = np.asarray(x, dtype=float)
        left = np.clip(z, self.a, self.b) - self.a
        right = np.clip(z, self.c, self.d) - self.c
        return _out(x, (left + right) / self.length)

    def quantile(self, t: ArrayLike) -> ArrayLike:
        levels = np.asarray(t, dtype=float)
        if np.any((levels < 0.0) | (levels > 1.0)):
            raise ValueError("quantile levels must lie in [0, 1]")
        mass = levels * self.length
        first = self.b - self.a
        values = np.where(mass <= first, self.a + mass, self.c + (mass - first))
        return _out(t, values)

    @property
    def mode(self) -> float:
        return 0.5 * (self.a + self.b)

    def breakpoints(self) -> List[float]:
        return [self.a, self.b, self.c, self.d]

    def params(self) -> Dict[str, float]:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d}


class AffineDistribution(AnalyticDistribution):
    """Law of loc + scale * Y for Y distributed as ``base``.

    PI/LSI constants scale by scale^2 and the density bound by 1/scale.
    """

    def __init__(self, base: AnalyticDistribution, loc: float, scale: float) -> None:
        if scale <= 0:
            raise ValueError("scale must be positive")
        self.base = base
        self.loc = float(loc)
        self.scale = float(scale)

        def _scaled(constant):
            return None if constant is None else constant * self.scale**2

        super().__init__(
            f"{base.name}_affine",
            support=(
                self.loc + self.scale * base.support[0],
                self.loc + self.scale * base.support[1],
            ),
            lipschitz_M=base.lipschitz_M / self.scale,
            pi_constant=_scaled(base.pi_constant),
            lsi_constant=_scaled(base.lsi_constant),
            has_finite_mean=base.has_finite_mean,
        )

    def _inner(self, x: ArrayLike) -> np.ndarray:
        return (np.asarray(x, dtype=float) - self.loc) / self.scale

    def density(self, x: ArrayLike) -> ArrayLike:
        return _out(x, np.asarray(self.base.density(self._inner(x))) / self.scale)

    def cdf(self, x: ArrayLike) -> ArrayLike:
        return _out(x, np.asarray(self.base.cdf(self._inner(x))))

    def sf(self, x: ArrayLike) -> ArrayLike:
        return _out(x, np.asarray(self.base.sf(self._inner(x))))

    def quantile(self, t: ArrayLike) -> ArrayLike:
        return _out(t, self.loc + self.scale * np.asarray(self.base.quantile(t)))

    def isf(self, t: ArrayLike) -> ArrayLike:
        return _out(t, self.loc + self.scale * np.asarray(self.base.isf(t)))

    @property
    def median(self) -> float:
        return self.loc + self.scale * self.base.median

    @property
    def mode(self) -> float:
        return self.loc + self.scale * self.base.mode

    def breakpoints(self) -> List[float]:
        return [self.loc + self.scale * p for p in self.base.breakpoints()]

    def mean(self) -> float:
        return self.loc + self.scale * self.base.mean()

    def variance(self) -> float:
        return self.scale**2 * self.base.variance()

    def params(self) -> Dict[str, float]:
        return {"loc": self.loc, "scale": self.scale, **self.base.params()}

    def sample(self, rng: np.random.Generator, size) -> np.ndarray:
        return self.loc + self.scale * self.base.sample(rng, size)


class ShiftMixture(AnalyticDistribution):
    """Average of ``base`` translated by each shift: F(x) = mean_i G(x - s_i).

    This is the mean marginal F of a product of shifted copies of ``base``.
    The density bound is taken as the largest mixture density over the
    translated modes of ``base``.
    """

    def __init__(self, base: AnalyticDistribution, shifts: Sequence[float]) -> None:
        values = np.asarray(shifts, dtype=float)
        if values.ndim != 1 or values.size == 0:
            raise ValueError("shifts must be a nonempty vector")
        if not np.all(np.isfinite(values)):
            raise ValueError("shifts must be finite")
        self.base = base
        self.shifts = values
        super().__init__(
            f"{base.name}_shifted",
            support=(
                base.support[0] + float(values.min()),
                base.support[1] + float(values.max()),
            ),
            lipschitz_M=base.lipschitz_M,
            has_finite_mean=base.has_finite_mean,
        )
        if np.ptp(values) > 0:
            peaks = np.asarray(self.density(values + base.mode))
            self.lipschitz_M = float(peaks.max())

    def density(self, x: ArrayLike) -> ArrayLike:
        z = np.asarray(x, dtype=float)[..., None] - self.shifts
        return _out(x, np.asarray(self.base.density(z)).mean(axis=-1))

    def cdf(self, x: ArrayLike) -> ArrayLike:
        z = np.asarray(x, dtype=float)[..., None] - self.shifts
        return _out(x, np.asarray(self.base.cdf(z)).mean(axis=-1))

    def sf(self, x: ArrayLike) -> ArrayLike:
        z = np.asarray(x, dtype=float)[..., None] - self.shifts
        return _out(x, np.asarray(self.base.sf(z)).mean(axis=-1))

    def isf(self, t: ArrayLike) -> ArrayLike:
        levels = np.asarray(t, dtype=float)
        values = bisect_quantile(
            lambda z: 1.0 - np.asarray(self.sf(z)), 1.0 - levels, *self.support
        )
        return _out(t, values)

    def breakpoints(self) -> List[float]:
        points = {p + s for p in self.base.breakpoints() for s in self.shifts}
        return sorted(points)

    @property
    def mode(self) -> float:
        peaks = np.asarray(self.density(self.shifts + self.base.mode))
        return float(self.shifts[int(np.argmax(peaks))] + self.base.mode)

    def mean(self) -> float:
        return self.base.mean() + float(self.shifts.mean())

    def params(self) -> Dict[str, float]:
        return {"n": float(self.shifts.size), **self.base.params()}


def gaussian(mean: float = 0.0, var: float = 1.0) -> Gaussian:
    """Normal law N(mean, var)."""
    return Gaussian(mean, var)


def uniform(a: float = 0.0, b: float = 1.0) -> Uniform:
    """Uniform law on [a, b]."""
    return Uniform(a, b)


def two_sided_exponential(loc: float = 0.0, scale: float = 1.0) -> TwoSidedExponential:
    """Two-sided exponential law; PI constant 4 at unit scale."""
    return TwoSidedExponential(loc, scale)


def semicircle() -> Semicircle:
    """Standard semicircle law on [-2, 2]."""
    return Semicircle()


def cauchy(loc: float = 0.0, scale: float = 1.0) -> Cauchy:
    """Cauchy law."""
    return Cauchy(loc, scale)


def two_interval_uniform(
    a: float = -2.0, b: float = -1.0, c: float = 1.0, d: float = 2.0
) -> TwoIntervalUniform:
    """Uniform law on two disjoint intervals."""
    return TwoIntervalUniform(a, b, c, d)


def affine(base: AnalyticDistribution, loc: float, scale: float) -> AffineDistribution:
    """Law of loc + scale * Y with Y ~ base."""
    return AffineDistribution(base, loc, scale)


def shift_mixture(
    base: AnalyticDistribution, shifts: Sequence[float]
) -> AnalyticDistribution:
    """Mean marginal of shifted copies of ``base``; ``base`` itself if unshifted."""
    values = np.asarray(shifts, dtype=float)
    if values.size and np.ptp(values) == 0:
        if values[0] == 0:
            return base
        return AffineDistribution(base, float(values[0]), 1.0)
    return ShiftMixture(base, values)


def standard_library() -> Dict[str, Callable[..., AnalyticDistribution]]:
    """Catalog of law constructors by id.

    Returns:
        Mapping of law id to a constructor taking keyword parameters.

    Example:
        >>> standard_library()["uniform"](a=0.0, b=1.0).lipschitz_M
        1.0
    """
    return {
        "gaussian": gaussian,
        "uniform": uniform,
        "two_sided_exponential": two_sided_exponential,
        "semicircle": semicircle,
        "cauchy": cauchy,
        "two_interval_uniform": two_interval_uniform,
    }


def build_distribution(law: str, **params: float) -> AnalyticDistribution:
    """Construct a library law from its id and parameters.

    Raises:
        ConfigurationError: If the id is unknown or the parameters are invalid.
    """
    library = standard_library()
    if law not in library:
        raise ConfigurationError(
            f"unknown law '{law}'", details={"known": sorted(library)}
        )
    try:
        return library[law](**params)
    except (TypeError, ValueError) as e:
        raise ConfigurationError(f"invalid parameters for law '{law}': {e}")


def semicircle_increment_bound(x: float, h: float) -> Tuple[float, float]:
    """Compare G(x + h) - G(x - h) with 2 g(x) h + (4 / 3 pi) h^(3/2).

    Args:
        x: Center point.
        h: Positive half-width.

    Returns:
        (increment, bound) for the standard semicircle law.

    Raises:
        ValueError: If h is not positive.

    Example:
        >>> increment, bound = semicircle_increment_bound(3.0, 0.5)
        >>> increment
        0.0
    """
    if not h > 0:
        raise ValueError("h must be positive")
    law = Semicircle()
    increment = float(law.cdf(x + h)) - float(law.cdf(x - h))
    bound = 2.0 * float(law.density(x)) * h + 4.0 / (3.0 * math.pi) * h**1.5
    return max(increment, 0.0), bound
