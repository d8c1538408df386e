"""Measure models carrying Poincare and log-Sobolev constants.

This module provides MeasureModel (a one-dimensional law with its median and
optional PI/LSI constants) and ProductMeasureSpec (n shifted copies of a
coordinate law, independent or comonotone), which defines the joint law of
the observations X_1, ..., X_n.
"""

import logging
import math
from typing import Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from conclab.core.exceptions import MissingScenarioConstantError
from conclab.distributions.base import AnalyticDistribution
from conclab.distributions.library import shift_mixture

logger = logging.getLogger(__name__)

ConstantKind = Literal["pi", "lsi"]

MEDIAN_TOL = 1e-9


class MeasureModel(BaseModel):
    """One-dimensional law with median and Poincare/log-Sobolev constants.

    Attributes:
        base: The law.
        median: A median m with base.cdf(m) = 1/2.
        pi_constant: sigma^2 with Var(g) <= sigma^2 E g'^2, if known.
        lsi_constant: sigma^2 with Ent(g^2) <= 2 sigma^2 E g'^2, if known.

    Example:
        >>> model = MeasureModel.from_distribution(two_sided_exponential())
        >>> model.pi_constant
        4.0
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    base: AnalyticDistribution = Field(description="One-dimensional law")
    median: float = Field(description="Median of the law")
    pi_constant: Optional[float] = Field(default=None, ge=0.0)
    lsi_constant: Optional[float] = Field(default=None, ge=0.0)

    @model_validator(mode="after")
    def _check(self) -> "MeasureModel":
        level = float(self.base.cdf(self.median))
        if abs(level - 0.5) > MEDIAN_TOL:
            raise ValueError(f"median {self.median} has cdf {level}, not 1/2")
        if (
            self.pi_constant is not None
            and self.lsi_constant is not None
            and self.pi_constant > self.lsi_constant
        ):
            raise ValueError(
                "LSI(s2) implies PI(s2): pi_constant must not exceed lsi_constant"
            )
        return self

    @classmethod
    def from_distribution(
        cls,
        base: AnalyticDistribution,
        pi_constant: Optional[float] = None,
        lsi_constant: Optional[float] = None,
    ) -> "MeasureModel":
        """Wrap a library law, taking its known constants unless overridden."""
        lsi = lsi_constant if lsi_constant is not None else base.lsi_constant
        pi = pi_constant if pi_constant is not None else base.pi_constant
        if pi is None and lsi is not None:
            pi = lsi
        return cls(base=base, median=base.median, pi_constant=pi, lsi_constant=lsi)

    def constant(self, kind: ConstantKind = "pi") -> float:
        """Return the requested constant.

        Raises:
            MissingScenarioConstantError: If the constant is not known.
        """
        value = self.pi_constant if kind == "pi" else self.lsi_constant
        if value is None:
            raise MissingScenarioConstantError(f"sigma2_{kind}")
        return value


class ProductMeasureSpec(BaseModel):
    """Joint law of n observations X_i = xi_i + s_i.

    With ``coupling="independent"`` the xi_i are i.i.d. copies of the
    coordinate law and the PI/LSI constants of the product equal the
    coordinate constants. With ``coupling="comonotone"`` every xi_i is the same
    draw; the diagonal embedding is sqrt(n)-Lipschitz, so the constants are n
    times the coordinate ones.

    Attributes:
        coordinate_model: Law of each xi_i.
        n: Number of observations.
        shifts: Per-coordinate location offsets s_i.
        coupling: independent or comonotone.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    coordinate_model: MeasureModel
    n: int = Field(ge=1)
    shifts: Tuple[float, ...] = Field(default=())
    coupling: Literal["independent", "comonotone"] = Field(default="independent")

    @field_validator("shifts", mode="before")
    @classmethod
    def _as_tuple(cls, value) -> Tuple[float, ...]:
        return tuple(float(v) for v in np.asarray(value, dtype=float).ravel())

    @model_validator(mode="after")
    def _check(self) -> "ProductMeasureSpec":
        if self.shifts and len(self.shifts) != self.n:
            raise ValueError(f"expected {self.n} shifts, got {len(self.shifts)}")
        if not all(math.isfinite(s) for s in self.shifts):
            raise ValueError("shifts must be finite")
        return self

    @classmethod
    def staircase(cls, model: MeasureModel, n: int) -> "ProductMeasureSpec":
        """Coordinates shifted by 0, 1, ..., n - 1."""
        shifts = tuple(float(i) for i in range(n))
        return cls(coordinate_model=model, n=n, shifts=shifts)

    @property
    def shift_vector(self) -> np.ndarray:
        if not self.shifts:
            return np.zeros(self.n)
        return np.asarray(self.shifts, dtype=float)

    @property
    def law(self) -> AnalyticDistribution:
        return self.coordinate_model.base

    def sigma2(self, kind: ConstantKind = "pi") -> float:
        """PI or LSI constant of the joint law on R^n."""
        value = self.coordinate_model.constant(kind)
        return value * self.n if self.coupling == "comonotone" else value

    def spread(self, kind: ConstantKind = "pi") -> float:
        """A = max_ij |E X_i - E X_j| / sigma."""
        sigma = math.sqrt(self.sigma2(kind))
        width = float(np.ptp(self.shift_vector))
        if width == 0.0:
            return 0.0
        return width / sigma

    def mean_marginal(self) -> AnalyticDistribution:
        """F = (1/n) sum_i law of X_i."""
        return shift_mixture(self.law, self.shift_vector)

    def sample(
        self, rng: np.random.Generator, size: Optional[int] = None
    ) -> np.ndarray:
        """Draw one observation vector, or ``size`` of them as rows."""
        rows = 1 if size is None else size
        if self.coupling == "comonotone":
            draws = self.law.sample(rng, (rows, 1)) + self.shift_vector
        else:
            draws = self.law.sample(rng, (rows, self.n)) + self.shift_vector
        return draws[0] if size is None else draws
