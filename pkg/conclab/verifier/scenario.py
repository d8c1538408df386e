"""Scenarios: a configured measure or matrix model at one n.

A Scenario turns a ScenarioConfig into the objects the catalog works with:
the joint law of the observations (product measure or Wigner spectrum), the
mean marginal F = E F_n, an optional reference law G, the constants sigma^2,
M and A, and cached replicated samples.
"""

import logging
import math
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from conclab.core.config import MonteCarloPlan, ScenarioConfig
from conclab.core.exceptions import MissingScenarioConstantError, ScenarioError
from conclab.core.streams import MAIN_STREAM, replicate
from conclab.distributions.base import AnalyticDistribution
from conclab.distributions.library import build_distribution, semicircle
from conclab.empirical.cdf import EmpiricalCdf, build_empirical
from conclab.empirical.metrics import kolmogorov_distance
from conclab.functional.measures import ConstantKind, MeasureModel, ProductMeasureSpec
from conclab.matrix.checks import PooledSpectrum, pooled_spectral_cdf, sample_spectra
from conclab.matrix.ensemble import WignerEnsembleConfig
from conclab.verifier.functions import TestFunctionSpec, get_test_function
from conclab.verifier.stats import PointLaw, pointwise_law_exact

logger = logging.getLogger(__name__)


def _shifts(config: ScenarioConfig, n: int) -> Tuple[float, ...]:
    if config.shifts == "none":
        return ()
    if config.shifts == "staircase":
        return tuple(float(i) for i in range(n))
    if len(config.shifts) != n:
        raise ScenarioError(
            f"explicit shifts have length {len(config.shifts)}, expected n={n}",
            details={"n": n},
        )
    return tuple(float(s) for s in config.shifts)


class Scenario:
    """A measure or matrix model instantiated at one n.

    Attributes:
        config: The scenario configuration.
        n: Sample size (product) or matrix dimension (wigner).
        sweep: n values used by rate entries.
        seed: Master seed, used by the pooled estimate of F for matrices.
        product: Joint law of the observations for product scenarios.
        ensemble: Wigner ensemble for matrix scenarios.

    Example:
        >>> scenario = Scenario(ScenarioConfig(), n=100, seed=1)
        >>> scenario.sigma2("lsi")
        1.0
    """

    def __init__(
        self,
        config: ScenarioConfig,
        n: int,
        seed: int,
        sweep: Optional[List[int]] = None,
    ) -> None:
        """Build the model.

        Args:
            config: Scenario configuration.
            n: Sample size or matrix dimension.
            seed: Master seed.
            sweep: n values of rate entries; defaults to ``config.n_sweep``.

        Raises:
            ConfigurationError: If a law id or its parameters are invalid.
            ScenarioError: If n is too small for the scenario kind or shifts
                do not match n.
            EntryLawError: If a Wigner entry law cannot be standardized.
        """
        if n < 1:
            raise ScenarioError("n must be positive", details={"n": n})
        if config.kind == "wigner" and n < 2:
            raise ScenarioError("Wigner matrices need n >= 2", details={"n": n})
        self.config = config
        self.n = n
        self.seed = seed
        self.sweep = list(config.n_sweep if sweep is None else sweep)
        self.product: Optional[ProductMeasureSpec] = None
        self.ensemble: Optional[WignerEnsembleConfig] = None
        self._samples: Dict[Tuple[int, int, int], np.ndarray] = {}
        self._pooled: Optional[PooledSpectrum] = None
        self._distance_to_reference: Optional[float] = None
        self._siblings: Dict[int, "Scenario"] = {}

        law = build_distribution(config.law.law, **config.law.params)
        if config.kind == "wigner":
            self.ensemble = WignerEnsembleConfig.standardized(
                n, law, seed, lsi_constant=config.lsi_constant
            )
        else:
            model = MeasureModel.from_distribution(
                law,
                pi_constant=config.pi_constant,
                lsi_constant=config.lsi_constant,
            )
            self.product = ProductMeasureSpec(
                coordinate_model=model,
                n=n,
                shifts=_shifts(config, n),
                coupling=config.coupling,
            )
        self._mean_marginal = (
            self.product.mean_marginal() if self.product is not None else None
        )
        self._reference: Optional[AnalyticDistribution] = None
        if config.reference is not None:
            self._reference = build_distribution(
                config.reference.law, **config.reference.params
            )
        elif config.kind == "wigner":
            self._reference = semicircle()

    def __str__(self) -> str:
        return f"Scenario(kind='{self.config.kind}', n={self.n})"

    def __repr__(self) -> str:
        return self.__str__()

    @property
    def kind(self) -> str:
        return self.config.kind

    def with_n(self, n: int) -> "Scenario":
        """The same configuration at another n, cached so pooled F is reused."""
        if n == self.n:
            return self
        if n not in self._siblings:
            self._siblings[n] = Scenario(self.config, n, self.seed, self.sweep)
        return self._siblings[n]

    # -- constants ---------------------------------------------------------

    def sigma2(self, kind: ConstantKind = "pi", bound_id: str = "") -> float:
        """PI or LSI constant of the joint law of (X_1, ..., X_n).

        For matrices this is 2 sigma^2 / n, sigma^2 being the entry constant.

        Raises:
            MissingScenarioConstantError: Naming ``sigma2_pi`` or ``sigma2_lsi``.
        """
        try:
            if self.ensemble is not None:
                return self.ensemble.spectral_sigma2(kind)
            return self.product.sigma2(kind)
        except MissingScenarioConstantError:
            raise MissingScenarioConstantError(f"sigma2_{kind}", bound_id)

    def entry_sigma(self, kind: ConstantKind = "pi", bound_id: str = "") -> float:
        """sigma of one matrix entry (matrix scenarios only)."""
        if self.ensemble is None:
            raise ScenarioError(f"{bound_id} needs a wigner scenario")
        try:
            return math.sqrt(self.ensemble.entry_model.constant(kind))
        except MissingScenarioConstantError:
            raise MissingScenarioConstantError(f"sigma2_{kind}", bound_id)

    def spread(self, kind: ConstantKind = "pi", bound_id: str = "") -> float:
        """A = max_ij |E X_i - E X_j| / sigma; taken as 0 for matrices."""
        if self.product is None:
            return 0.0
        self.sigma2(kind, bound_id)
        return self.product.spread(kind)

    def lipschitz_M(self, bound_id: str = "") -> float:
        """Density bound M of the mean marginal F.

        Raises:
            ScenarioError: If F is not known to be Lipschitz (atoms, unbounded
                density, or a pooled matrix estimate).
        """
        if self._mean_marginal is None:
            raise ScenarioError(
                f"{bound_id} needs a Lipschitz F; the pooled spectral F is a step"
            )
        M = self._mean_marginal.lipschitz_M
        if not math.isfinite(M) or M <= 0:
            raise ScenarioError(
                f"{bound_id} needs F with a bounded density", details={"M": M}
            )
        return M

    def reference_M(self, bound_id: str = "") -> float:
        """Density bound of the reference law G."""
        G = self.reference(bound_id)
        if not math.isfinite(G.lipschitz_M):
            raise ScenarioError(f"{bound_id} needs G with a bounded density")
        return G.lipschitz_M

    def parameter(self, symbol: str, bound_id: str = ""):
        """A per-bound parameter (x, r, h, t, p, a, b, interval, delta).

        Raises:
            MissingScenarioConstantError: If the scenario leaves it unset.
        """
        value = getattr(self.config, symbol, None)
        if value is None:
            raise MissingScenarioConstantError(symbol, bound_id)
        return value

    def test_function(self) -> TestFunctionSpec:
        return get_test_function(self.config.function)

    # -- reference laws ----------------------------------------------------

    def mean_cdf(self) -> Union[AnalyticDistribution, EmpiricalCdf]:
        """F = E F_n: analytic for products, pooled for matrices."""
        if self._mean_marginal is not None:
            return self._mean_marginal
        return self.pooled().cdf

    def pooled(self) -> PooledSpectrum:
        """Pooled spectral estimate of F, computed once per scenario."""
        if self.ensemble is None:
            raise ScenarioError("pooling is only defined for wigner scenarios")
        if self._pooled is None:
            self._pooled = pooled_spectral_cdf(
                self.ensemble,
                base_replications=self.config.pool_replications,
                max_replications=max(
                    self.config.pool_max_replications, self.config.pool_replications
                ),
            )
        return self._pooled

    def pool_stderr(self) -> float:
        """Kolmogorov-scale error of F; 0 when F is analytic."""
        if self._mean_marginal is not None:
            return 0.0
        return self.pooled().stderr

    def coordinate_law(self, bound_id: str = "") -> AnalyticDistribution:
        if self.product is None:
            raise ScenarioError(f"{bound_id} needs a product scenario")
        return self.product.law

    def reference(self, bound_id: str = "") -> AnalyticDistribution:
        """The reference law G.

        Raises:
            MissingScenarioConstantError: If no reference is configured.
        """
        if self._reference is None:
            raise MissingScenarioConstantError("reference", bound_id)
        return self._reference

    def distance_to_reference(self, bound_id: str = "") -> float:
        """Kolmogorov distance ||F - G||, using the pooled F for matrices."""
        if self._distance_to_reference is None:
            self._distance_to_reference = kolmogorov_distance(
                self.mean_cdf(), self.reference(bound_id)
            )
        return self._distance_to_reference

    def beta(self, M: float, kind: ConstantKind = "lsi", bound_id: str = "") -> float:
        """beta = (M sigma)^(2/3) / n^(1/3)."""
        sigma = math.sqrt(self.sigma2(kind, bound_id))
        return (M * sigma) ** (2.0 / 3.0) / self.n ** (1.0 / 3.0)

    # -- samples -----------------------------------------------------------

    def sample(self, plan: MonteCarloPlan, stream: int = MAIN_STREAM) -> np.ndarray:
        """Replicated observation vectors as rows of an (R, n) array.

        Matrix rows are sorted spectra. Results are cached per (seed, R,
        stream).
        """
        key = (plan.master_seed, plan.replications, stream)
        if key not in self._samples:
            plan = plan.with_n(self.n)
            if self.ensemble is not None:
                rows = sample_spectra(self.ensemble, plan, stream=stream)
            else:
                spec = self.product
                rows = np.vstack(
                    replicate(plan, lambda rng: spec.sample(rng), stream=stream)
                )
            rows.setflags(write=False)
            self._samples[key] = rows
            logger.debug(f"[SCENARIO-{self.kind}] sampled {rows.shape} stream={stream}")
        return self._samples[key]

    def empirical(
        self, plan: MonteCarloPlan, stream: int = MAIN_STREAM
    ) -> Tuple[EmpiricalCdf, ...]:
        """One EmpiricalCdf per replication."""
        return tuple(build_empirical(row) for row in self.sample(plan, stream))

    def pointwise_law(self, plan: MonteCarloPlan, x: float) -> PointLaw:
        """Law of F_n(x): exact for products, empirical for matrices."""
        if self.product is not None:
            return pointwise_law_exact(
                self.product.law, x, self.product.shift_vector, self.product.coupling
            )
        rows = self.sample(plan)
        return PointLaw.from_samples(np.mean(rows <= x, axis=1))

    def linear_sd(self) -> Optional[float]:
        """Exact sd of int x dF_n - int x dF when the coordinates are Gaussian.

        Returns None when no closed form applies.
        """
        if self.product is None or self.product.law.name != "gaussian":
            return None
        var = self.product.law.variance()
        if self.product.coupling == "comonotone":
            return math.sqrt(var)
        return math.sqrt(var / self.n)
