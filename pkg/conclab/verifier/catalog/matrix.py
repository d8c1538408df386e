"""Catalog entries on Wigner spectra.

The rate entries compare spectral statistics with the pooled estimate of
F = E F_n or with the semicircle law G; the two structural entries check the
Hoffman-Wielandt inequality and the Lipschitz bound of the entries-to-spectrum
map on sampled matrices.
"""

import logging
import math
from typing import Tuple

import numpy as np

from conclab.core.config import MonteCarloPlan
from conclab.core.exceptions import LipschitzViolationError
from conclab.core.report import BoundReport
from conclab.core.streams import AUX_STREAM, replicate
from conclab.matrix.checks import (
    HW_TOLERANCE,
    LIPSCHITZ_TOLERANCE,
    hoffman_wielandt_check,
    spectral_map_lipschitz_check,
)
from conclab.matrix.ensemble import entry_vector, matrix_from_entries
from conclab.verifier.base import BoundCheck, RateCheck
from conclab.verifier.catalog.common import mean_kolmogorov, mean_w1, with_pool_error
from conclab.verifier.scenario import Scenario

logger = logging.getLogger(__name__)

MAX_MATRIX_TRIALS = 100


class SpectralW1RateCheck(RateCheck):
    """E W1(F_n, F) for Wigner spectra decays like sigma / n^(2/3)."""

    scenario_kinds = ("wigner",)

    def __init__(self) -> None:
        super().__init__("THM_1_3_W1", "matrix E W1(F_n, F) vs C s / n^(2/3)")

    def statistic(
        self, scenario: Scenario, plan: MonteCarloPlan
    ) -> Tuple[float, float]:
        return mean_w1(scenario, plan)

    def shape(self, scenario: Scenario) -> float:
        return scenario.entry_sigma("pi", self.bound_id) / scenario.n ** (2.0 / 3.0)


class SpectralKolmogorovRateCheck(RateCheck):
    """E||F_n - G|| decays like (sigma / n)^(2/3) log^(1/3) n + ||F - G||."""

    scenario_kinds = ("wigner",)

    def __init__(self) -> None:
        super().__init__(
            "THM_1_3_KOLM",
            "matrix E||F_n - G|| vs C (s/n)^(2/3) log^(1/3) n + ||F - G||",
        )

    def statistic(
        self, scenario: Scenario, plan: MonteCarloPlan
    ) -> Tuple[float, float]:
        G = scenario.reference(self.bound_id)
        return mean_kolmogorov(scenario, plan, against=G)

    def shape(self, scenario: Scenario) -> float:
        sigma = scenario.entry_sigma("lsi", self.bound_id)
        n = scenario.n
        decay = (sigma / n) ** (2.0 / 3.0) * math.log(n) ** (1.0 / 3.0)
        return decay + scenario.distance_to_reference(self.bound_id)


class SpectralPointRateCheck(RateCheck):
    """E|F_n(x) - G(x)| vs ||F - G|| + (sigma/n)^(6/7) + g(x)^(2/3) (sigma/n)^(2/3).

    At the spectral edge g(x) = 0 and the faster (sigma/n)^(6/7) term governs.
    """

    scenario_kinds = ("wigner",)

    def __init__(self) -> None:
        super().__init__(
            "THM_8_2_POINT",
            "E|F_n(x) - G(x)| vs ||F-G|| + C[(s/n)^(6/7) + g(x)^(2/3)(s/n)^(2/3)]",
        )

    def statistic(
        self, scenario: Scenario, plan: MonteCarloPlan
    ) -> Tuple[float, float]:
        x = float(scenario.parameter("x", self.bound_id))
        level = float(scenario.reference(self.bound_id).cdf(x))
        law = scenario.pointwise_law(plan, x)
        value, stderr = law.expect(lambda v: np.abs(v - level))
        return value, with_pool_error(scenario, stderr)

    def shape(self, scenario: Scenario) -> float:
        x = float(scenario.parameter("x", self.bound_id))
        G = scenario.reference(self.bound_id)
        ratio = scenario.entry_sigma("lsi", self.bound_id) / scenario.n
        density = float(G.density(x))
        return (
            scenario.distance_to_reference(self.bound_id)
            + ratio ** (6.0 / 7.0)
            + density ** (2.0 / 3.0) * ratio ** (2.0 / 3.0)
        )

    def run(self, scenario: Scenario, plan: MonteCarloPlan) -> BoundReport:
        report = super().run(scenario, plan)
        x = float(scenario.parameter("x", self.bound_id))
        density = float(scenario.reference(self.bound_id).density(x))
        region = "edge" if density == 0.0 else "bulk"
        return report.model_copy(
            update={"metadata": {**report.metadata, "x": x, "region": region}}
        )


class HoffmanWielandtCheck(BoundCheck):
    """sum_i (lambda_i - lambda'_i)^2 <= ||A - A'||_HS^2 on sampled pairs.

    The report stores the worst ratio of the two sides against 1.
    """

    scenario_kinds = ("wigner",)

    def __init__(self) -> None:
        super().__init__(
            "HOFFMAN_WIELANDT", "sum (lambda_i - lambda'_i)^2 <= ||A - A'||_HS^2"
        )

    def run(self, scenario: Scenario, plan: MonteCarloPlan) -> BoundReport:
        self.validate(scenario)
        cfg = scenario.ensemble
        trials = min(plan.replications, MAX_MATRIX_TRIALS)

        def _pair(rng: np.random.Generator) -> Tuple[float, float]:
            first = matrix_from_entries(cfg.n, entry_vector(cfg, rng))
            second = matrix_from_entries(cfg.n, entry_vector(cfg, rng))
            return hoffman_wielandt_check(first, second)

        sides = replicate(plan.with_n(cfg.n), _pair, count=trials, stream=AUX_STREAM)
        ratios = [lhs / rhs for lhs, rhs in sides if rhs > 0]
        worst = max(ratios, default=0.0)
        return self.report(
            scenario,
            plan,
            worst,
            1.0,
            exact=True,
            tolerance=HW_TOLERANCE,
            metadata={"pairs": trials},
        )


class SpectralLipschitzCheck(BoundCheck):
    """||lambda(u) - lambda(v)|| / ||u - v|| <= sqrt(2 / n) on sampled pairs."""

    scenario_kinds = ("wigner",)

    def __init__(self) -> None:
        super().__init__("SPECTRAL_LIPSCHITZ", "spectral map ratio <= sqrt(2/n)")

    def run(self, scenario: Scenario, plan: MonteCarloPlan) -> BoundReport:
        self.validate(scenario)
        cfg = scenario.ensemble
        trials = min(plan.replications, MAX_MATRIX_TRIALS)
        try:
            worst = spectral_map_lipschitz_check(cfg, trials=trials)
        except LipschitzViolationError as e:
            logger.error(f"[VERIFY-{self.bound_id}] {e}")
            worst = float(e.details["ratio"])
        return self.report(
            scenario,
            plan,
            worst,
            math.sqrt(2.0 / cfg.n),
            exact=True,
            tolerance=LIPSCHITZ_TOLERANCE,
            metadata={"trials": trials},
        )


def matrix_checks():
    """Instances of every spectral entry."""
    return [
        SpectralW1RateCheck(),
        SpectralKolmogorovRateCheck(),
        SpectralPointRateCheck(),
        HoffmanWielandtCheck(),
        SpectralLipschitzCheck(),
    ]
