"""Calibration and one-dimensional functional-inequality entries.

SYNTHETIC_RATE feeds an exact n^(-2/3) statistic through the rate machinery.
The other entries wrap the coordinate-level checks of conclab.functional and
conclab.hopf_lax so they can be run from a scenario like any catalog entry.
"""

import logging
from typing import Tuple

import numpy as np

from conclab.core.config import MonteCarloPlan
from conclab.core.report import BoundReport
from conclab.functional.checks import (
    check_coordinate_tail,
    check_exp_moment,
    check_lsi_on_function,
    check_pi_on_function,
)
from conclab.hopf_lax.grid import GridFunction
from conclab.hopf_lax.lsi import infconv_lsi_check
from conclab.verifier.base import BoundCheck, RateCheck
from conclab.verifier.scenario import Scenario

logger = logging.getLogger(__name__)

SYNTHETIC_EXPONENT = -2.0 / 3.0
GRID_TAIL_LEVEL = 1e-9


class SyntheticRateCheck(RateCheck):
    """Statistic exactly n^(-2/3); the fit must recover the exponent."""

    scenario_kinds = ("product", "wigner")

    def __init__(self) -> None:
        super().__init__("SYNTHETIC_RATE", "n^(-2/3) vs C n^(-2/3)")

    def statistic(
        self, scenario: Scenario, plan: MonteCarloPlan
    ) -> Tuple[float, float]:
        return scenario.n**SYNTHETIC_EXPONENT, 0.0

    def shape(self, scenario: Scenario) -> float:
        return scenario.n**SYNTHETIC_EXPONENT


class WrappedCheck(BoundCheck):
    """Entry delegating to a coordinate-level check.

    The delegate reports n = 1 and seed = 0; the wrapper restamps the report
    with the run's n and seed.
    """

    def restamp(
        self, report: BoundReport, scenario: Scenario, plan: MonteCarloPlan
    ) -> BoundReport:
        lhs = report.lhs_estimate
        logger.debug(f"[VERIFY-{self.bound_id}] delegate lhs={lhs:.6g}")
        return report.model_copy(update={"n": scenario.n, "seed": plan.master_seed})


class CoordinateTailCheck(WrappedCheck):
    """P{X - E X >= h} and P{X - E X <= -h} <= 3 exp(-h / sigma), exactly."""

    def __init__(self) -> None:
        super().__init__("COORD_TAIL", "coordinate tails <= 3 exp(-h / s)")

    def run(self, scenario: Scenario, plan: MonteCarloPlan) -> BoundReport:
        self.validate(scenario)
        model = scenario.product.coordinate_model
        h = scenario.config.h
        levels = (h,) if h is not None else (0.5, 1.0, 2.0, 4.0)
        return self.restamp(check_coordinate_tail(model, levels), scenario, plan)


class ExpMomentCheck(WrappedCheck):
    """Exponential and L^p moments of mean-zero 1-Lipschitz functions under PI."""

    def __init__(self) -> None:
        super().__init__(
            "EXP_MOMENT", "E e^{t g/s} <= (2+t)/(2-t) and ||g||_p <= s p"
        )

    def run(self, scenario: Scenario, plan: MonteCarloPlan) -> BoundReport:
        self.validate(scenario)
        report = check_exp_moment(scenario.product.coordinate_model)
        return self.restamp(report, scenario, plan)


class ProductFunctionalCheck(WrappedCheck):
    """Var or Ent of g = (1/n) sum_i f(X_i) against sigma^2 E|grad g|^2.

    The gradient of g is f'(X_i) / n in coordinate i.
    """

    def __init__(self, bound_id: str, description: str, lsi: bool) -> None:
        super().__init__(bound_id, description)
        self.lsi = lsi

    def run(self, scenario: Scenario, plan: MonteCarloPlan) -> BoundReport:
        self.validate(scenario)
        spec = scenario.test_function()
        n = scenario.n

        def g(rows: np.ndarray) -> np.ndarray:
            return np.asarray(spec.f(rows), dtype=float).mean(axis=1)

        def gradient(rows: np.ndarray) -> np.ndarray:
            return np.asarray(spec.derivative(rows), dtype=float) / n

        check = check_lsi_on_function if self.lsi else check_pi_on_function
        kind = "lsi" if self.lsi else "pi"
        report = check(
            scenario.product,
            g,
            mc=plan.with_n(n),
            gradient=gradient,
            sigma2=scenario.sigma2(kind, self.bound_id),
        )
        return self.restamp(report, scenario, plan)


class InfConvolutionLsiCheck(WrappedCheck):
    """log int e^f <= int P f and log int e^{Q f} <= int f on the coordinate law."""

    def __init__(self) -> None:
        super().__init__(
            "INFCONV_LSI", "log int e^f dmu <= int P_{s2} f dmu and mirror form"
        )

    def run(self, scenario: Scenario, plan: MonteCarloPlan) -> BoundReport:
        self.validate(scenario)
        scenario.sigma2("lsi", self.bound_id)
        law = scenario.coordinate_law(self.bound_id)
        lo, hi = law.tail_bounds(GRID_TAIL_LEVEL)
        grid = GridFunction.from_callable(
            scenario.test_function().f, lo, hi, scenario.config.grid_dx
        )
        report = infconv_lsi_check(scenario.product.coordinate_model, grid)
        return self.restamp(report, scenario, plan)


def synthetic_checks():
    """Instances of the calibration and coordinate-level entries."""
    return [
        SyntheticRateCheck(),
        CoordinateTailCheck(),
        ExpMomentCheck(),
        ProductFunctionalCheck(
            "PI_FUNCTION", "Var g <= s2 E|grad g|^2, g = mean f(X_i)", lsi=False
        ),
        ProductFunctionalCheck(
            "LSI_FUNCTION", "Ent g^2 <= 2 s2 E|grad g|^2, g = mean f(X_i)", lsi=True
        ),
        InfConvolutionLsiCheck(),
    ]
