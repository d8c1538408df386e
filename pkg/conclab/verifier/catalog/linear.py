"""Catalog entries on linear functionals int f dF_n.

Every entry here works on product scenarios: the deviation
D = int f dF_n - int f dF is computed per replication, and int f dF is
integrated coordinate by coordinate against the shifted coordinate law.
For f(x) = x with Gaussian coordinates D is exactly normal and the left sides
come from closed forms instead of sampling.
"""

import logging
import math
from typing import Callable, Optional, Tuple

import numpy as np

from conclab.core.config import MonteCarloPlan
from conclab.core.exceptions import ScenarioError
from conclab.core.report import BoundReport
from conclab.functional.measures import ConstantKind
from conclab.hopf_lax.grid import GridFunction, grid_tolerance
from conclab.hopf_lax.operators import inf_convolution, sup_convolution
from conclab.verifier.base import BoundCheck
from conclab.verifier.functions import TestFunctionSpec
from conclab.verifier.scenario import Scenario
from conclab.verifier.stats import (
    entropy_of_square,
    frequency,
    gaussian_abs_moment,
    gaussian_two_sided_tail,
    log_mean_exp,
    mean_and_stderr,
)

logger = logging.getLogger(__name__)

GRID_TAIL_LEVEL = 1e-9
# equality cases of exact entries differ from rhs by quadrature error only
EXACT_RTOL = 1e-6


def mean_marginal_expect(scenario: Scenario, func: Callable) -> float:
    """int func dF for the mean marginal F of a product scenario."""
    law = scenario.coordinate_law()
    shifts, counts = np.unique(scenario.product.shift_vector, return_counts=True)
    total = 0.0
    for shift, count in zip(shifts, counts):
        total += count * law.expect(lambda y, s=shift: float(func(y + s)))
    return total / float(counts.sum())


class LinearFunctionalCheck(BoundCheck):
    """Shared machinery of the int f dF_n entries.

    Attributes:
        constant_kind: pi or lsi; selects sigma^2.
    """

    def __init__(
        self, bound_id: str, description: str, constant_kind: ConstantKind
    ) -> None:
        super().__init__(bound_id, description)
        self.constant_kind = constant_kind

    def sigma2(self, scenario: Scenario) -> float:
        return scenario.sigma2(self.constant_kind, self.bound_id)

    def deviations(self, scenario: Scenario, plan: MonteCarloPlan) -> np.ndarray:
        spec = scenario.test_function()
        center = mean_marginal_expect(scenario, spec.f)
        rows = scenario.sample(plan)
        return np.asarray(spec.f(rows), dtype=float).mean(axis=1) - center

    def gaussian_sd(self, scenario: Scenario) -> Optional[float]:
        """Exact sd of D when f is the identity and coordinates are Gaussian."""
        if scenario.config.function != "identity":
            return None
        return scenario.linear_sd()

    def require_lipschitz(self, spec: TestFunctionSpec) -> None:
        if spec.lipschitz > 1.0:
            raise ScenarioError(
                f"{self.bound_id} needs a 1-Lipschitz test function",
                details={"function": spec.name, "lipschitz": spec.lipschitz},
            )

    def run(self, scenario: Scenario, plan: MonteCarloPlan) -> BoundReport:
        self.validate(scenario)
        return self.evaluate(scenario, plan)

    def evaluate(self, scenario: Scenario, plan: MonteCarloPlan) -> BoundReport:
        raise NotImplementedError


class SecondMomentCheck(LinearFunctionalCheck):
    """E|D|^2 <= (sigma^2 / n) int f'^2 dF under PI."""

    def __init__(self) -> None:
        super().__init__(
            "PROP_2_1", "E|int f dF_n - int f dF|^2 <= (s2/n) int f'^2 dF", "pi"
        )

    def evaluate(self, scenario: Scenario, plan: MonteCarloPlan) -> BoundReport:
        sigma2 = self.sigma2(scenario)
        spec = scenario.test_function()
        energy = mean_marginal_expect(scenario, lambda x: spec.derivative(x) ** 2)
        rhs = sigma2 / scenario.n * energy
        sd = self.gaussian_sd(scenario)
        if sd is not None:
            return self.report(
                scenario, plan, sd**2, rhs, exact=True, tolerance=EXACT_RTOL * rhs
            )
        lhs, stderr = mean_and_stderr(self.deviations(scenario, plan) ** 2)
        return self.report(
            scenario, plan, lhs, rhs, stderr, metadata={"sigma2": sigma2}
        )


class MomentCheck(LinearFunctionalCheck):
    """E|D|^p <= factor(sigma, p)^p n^(-p/2) int |f'|^p dF for p >= 2.

    Under PI the factor is sigma p, under LSI it is sigma sqrt(p).
    """

    def evaluate(self, scenario: Scenario, plan: MonteCarloPlan) -> BoundReport:
        p = float(scenario.parameter("p", self.bound_id))
        if p < 2.0:
            raise ScenarioError(f"{self.bound_id} needs p >= 2", details={"p": p})
        sigma = math.sqrt(self.sigma2(scenario))
        spec = scenario.test_function()
        factor = sigma * p if self.constant_kind == "pi" else sigma * math.sqrt(p)
        energy = mean_marginal_expect(scenario, lambda x: abs(spec.derivative(x)) ** p)
        rhs = factor**p * scenario.n ** (-p / 2.0) * energy
        meta = {"p": p, "sigma": sigma}
        sd = self.gaussian_sd(scenario)
        if sd is not None:
            lhs = gaussian_abs_moment(sd, p)
            return self.report(scenario, plan, lhs, rhs, exact=True, metadata=meta)
        lhs, stderr = mean_and_stderr(np.abs(self.deviations(scenario, plan)) ** p)
        return self.report(scenario, plan, lhs, rhs, stderr, metadata=meta)


class TailCheck(LinearFunctionalCheck):
    """P{|D| >= h} for a 1-Lipschitz f.

    g = int f dF_n is (1/sqrt n)-Lipschitz, so under PI the bound is
    6 e^{-sqrt(n) h / sigma}; under LSI it is 2 e^{-n h^2 / (2 sigma^2)}.
    """

    def evaluate(self, scenario: Scenario, plan: MonteCarloPlan) -> BoundReport:
        h = float(scenario.parameter("h", self.bound_id))
        spec = scenario.test_function()
        self.require_lipschitz(spec)
        sigma2 = self.sigma2(scenario)
        n = scenario.n
        if self.constant_kind == "pi":
            rhs = 6.0 * math.exp(-math.sqrt(n) * h / math.sqrt(sigma2))
        else:
            rhs = 2.0 * math.exp(-n * h * h / (2.0 * sigma2))
        meta = {"h": h, "sigma2": sigma2}
        sd = self.gaussian_sd(scenario)
        if sd is not None:
            lhs = gaussian_two_sided_tail(sd, h)
            return self.report(scenario, plan, lhs, rhs, exact=True, metadata=meta)
        hits = np.abs(self.deviations(scenario, plan)) >= h
        lhs, stderr = frequency(hits, plan.slack_sigmas)
        return self.report(scenario, plan, lhs, rhs, stderr, metadata=meta)


class EntropyCheck(LinearFunctionalCheck):
    """Ent[(int f dF_n)^2] <= (2 sigma^2 / n) int f'^2 dF under LSI."""

    def __init__(self) -> None:
        super().__init__(
            "PROP_5_1_ENT", "Ent[(int f dF_n)^2] <= (2 s2/n) int f'^2 dF", "lsi"
        )

    def evaluate(self, scenario: Scenario, plan: MonteCarloPlan) -> BoundReport:
        sigma2 = self.sigma2(scenario)
        spec = scenario.test_function()
        energy = mean_marginal_expect(scenario, lambda x: spec.derivative(x) ** 2)
        rhs = 2.0 * sigma2 / scenario.n * energy
        values = np.asarray(spec.f(scenario.sample(plan)), dtype=float).mean(axis=1)
        lhs, stderr = entropy_of_square(values)
        return self.report(
            scenario, plan, lhs, rhs, stderr, metadata={"sigma2": sigma2}
        )


def hopf_lax_gap(
    scenario: Scenario, spec: TestFunctionSpec, s: float, upper: bool
) -> Tuple[float, float]:
    """int [P_s f - f] dF (upper) or int [f - Q_s f] dF, with its grid tolerance.

    The grid covers the 1e-9 tails of every shifted coordinate law, padded by
    2 s Lip(f) so every optimizer stays on the grid.
    """
    law = scenario.coordinate_law()
    shifts, counts = np.unique(scenario.product.shift_vector, return_counts=True)
    lo, hi = law.tail_bounds(GRID_TAIL_LEVEL)
    lo, hi = lo + float(shifts.min()), hi + float(shifts.max())
    dx = scenario.config.grid_dx
    pad = 2.0 * s * spec.lipschitz + 10.0 * dx
    grid = GridFunction.from_callable(spec.f, lo - pad, hi + pad, dx)
    if upper:
        gap = np.asarray(sup_convolution(grid, s).values) - grid.values
    else:
        gap = grid.values - np.asarray(inf_convolution(grid, s).values)

    nodes = grid.nodes
    density = np.zeros_like(nodes)
    for shift, count in zip(shifts, counts):
        density += count * np.asarray(law.density(nodes - shift), dtype=float)
    density /= float(counts.sum())
    weights = density * dx
    mass = float(weights.sum())
    value = float(weights @ gap) / mass
    logger.debug(f"[HOPF-LAX-s={s:.3g}] gap={value:.6g} grid_mass={mass:.9f}")
    return value, grid_tolerance(grid, spec.lipschitz)


class MgfCheck(LinearFunctionalCheck):
    """Infimum-convolution bounds on the Laplace transform of D under LSI.

    With s = t sigma^2 / n:
        log E e^{t D}  <= t int [P_s f - f] dF   (upper),
        log E e^{-t D} <= t int [f - Q_s f] dF   (lower).
    """

    def __init__(self, bound_id: str, description: str, upper: bool) -> None:
        super().__init__(bound_id, description, "lsi")
        self.upper = upper

    def evaluate(self, scenario: Scenario, plan: MonteCarloPlan) -> BoundReport:
        t = float(scenario.parameter("t", self.bound_id))
        sigma2 = self.sigma2(scenario)
        spec = scenario.test_function()
        s = t * sigma2 / scenario.n
        gap, grid_tol = hopf_lax_gap(scenario, spec, s, self.upper)
        rhs = t * gap
        tolerance = t * grid_tol
        sign = 1.0 if self.upper else -1.0
        meta = {"t": t, "s": s, "sigma2": sigma2}
        sd = self.gaussian_sd(scenario)
        if sd is not None:
            lhs = 0.5 * (t * sd) ** 2
            return self.report(
                scenario, plan, lhs, rhs, exact=True, tolerance=tolerance, metadata=meta
            )
        lhs, stderr = log_mean_exp(self.deviations(scenario, plan), sign * t)
        return self.report(
            scenario, plan, lhs, rhs, stderr, tolerance=tolerance, metadata=meta
        )


def linear_checks():
    """Instances of every linear-functional entry."""
    return [
        SecondMomentCheck(),
        MomentCheck(
            "PROP_2_3_MOMENT", "E|D|^p <= (s p)^p n^(-p/2) int |f'|^p dF", "pi"
        ),
        TailCheck("PROP_2_3_TAIL", "P{|D| >= h} <= 6 exp(-sqrt(n) h / s)", "pi"),
        MomentCheck(
            "PROP_5_2_MOMENT", "E|D|^p <= (s sqrt(p))^p n^(-p/2) int |f'|^p dF", "lsi"
        ),
        TailCheck("PROP_5_2_TAIL", "P{|D| >= h} <= 2 exp(-n h^2 / 2 s2)", "lsi"),
        EntropyCheck(),
        MgfCheck(
            "PROP_5_4_MGF", "log E e^{tD} <= t int [P_{t s2/n} f - f] dF", upper=True
        ),
        MgfCheck(
            "PROP_5_4_MGF_LOWER",
            "log E e^{-tD} <= t int [f - Q_{t s2/n} f] dF",
            upper=False,
        ),
    ]
