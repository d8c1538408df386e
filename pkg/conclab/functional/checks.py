"""Poincare and log-Sobolev inequalities evaluated on test functions.

In one dimension both sides are computed by quadrature against the law's
density; on a ProductMeasureSpec they are Monte Carlo estimates from a seeded
MonteCarloPlan, with the standard errors of both sides folded into the
reported lhs_stderr.
"""

import logging
import math
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import special

from conclab.core.config import MonteCarloPlan
from conclab.core.report import BoundReport
from conclab.core.streams import AUX_STREAM, replicate
from conclab.functional.measures import ConstantKind, MeasureModel, ProductMeasureSpec

logger = logging.getLogger(__name__)

TestFunction = Callable[[np.ndarray], np.ndarray]
Target = Union[MeasureModel, ProductMeasureSpec]

QUADRATURE_RTOL = 1e-8
ENTROPY_FLOOR = 1e-300
FD_STEP = 1e-6


def lipschitz_image_constant(base_constant: float, lip: float) -> float:
    """PI/LSI constant of the image of a measure under a Lipschitz map.

    Example:
        >>> lipschitz_image_constant(1.0, math.sqrt(2.0 / 8))
        0.25
    """
    if base_constant < 0 or lip < 0:
        raise ValueError("constant and Lipschitz seminorm must be nonnegative")
    return base_constant * lip**2


def finite_difference_gradient(g: TestFunction, x: np.ndarray) -> np.ndarray:
    """Central-difference gradient of g at the rows of x.

    A 1-D array is read as a batch of scalar points; a 2-D array of shape
    (rows, n) gives an (rows, n) gradient.
    """
    points = np.asarray(x, dtype=float)
    if points.ndim <= 1:
        step = FD_STEP * np.maximum(1.0, np.abs(points))
        return (np.asarray(g(points + step)) - np.asarray(g(points - step))) / (
            2.0 * step
        )
    grad = np.empty_like(points)
    for j in range(points.shape[1]):
        step = FD_STEP * np.maximum(1.0, np.abs(points[:, j]))
        up, down = points.copy(), points.copy()
        up[:, j] += step
        down[:, j] -= step
        grad[:, j] = (np.asarray(g(up)) - np.asarray(g(down))) / (2.0 * step)
    return grad


def _scalar(func: TestFunction) -> Callable[[float], float]:
    return lambda x: float(np.asarray(func(np.asarray(x, dtype=float))))


def _gradient_sq_1d(g: TestFunction, gradient: Optional[TestFunction]):
    if gradient is not None:
        return lambda x: float(np.asarray(gradient(np.asarray(x)))) ** 2
    return lambda x: float(finite_difference_gradient(g, np.array([x]))[0]) ** 2


def _xlogx(u):
    """u log u with u clipped below at 1e-300; 0 at 0 by continuity."""
    clipped = np.maximum(u, ENTROPY_FLOOR)
    return special.xlogy(clipped, clipped)


def _draws(spec: ProductMeasureSpec, mc: MonteCarloPlan) -> np.ndarray:
    rows = replicate(mc, lambda rng: spec.sample(rng), stream=AUX_STREAM)
    return np.vstack(rows)


def _mc_gradient_sq(
    g: TestFunction, gradient: Optional[TestFunction], x: np.ndarray
) -> np.ndarray:
    grad = gradient(x) if gradient is not None else finite_difference_gradient(g, x)
    grad = np.asarray(grad, dtype=float).reshape(x.shape)
    return np.sum(grad**2, axis=1)


def _mean_and_se(values: np.ndarray) -> Tuple[float, float]:
    return float(values.mean()), float(values.std(ddof=1) / math.sqrt(values.size))


def _require_plan(mc: Optional[MonteCarloPlan]) -> MonteCarloPlan:
    if mc is None:
        raise ValueError("a MonteCarloPlan is required for product measures")
    return mc


def check_pi_on_function(
    target: Target,
    g: TestFunction,
    mc: Optional[MonteCarloPlan] = None,
    gradient: Optional[TestFunction] = None,
    sigma2: Optional[float] = None,
) -> BoundReport:
    """Check Var(g) <= sigma^2 E|grad g|^2.

    Args:
        target: A 1-D MeasureModel (quadrature) or a ProductMeasureSpec
            (Monte Carlo, g maps rows of shape (R, n) to R values).
        g: Vectorized test function.
        mc: Monte Carlo plan, required for product measures.
        gradient: Exact gradient; central differences are used otherwise.
        sigma2: Override of the PI constant.

    Returns:
        BoundReport with lhs = Var(g) and rhs = sigma^2 E|grad g|^2.

    Raises:
        MissingScenarioConstantError: If no PI constant is known.
        NonFiniteMomentError: If a quadrature does not converge.

    Example:
        >>> model = MeasureModel.from_distribution(gaussian())
        >>> check_pi_on_function(model, lambda x: x).passed
        True
    """
    return _check_functional(target, g, "pi", mc, gradient, sigma2)


def check_lsi_on_function(
    target: Target,
    g: TestFunction,
    mc: Optional[MonteCarloPlan] = None,
    gradient: Optional[TestFunction] = None,
    sigma2: Optional[float] = None,
) -> BoundReport:
    """Check Ent(g^2) <= 2 sigma^2 E|grad g|^2.

    g^2 is clipped below at 1e-300 inside the logarithm and u log u is taken
    as 0 at u = 0. Arguments as in check_pi_on_function, with the LSI
    constant in place of the PI constant.
    """
    return _check_functional(target, g, "lsi", mc, gradient, sigma2)


def _check_functional(
    target: Target,
    g: TestFunction,
    kind: ConstantKind,
    mc: Optional[MonteCarloPlan],
    gradient: Optional[TestFunction],
    sigma2: Optional[float],
) -> BoundReport:
    bound_id = "PI_FUNCTION" if kind == "pi" else "LSI_FUNCTION"
    if isinstance(target, MeasureModel):
        constant = target.constant(kind) if sigma2 is None else sigma2
        law = target.base
        gs = _scalar(g)
        grad_sq = law.expect(_gradient_sq_1d(g, gradient))
        if kind == "pi":
            mean = law.expect(gs)
            lhs = law.expect(lambda x: (gs(x) - mean) ** 2)
            rhs = constant * grad_sq
        else:
            second = law.expect(lambda x: gs(x) ** 2)
            lhs = law.expect(lambda x: float(_xlogx(gs(x) ** 2))) - float(
                _xlogx(second)
            )
            rhs = 2.0 * constant * grad_sq
        tolerance = QUADRATURE_RTOL * max(1.0, abs(rhs))
        logger.debug(f"[{bound_id}-{law.name}] lhs={lhs:.6g} rhs={rhs:.6g}")
        return BoundReport.evaluate(
            bound_id=bound_id,
            n=1,
            seed=0,
            lhs_estimate=lhs,
            rhs_value=rhs,
            tolerance=tolerance,
            metadata={"law": law.name, "sigma2": constant, "method": "quadrature"},
        )

    plan = _require_plan(mc)
    constant = target.sigma2(kind) if sigma2 is None else sigma2
    x = _draws(target, plan)
    values = np.asarray(g(x), dtype=float).reshape(-1)
    grad_sq = _mc_gradient_sq(g, gradient, x)
    energy, energy_se = _mean_and_se(grad_sq)
    if kind == "pi":
        centered = (values - values.mean()) ** 2
        lhs, lhs_se = float(values.var(ddof=1)), _mean_and_se(centered)[1]
        factor = constant
    else:
        squares = values**2
        plog, plog_se = _mean_and_se(_xlogx(squares))
        lhs = plog - float(_xlogx(squares.mean()))
        lhs_se = plog_se
        factor = 2.0 * constant
    rhs = factor * energy
    stderr = math.sqrt(lhs_se**2 + (factor * energy_se) ** 2)
    logger.debug(
        f"[{bound_id}-n={target.n}] lhs={lhs:.6g} rhs={rhs:.6g} se={stderr:.3g}"
    )
    return BoundReport.evaluate(
        bound_id=bound_id,
        n=target.n,
        seed=plan.master_seed,
        lhs_estimate=lhs,
        rhs_value=rhs,
        lhs_stderr=stderr,
        slack_sigmas=plan.slack_sigmas,
        metadata={
            "law": target.law.name,
            "sigma2": constant,
            "coupling": target.coupling,
            "rhs_stderr": factor * energy_se,
            "method": "monte_carlo",
        },
    )


def check_exp_moment(
    m: MeasureModel,
    mc: Optional[MonteCarloPlan] = None,
    t_values: Sequence[float] = (0.5, 1.0, 1.5),
    p_values: Sequence[float] = (2.0, 3.0, 4.0),
    anchors: Optional[Sequence[float]] = None,
) -> BoundReport:
    """Exponential and L^p moments of mean-zero 1-Lipschitz functions under PI.

    For g(x) = x - E x and g(x) = |x - a| - E|x - a| this checks

        E exp(t g / sigma) <= (2 + t) / (2 - t),   0 < t < 2,
        ||g||_p <= sigma p ||g'||_p = sigma p,

    and reports the worst ratio of left to right side against 1.

    Args:
        m: Measure model with a PI constant and a finite mean.
        mc: When given, Monte Carlo estimates replace quadrature.
        t_values: Exponents t in (0, 2).
        p_values: Moment orders p >= 1.
        anchors: Kink points a; defaults to the quartiles of the law.

    Returns:
        BoundReport with lhs = worst ratio and rhs = 1.
    """
    if any(not 0.0 < t < 2.0 for t in t_values):
        raise ValueError("t must lie in (0, 2)")
    if any(p < 1.0 for p in p_values):
        raise ValueError("moment order p must be at least 1")
    law = m.base
    sigma = math.sqrt(m.constant("pi"))
    if anchors is None:
        anchors = [float(law.quantile(q)) for q in (0.25, 0.5, 0.75)]

    functions = [("identity", None)] + [(f"abs@{a:.6g}", a) for a in anchors]
    worst, worst_se, worst_name = 0.0, 0.0, ""
    draws = None if mc is None else np.concatenate(
        replicate(mc, lambda rng: law.sample(rng, 1), stream=AUX_STREAM)
    )
    for name, anchor in functions:
        if anchor is None:
            raw = lambda x: x  # noqa: E731
            kinks = []
        else:
            raw = lambda x, a=anchor: abs(x - a)  # noqa: E731
            kinks = [anchor]
        ratios = _moment_ratios(law, raw, kinks, sigma, t_values, p_values, draws)
        for ratio, se in ratios:
            if ratio > worst:
                worst, worst_se, worst_name = ratio, se, name

    slack = 0.0 if mc is None else mc.slack_sigmas
    logger.debug(f"[EXP_MOMENT-{law.name}] worst ratio {worst:.6g} ({worst_name})")
    return BoundReport.evaluate(
        bound_id="EXP_MOMENT",
        n=1,
        seed=0 if mc is None else mc.master_seed,
        lhs_estimate=worst,
        rhs_value=1.0,
        lhs_stderr=worst_se,
        slack_sigmas=slack,
        tolerance=QUADRATURE_RTOL,
        metadata={"law": law.name, "sigma": sigma, "worst_function": worst_name},
    )


def _moment_ratios(law, raw, kinks, sigma, t_values, p_values, draws):
    """Yield (ratio, stderr) for every t and p on one test function."""
    if draws is None:
        shift = law.integrate(raw, extra_points=kinks)
        for t in t_values:
            mgf = law.integrate(
                lambda x: math.exp(t * (raw(x) - shift) / sigma), extra_points=kinks
            )
            yield mgf / ((2.0 + t) / (2.0 - t)), 0.0
        for p in p_values:
            moment = law.integrate(
                lambda x: abs(raw(x) - shift) ** p, extra_points=kinks
            )
            yield moment ** (1.0 / p) / (sigma * p), 0.0
        return

    values = np.array([raw(x) for x in draws])
    centered = values - values.mean()
    root_r = math.sqrt(draws.size)
    for t in t_values:
        terms = np.exp(t * centered / sigma) / ((2.0 + t) / (2.0 - t))
        yield float(terms.mean()), float(terms.std(ddof=1) / root_r)
    for p in p_values:
        terms = np.abs(centered) ** p
        moment = float(terms.mean())
        # delta method for moment ** (1/p)
        se = moment ** (1.0 / p - 1.0) / p * float(terms.std(ddof=1) / root_r)
        yield moment ** (1.0 / p) / (sigma * p), se / (sigma * p)


def check_coordinate_tail(
    m: MeasureModel, h_values: Sequence[float] = (0.5, 1.0, 2.0, 4.0)
) -> BoundReport:
    """Exact tails of X - E X against the PI tail bound 3 exp(-h / sigma).

    Both P{X - E X >= h} and P{X - E X <= -h} are read off the CDF.

    Returns:
        BoundReport with lhs = worst ratio of tail to bound and rhs = 1.
    """
    if any(h <= 0 for h in h_values):
        raise ValueError("tail levels h must be positive")
    law = m.base
    sigma = math.sqrt(m.constant("pi"))
    mean = law.mean()
    worst, worst_h = 0.0, 0.0
    for h in h_values:
        bound = 3.0 * math.exp(-h / sigma)
        tail = max(float(law.sf(mean + h)), float(law.cdf(mean - h)))
        if tail / bound > worst:
            worst, worst_h = tail / bound, h
    return BoundReport.evaluate(
        bound_id="COORD_TAIL",
        n=1,
        seed=0,
        lhs_estimate=worst,
        rhs_value=1.0,
        tolerance=QUADRATURE_RTOL,
        metadata={"law": law.name, "sigma": sigma, "worst_h": worst_h},
    )
