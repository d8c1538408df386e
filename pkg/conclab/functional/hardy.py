"""Hardy-type and Cheeger criteria for Poincare and log-Sobolev constants.

For a law with density p, distribution function F and median m the Hardy
quantities are

    A0 = sup_{x<m} F(x) * int_x^m dt / p(t)
    A1 = sup_{x>m} (1 - F(x)) * int_m^x dt / p(t)

and B0, B1 the same suprema with the tail mass w replaced by w log(1/w). The
optimal PI constant lies in [c0 (A0 + A1), c1 (A0 + A1)] and the LSI constant
is bracketed by B0 + B1 in the same way. The inner integral runs from x to the
median.

The Cheeger constant H = inf p / min(F, 1 - F) gives PI with 4 / H^2.
"""

import logging
import math
import warnings
from typing import Callable, List, Literal, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy import integrate, optimize

from conclab.core.exceptions import (
    InfiniteHardyConstantError,
    ZeroIsoperimetricConstantError,
)
from conclab.functional.measures import MeasureModel

logger = logging.getLogger(__name__)

GRID_POINTS = 2048
TAIL_EXPONENTS = range(12, 41)
DIVERGENCE_RTOL = 1e-2
GAP_SCAN_POINTS = 8193
ZERO_CHEEGER = 1e-9
REFINE_ROUNDS = 3
LSI_DIVERGENCE_NOTE = "LSI fails: tails not sub-Gaussian"

Weight = Callable[[np.ndarray], np.ndarray]


class HardyBracket(BaseModel):
    """Hardy quantities of a law and the bracket they imply.

    Attributes:
        left: A0 (or B0); +inf when the supremum diverges.
        right: A1 (or B1); +inf when the supremum diverges.
        lower: c0 times left + right.
        upper: c1 times left + right.
        kind: pi or lsi.
        diverged: Whether a supremum was found to diverge.
        note: Human-readable flag for diverged suprema.
    """

    model_config = ConfigDict(frozen=True)

    left: float
    right: float
    lower: float
    upper: float
    kind: Literal["pi", "lsi"]
    diverged: bool = False
    note: str = ""
    c0: float = Field(gt=0.0)
    c1: float = Field(gt=0.0)

    @property
    def total(self) -> float:
        return self.left + self.right

    def contains(self, constant: float) -> bool:
        """Whether a known constant lies inside the bracket."""
        return self.lower <= constant <= self.upper

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return self.left, self.right, self.lower, self.upper


def _level_grid() -> np.ndarray:
    """Tail-mass levels in (0, 1/2]: a uniform grid plus a geometric tail."""
    body = np.linspace(0.0, 0.5, GRID_POINTS + 1)[1:]
    tail = np.array([2.0 ** (-k) for k in TAIL_EXPONENTS])
    return np.union1d(body, tail)


def _reciprocal_integral(m: MeasureModel, a: float, b: float) -> float:
    """int_a^b dt / p(t) for a < b inside the support."""
    if b <= a:
        return 0.0
    law = m.base
    cuts = sorted({p for p in law.breakpoints() if a < p < b})
    edges = [a] + cuts + [b]
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            with np.errstate(divide="ignore"):
                value, _ = integrate.quad(
                    lambda t: 1.0 / float(law.density(t)), lo, hi, limit=200
                )
        if not math.isfinite(value):
            raise InfiniteHardyConstantError(details={"lo": lo, "hi": hi})
        total += value
    return total


def _check_no_gap(m: MeasureModel) -> None:
    law = m.base
    lo, hi = law.tail_bounds(1e-9)
    scan = np.linspace(lo, hi, GAP_SCAN_POINTS)[1:-1]
    scan = scan[(scan > law.support[0]) & (scan < law.support[1])]
    zero = scan[np.asarray(law.density(scan)) <= 0.0]
    if zero.size:
        raise InfiniteHardyConstantError(
            details={"law": law.name, "zero_density_at": float(zero[0])}
        )


def _side_supremum(
    m: MeasureModel, weight: Weight, side: Literal["left", "right"]
) -> Tuple[float, bool]:
    """Supremum of weight(tail mass) * int 1/p between x and the median."""
    law = m.base
    levels = _level_grid()
    if side == "left":
        points = np.asarray(law.quantile(levels), dtype=float)
    else:
        points = np.asarray(law.isf(levels), dtype=float)

    # order from the median outward so the inner integral accumulates
    order = np.argsort(-levels)
    levels, points = levels[order], points[order]
    inner = np.empty_like(points)
    running = 0.0
    anchor = m.median
    for j, x in enumerate(points):
        a, b = (x, anchor) if side == "left" else (anchor, x)
        running += _reciprocal_integral(m, a, b) if b > a else 0.0
        inner[j] = running
        anchor = x

    values = weight(levels) * inner
    running_sup = np.maximum.accumulate(values)

    n_tail = len(TAIL_EXPONENTS)
    quarter = running_sup[-max(n_tail // 4, 2):]
    growing = bool(np.all(np.diff(quarter) > 0))
    growth = (quarter[-1] - quarter[0]) / max(abs(quarter[0]), 1e-300)
    if growing and growth > DIVERGENCE_RTOL:
        logger.info(
            f"[HARDY-{law.name}] {side} supremum diverges (growth {growth:.3g})"
        )
        return math.inf, True

    best = int(np.argmax(values))
    supremum = float(values[best])
    if 0 < best < len(levels) - 1:
        supremum = max(supremum, _refine(m, weight, side, levels, best))
    return supremum, False


def _refine(
    m: MeasureModel,
    weight: Weight,
    side: Literal["left", "right"],
    levels: np.ndarray,
    best: int,
) -> float:
    """Golden-section refinement of the supremum between neighbouring levels."""
    law = m.base

    def objective(level: float) -> float:
        if not 0.0 < level <= 0.5:
            return 0.0
        if side == "left":
            x = float(law.quantile(level))
            inner = _reciprocal_integral(m, x, m.median)
        else:
            x = float(law.isf(level))
            inner = _reciprocal_integral(m, m.median, x)
        return -float(weight(np.array([level]))[0]) * inner

    bracket = (levels[best + 1], levels[best], levels[best - 1])
    refined = 0.0
    for _ in range(REFINE_ROUNDS):
        try:
            result = optimize.minimize_scalar(
                objective, bracket=bracket, method="golden", options={"xtol": 1e-10}
            )
        except ValueError:
            # not a strict interior maximum; the grid value stands
            break
        refined = max(refined, -float(result.fun))
        center = float(result.x)
        width = (bracket[2] - bracket[0]) / 4.0
        bracket = (max(center - width, 1e-300), center, min(center + width, 0.5))
    return refined


def _pi_weight(levels: np.ndarray) -> np.ndarray:
    return levels


def _lsi_weight(levels: np.ndarray) -> np.ndarray:
    return levels * np.log(1.0 / levels)


def hardy_pi_bracket(
    m: MeasureModel, c0: float = 0.25, c1: float = 4.0
) -> HardyBracket:
    """Hardy quantities A0, A1 and the implied PI bracket.

    Args:
        m: Measure model.
        c0: Lower bracket constant.
        c1: Upper bracket constant.

    Returns:
        HardyBracket with left = A0, right = A1.

    Raises:
        InfiniteHardyConstantError: If the density vanishes inside the support
            or a supremum diverges (the law fails PI).

    Example:
        >>> bracket = hardy_pi_bracket(MeasureModel.from_distribution(uniform()))
        >>> round(bracket.left, 6)
        0.0625
    """
    _check_no_gap(m)
    left, left_div = _side_supremum(m, _pi_weight, "left")
    right, right_div = _side_supremum(m, _pi_weight, "right")
    if left_div or right_div:
        raise InfiniteHardyConstantError(
            details={"law": m.base.name, "A0": left, "A1": right}
        )
    total = left + right
    logger.info(f"[HARDY-{m.base.name}] A0={left:.6g} A1={right:.6g}")
    return HardyBracket(
        left=left,
        right=right,
        lower=c0 * total,
        upper=c1 * total,
        kind="pi",
        c0=c0,
        c1=c1,
    )


def hardy_lsi_bracket(
    m: MeasureModel, c0: float = 0.25, c1: float = 4.0
) -> HardyBracket:
    """Hardy quantities B0, B1 and the implied LSI bracket.

    A diverging supremum is not an error here: it is reported with
    ``diverged=True``, infinite B-values and the note "LSI fails: tails not
    sub-Gaussian".

    Raises:
        InfiniteHardyConstantError: If the density vanishes inside the support.
    """
    _check_no_gap(m)
    left, left_div = _side_supremum(m, _lsi_weight, "left")
    right, right_div = _side_supremum(m, _lsi_weight, "right")
    diverged = left_div or right_div
    total = left + right
    logger.info(f"[HARDY-{m.base.name}] B0={left:.6g} B1={right:.6g}")
    return HardyBracket(
        left=left,
        right=right,
        lower=c0 * total,
        upper=c1 * total,
        kind="lsi",
        diverged=diverged,
        note=LSI_DIVERGENCE_NOTE if diverged else "",
        c0=c0,
        c1=c1,
    )


def cheeger_constant(m: MeasureModel) -> float:
    """Isoperimetric constant H = inf p(x) / min(F(x), 1 - F(x)).

    The infimum is taken over quantile-spaced points (where min(F, 1 - F) is
    the level itself) and over a uniform grid of the truncated support, which
    catches density gaps.
    """
    law = m.base
    levels = _level_grid()
    left = np.asarray(law.density(law.quantile(levels)), dtype=float) / levels
    right = np.asarray(law.density(law.isf(levels)), dtype=float) / levels

    lo, hi = law.tail_bounds(1e-9)
    grid = np.linspace(lo, hi, GAP_SCAN_POINTS)[1:-1]
    mass = np.minimum(np.asarray(law.cdf(grid)), np.asarray(law.sf(grid)))
    inside = mass > 0
    uniform_ratios = np.asarray(law.density(grid[inside])) / mass[inside]

    candidates: List[np.ndarray] = [left, right, uniform_ratios]
    return float(min(np.min(c) for c in candidates if c.size))


def cheeger_pi_constant(m: MeasureModel) -> float:
    """PI constant 4 / H^2 from the Cheeger constant.

    Raises:
        ZeroIsoperimetricConstantError: If H vanishes numerically.

    Example:
        >>> model = MeasureModel.from_distribution(two_sided_exponential())
        >>> round(cheeger_pi_constant(model), 6)
        4.0
    """
    h_value = cheeger_constant(m)
    if not h_value > ZERO_CHEEGER:
        raise ZeroIsoperimetricConstantError(
            details={"law": m.base.name, "H": h_value}
        )
    logger.info(f"[CHEEGER-{m.base.name}] H={h_value:.9g}")
    return 4.0 / h_value**2


def hardy_table_row(
    m: MeasureModel, c0: float = 0.25, c1: float = 4.0
) -> List[float]:
    """One constants-table row: A0, A1, PI bracket, B0, B1, LSI bracket, H, 4/H^2.

    Divergent quantities are returned as +inf instead of raising.
    """
    try:
        pi = hardy_pi_bracket(m, c0, c1).as_tuple()
    except InfiniteHardyConstantError:
        pi = (math.inf, math.inf, math.inf, math.inf)
    try:
        lsi = hardy_lsi_bracket(m, c0, c1).as_tuple()
    except InfiniteHardyConstantError:
        lsi = (math.inf, math.inf, math.inf, math.inf)
    h_value = cheeger_constant(m)
    sigma2 = 4.0 / h_value**2 if h_value > ZERO_CHEEGER else math.inf
    return [*pi, *lsi, h_value, sigma2]
