"""Infimum and supremum convolutions on one-dimensional grids.

Q_t g(x) = min_y [g(y) + (x - y)^2 / (2t)] and P_t g = -Q_t(-g), with the
minimum restricted to the grid nodes (equivalently g = +inf off the grid).
Q_t is computed exactly in linear time as the lower envelope of the parabolas
rooted at the nodes, the same sweep used for squared-distance transforms.
"""

import logging
import math
from typing import List

import numpy as np

from conclab.hopf_lax.grid import GridFunction

logger = logging.getLogger(__name__)


def _lower_envelope(values: np.ndarray, weight: float) -> np.ndarray:
    """min_j values[j] + weight (k - j)^2 for every node index k.

    Nodes holding +inf never enter the envelope. An all-infinite input gives
    an all-infinite output.
    """
    size = values.size
    finite = np.flatnonzero(np.isfinite(values)).tolist()
    if not finite:
        return np.full(size, math.inf)
    scaled: List[float] = (values / weight).tolist()

    roots = [finite[0]]
    bounds = [-math.inf, math.inf]
    for q in finite[1:]:
        while True:
            r = roots[-1]
            cross = ((scaled[q] + q * q) - (scaled[r] + r * r)) / (2.0 * (q - r))
            if cross <= bounds[-2] and len(roots) > 1:
                roots.pop()
                bounds.pop()
                continue
            break
        roots.append(q)
        bounds[-1] = cross
        bounds.append(math.inf)

    out = np.empty(size)
    level = 0
    raw = values.tolist()
    for k in range(size):
        while bounds[level + 1] < k:
            level += 1
        r = roots[level]
        out[k] = raw[r] + weight * (k - r) ** 2
    return out


def inf_convolution(g: GridFunction, t: float) -> GridFunction:
    """Hopf-Lax infimum convolution Q_t g on the grid of g.

    Args:
        g: Grid function; +inf entries are allowed.
        t: Time, t >= 0. Q_0 g = g.

    Returns:
        Q_t g on the same grid; Q_t g <= g nodewise.

    Raises:
        ValueError: If t < 0.

    Example:
        >>> g = GridFunction(x0=0.0, dx=1.0, values=[0.0, 4.0, 4.0])
        >>> inf_convolution(g, 0.5).values.tolist()
        [0.0, 1.0, 4.0]
    """
    if t < 0:
        raise ValueError("Hopf-Lax time must be nonnegative")
    if t == 0:
        return g
    weight = g.dx**2 / (2.0 * t)
    return g.with_values(_lower_envelope(np.asarray(g.values), weight))


def sup_convolution(g: GridFunction, t: float) -> GridFunction:
    """Supremum convolution P_t g = -Q_t(-g); P_t g >= g nodewise."""
    return -inf_convolution(-g, t)


def semigroup_check(g: GridFunction, t: float, s: float) -> float:
    """Largest semigroup defect of Q and P over the central half of the grid.

    Returns:
        max |Q_{t+s} g - Q_t Q_s g| and |P_{t+s} g - P_t P_s g| over the
        window; grid-restricted minimization keeps it at most grid_tolerance(g).
    """
    if t <= 0 or s <= 0:
        raise ValueError("semigroup times must be positive")
    window = g.window(0.5)
    direct_q = inf_convolution(g, t + s).values[window]
    chained_q = inf_convolution(inf_convolution(g, s), t).values[window]
    direct_p = sup_convolution(g, t + s).values[window]
    chained_p = sup_convolution(sup_convolution(g, s), t).values[window]
    defect = max(
        float(np.max(np.abs(direct_q - chained_q))),
        float(np.max(np.abs(direct_p - chained_p))),
    )
    logger.debug(f"[SEMIGROUP-t={t},s={s}] defect={defect:.3g}")
    return defect


def hamilton_jacobi_residual(g: GridFunction, t: float, dt: float) -> float:
    """Residual of d/dt Q_t g = -(1/2) |d/dx Q_t g|^2 at smooth interior nodes.

    The time derivative is a central difference with step dt, the space
    derivative a central difference on the grid. Nodes where the left and
    right slopes of Q_t g disagree by more than 4 dx / t (kinks of the
    envelope, i.e. non-unique minimizers) are skipped, as are nodes outside
    the central half of the grid.

    Returns:
        The largest absolute residual, 0.0 when no node qualifies.

    Raises:
        ValueError: If dt <= 0 or dt >= t.
    """
    if not 0 < dt < t:
        raise ValueError("need 0 < dt < t")
    later = inf_convolution(g, t + dt).values
    earlier = inf_convolution(g, t - dt).values
    now = inf_convolution(g, t).values
    d_time = (later - earlier) / (2.0 * dt)
    left = (now[1:-1] - now[:-2]) / g.dx
    right = (now[2:] - now[1:-1]) / g.dx
    d_space = 0.5 * (left + right)
    residual = np.abs(d_time[1:-1] + 0.5 * d_space**2)

    smooth = np.abs(right - left) <= 4.0 * g.dx / t
    central = np.zeros_like(smooth)
    window = g.window(0.5)
    central[max(window.start - 1, 0) : window.stop - 1] = True
    keep = smooth & central & np.isfinite(residual)
    if not np.any(keep):
        return 0.0
    return float(np.max(residual[keep]))
