"""Brute-force oracle for the empirical lifting of the infimum convolution.

For g(x_1, ..., x_n) = (1/n) sum_i f(x_i) the n-dimensional infimum
convolution splits into one-dimensional ones:

    Q_t g(x) = (1/n) sum_i Q_{t/n} f(x_i).

The oracle evaluates the left side by direct minimization over a tensor grid,
so it is limited to n <= 4.
"""

import logging
import math
from typing import List, Sequence, Tuple

import numpy as np

from conclab.core.exceptions import AtomCountMismatchError, OracleSizeExceededError
from conclab.hopf_lax.grid import GridFunction
from conclab.hopf_lax.operators import inf_convolution

logger = logging.getLogger(__name__)

MAX_ORACLE_DIMENSION = 4
MAX_AXIS_NODES = 400


def _axis_candidates(
    f: GridFunction, atom: float, reach: float
) -> Tuple[np.ndarray, np.ndarray]:
    """Grid nodes within ``reach`` of the atom and f at those nodes."""
    nodes = f.nodes
    mask = np.abs(nodes - atom) <= reach + f.dx
    mask &= np.isfinite(f.values)
    if not np.any(mask):
        nearest = int(np.argmin(np.abs(nodes - atom)))
        mask[nearest] = True
    index = np.flatnonzero(mask)
    if index.size > MAX_AXIS_NODES:
        raise OracleSizeExceededError(int(index.size), MAX_AXIS_NODES)
    return nodes[index], np.asarray(f.values)[index]


def empirical_lift_check(
    f: GridFunction, n: int, t: float, atoms: Sequence[float]
) -> Tuple[float, float]:
    """Both sides of the lifting identity at the given atoms.

    Args:
        f: One-dimensional grid function.
        n: Number of atoms, at most 4.
        t: Positive time.
        atoms: The points x_1, ..., x_n, inside the grid.

    Returns:
        (lhs, rhs): the brute-force infimum of
        (1/n) sum f(y_i) + |x - y|^2 / (2t) over grid vectors y, and the
        average of Q_{t/n} f interpolated at the atoms.

    Raises:
        OracleSizeExceededError: If n exceeds 4 or the tensor grid is too big.
        AtomCountMismatchError: If len(atoms) != n.
        ValueError: If t <= 0 or an atom lies outside the grid.
    """
    if n > MAX_ORACLE_DIMENSION:
        raise OracleSizeExceededError(n, MAX_ORACLE_DIMENSION)
    points = np.asarray(atoms, dtype=float)
    if points.size != n:
        raise AtomCountMismatchError(points.size, n)
    if t <= 0:
        raise ValueError("lifting time must be positive")
    if np.any(points < f.x0) or np.any(points > f.x_end):
        raise ValueError("atoms must lie inside the grid")

    # a minimizer moves each coordinate by at most sqrt(2 (t/n) osc f)
    reach = math.sqrt(2.0 * (t / n) * f.oscillation())
    axes: List[np.ndarray] = []
    for atom in points:
        ys, fy = _axis_candidates(f, float(atom), reach)
        axes.append(fy / n + (atom - ys) ** 2 / (2.0 * t))

    lhs = _tensor_minimum(axes)
    lifted = inf_convolution(f, t / n)
    rhs = float(np.mean(lifted.evaluate(points)))
    logger.debug(f"[LIFT-n={n}] lhs={lhs:.9g} rhs={rhs:.9g}")
    return lhs, rhs


def _tensor_minimum(axes: List[np.ndarray]) -> float:
    """min over the tensor grid of sum_i axes[i][j_i], by explicit enumeration.

    The first axis is walked one value at a time so memory stays at the size
    of the remaining tensor.
    """
    rest = np.zeros(1)
    for axis in axes[1:]:
        rest = np.add.outer(rest, axis).ravel()
    best = math.inf
    for head in axes[0]:
        best = min(best, float(np.min(head + rest)))
    return best
