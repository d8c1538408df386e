"""Spectral perturbation checks and the pooled mean spectral CDF.

This module provides the Hoffman-Wielandt comparison, the Lipschitz check of
the map from matrix entries to sorted eigenvalues, seeded batches of spectra
and the pooled estimate of the mean spectral distribution function
F = E F_n.
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from conclab.core.config import MonteCarloPlan
from conclab.core.exceptions import DimensionMismatchError, LipschitzViolationError
from conclab.core.streams import AUX_STREAM, MAIN_STREAM, POOL_STREAM, replicate
from conclab.empirical.cdf import EmpiricalCdf, build_empirical
from conclab.empirical.metrics import kolmogorov_distance
from conclab.matrix.ensemble import (
    WignerEnsembleConfig,
    entry_vector,
    matrix_from_entries,
)
from conclab.matrix.spectrum import eigenvalues

logger = logging.getLogger(__name__)

HW_TOLERANCE = 1e-8
LIPSCHITZ_TOLERANCE = 1e-8


def hoffman_wielandt_check(m1: np.ndarray, m2: np.ndarray) -> Tuple[float, float]:
    """Sorted-spectrum distance against the Hilbert-Schmidt distance.

    Returns:
        (lhs, rhs) with lhs = sum_i (lambda_i - lambda'_i)^2 over sorted
        spectra and rhs = ||m1 - m2||_HS^2; lhs <= rhs + 1e-8.

    Raises:
        DimensionMismatchError: If the shapes differ.
        NonSymmetricMatrixError: If either matrix is not symmetric.

    Example:
        >>> hoffman_wielandt_check(np.diag([1.0, 2.0]), np.diag([2.0, 4.0]))
        (5.0, 5.0)
    """
    a, b = np.asarray(m1, dtype=float), np.asarray(m2, dtype=float)
    if a.shape != b.shape:
        raise DimensionMismatchError(
            "matrices must have the same shape",
            details={"left": list(a.shape), "right": list(b.shape)},
        )
    left = eigenvalues(a).eigenvalues
    right = eigenvalues(b).eigenvalues
    lhs = float(np.sum((left - right) ** 2))
    rhs = float(np.sum((a - b) ** 2))
    return lhs, rhs


def spectral_lipschitz_ratio(
    n: int, entries: np.ndarray, other: np.ndarray
) -> Optional[float]:
    """||lambda(u) - lambda(v)|| / ||u - v|| for two upper-triangle entry vectors.

    Returns None when the entry vectors coincide.
    """
    u, v = np.asarray(entries, dtype=float), np.asarray(other, dtype=float)
    if u.shape != v.shape:
        raise DimensionMismatchError("entry vectors must have the same length")
    distance = float(np.linalg.norm(u - v))
    if distance == 0.0:
        return None
    left = eigenvalues(matrix_from_entries(n, u)).eigenvalues
    right = eigenvalues(matrix_from_entries(n, v)).eigenvalues
    return float(np.linalg.norm(left - right)) / distance


def spectral_map_lipschitz_check(
    cfg: WignerEnsembleConfig, trials: int = 100
) -> float:
    """Worst observed Lipschitz ratio of the entries-to-spectrum map.

    Each trial draws two independent entry vectors from the auxiliary stream.

    Returns:
        The largest ratio; never above sqrt(2/n) + 1e-8.

    Raises:
        ValueError: If trials < 1.
        LipschitzViolationError: If a ratio exceeds sqrt(2/n) + 1e-8.
    """
    if trials < 1:
        raise ValueError("at least one trial is required")
    bound = math.sqrt(2.0 / cfg.n)
    plan = MonteCarloPlan(replications=max(trials, 2), master_seed=cfg.seed, n=cfg.n)

    def _trial(rng: np.random.Generator) -> Optional[float]:
        return spectral_lipschitz_ratio(
            cfg.n, entry_vector(cfg, rng), entry_vector(cfg, rng)
        )

    observed = replicate(plan, _trial, count=trials, stream=AUX_STREAM)
    ratios = [r for r in observed if r is not None]
    worst = max(ratios, default=0.0)
    if worst > bound + LIPSCHITZ_TOLERANCE:
        raise LipschitzViolationError(
            "spectral map exceeded its Lipschitz bound",
            details={"n": cfg.n, "ratio": worst, "bound": bound},
        )
    logger.debug(f"[LIPSCHITZ-n={cfg.n}] worst ratio {worst:.6g} <= {bound:.6g}")
    return worst


def sample_spectra(
    cfg: WignerEnsembleConfig,
    plan: MonteCarloPlan,
    count: Optional[int] = None,
    stream: int = MAIN_STREAM,
    start: int = 0,
) -> np.ndarray:
    """Sorted spectra of independent replications as rows of an (R, n) array."""

    def _spectrum(rng: np.random.Generator) -> np.ndarray:
        matrix = matrix_from_entries(cfg.n, entry_vector(cfg, rng))
        return eigenvalues(matrix).eigenvalues

    rows = replicate(plan, _spectrum, count=count, stream=stream, start=start)
    return np.vstack(rows)


class PooledSpectrum(BaseModel):
    """Pooled estimate of the mean spectral distribution function.

    Attributes:
        cdf: Empirical CDF of all pooled eigenvalues.
        replications: Number of pooled matrices R_pool.
        converged: Whether successive estimates agreed before the cap.
        last_change: Kolmogorov distance between the last two estimates.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    cdf: EmpiricalCdf
    replications: int = Field(ge=1)
    converged: bool
    last_change: float = Field(ge=0.0)

    @property
    def stderr(self) -> float:
        """Kolmogorov-scale pooling error 1/sqrt(n R_pool)."""
        return 1.0 / math.sqrt(self.cdf.n)


def pooled_spectral_cdf(
    cfg: WignerEnsembleConfig,
    base_replications: int = 200,
    max_replications: int = 3200,
    workers: Optional[int] = None,
) -> PooledSpectrum:
    """Estimate F = E F_n by pooling the spectra of independent matrices.

    R starts at ``base_replications`` and doubles until the Kolmogorov
    distance between successive pooled CDFs is below 1/(2 sqrt(n R)), or
    until ``max_replications``. Matrices come from the pooling stream, so they
    are independent of the replications being verified.

    Returns:
        PooledSpectrum with the pooled CDF and its convergence status.
    """
    if base_replications < 2 or max_replications < base_replications:
        raise ValueError("need 2 <= base_replications <= max_replications")
    plan = MonteCarloPlan(
        replications=base_replications,
        master_seed=cfg.seed,
        n=cfg.n,
        workers=workers,
    )
    atoms = sample_spectra(cfg, plan, stream=POOL_STREAM).ravel()
    current = build_empirical(atoms)
    count = base_replications
    change = math.inf
    while count < max_replications:
        extra = min(count, max_replications - count)
        more = sample_spectra(cfg, plan, count=extra, stream=POOL_STREAM, start=count)
        atoms = np.concatenate([atoms, more.ravel()])
        count += extra
        candidate = build_empirical(atoms)
        change = kolmogorov_distance(current, candidate)
        current = candidate
        target = 1.0 / (2.0 * math.sqrt(cfg.n * count))
        logger.debug(
            f"[POOL-n={cfg.n}] R={count} change={change:.3g} target={target:.3g}"
        )
        if change < target:
            logger.info(f"[POOL-n={cfg.n}] converged at R={count}")
            return PooledSpectrum(
                cdf=current, replications=count, converged=True, last_change=change
            )

    logger.warning(
        f"[POOL-n={cfg.n}] pooling cap R={count} reached (last change {change:.3g})"
    )
    return PooledSpectrum(
        cdf=current,
        replications=count,
        converged=False,
        last_change=change if math.isfinite(change) else 1.0,
    )
