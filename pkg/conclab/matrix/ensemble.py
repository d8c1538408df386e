"""Wigner ensemble configuration and sampling.

A Wigner matrix is Xi = (1/sqrt(n)) (xi_jk) with xi_jk = xi_kj and the
entries on and above the diagonal i.i.d. with mean 0 and variance 1.
"""

import logging
import math
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from conclab.core.config import MAX_SEED
from conclab.core.exceptions import EntryLawError, NonFiniteMomentError
from conclab.core.streams import MAIN_STREAM, replication_rng
from conclab.distributions.base import AnalyticDistribution
from conclab.distributions.library import affine
from conclab.functional.checks import lipschitz_image_constant
from conclab.functional.measures import MeasureModel

logger = logging.getLogger(__name__)

MEAN_TOL = 1e-9
VARIANCE_TOL = 1e-6


def _moments(law: AnalyticDistribution) -> tuple:
    try:
        return law.mean(), law.variance()
    except NonFiniteMomentError as e:
        raise EntryLawError(
            f"entry law {law.name} is not normalizable: {e.message}",
            details={"law": law.name},
        )


class WignerEnsembleConfig(BaseModel):
    """Dimension, standardized entry law and seed of a Wigner ensemble.

    Attributes:
        n: Matrix dimension.
        entry_model: Entry law with mean 0 and variance 1.
        seed: 64-bit master seed.

    Raises:
        EntryLawError: If the entry law is not centered with unit variance.

    Example:
        >>> cfg = WignerEnsembleConfig.standardized(8, uniform(-1.0, 1.0), seed=3)
        >>> round(cfg.entry_model.base.variance(), 9)
        1.0
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int = Field(ge=2, description="Matrix dimension")
    entry_model: MeasureModel = Field(description="Entry law, mean 0 variance 1")
    seed: int = Field(ge=0, le=MAX_SEED, description="Master seed")

    @model_validator(mode="after")
    def _check_entry_law(self) -> "WignerEnsembleConfig":
        mean, variance = _moments(self.entry_model.base)
        if abs(mean) > MEAN_TOL or abs(variance - 1.0) > VARIANCE_TOL:
            raise EntryLawError(
                "entry law must have mean 0 and variance 1",
                details={"mean": mean, "variance": variance},
            )
        return self

    @classmethod
    def standardized(
        cls,
        n: int,
        law: AnalyticDistribution,
        seed: int,
        lsi_constant: Optional[float] = None,
    ) -> "WignerEnsembleConfig":
        """Rescale a raw law to mean 0 and variance 1 and wrap it.

        Raises:
            EntryLawError: If the law has no finite variance.
        """
        mean, variance = _moments(law)
        if not variance > 0 or not math.isfinite(variance):
            raise EntryLawError(
                f"entry law {law.name} has variance {variance}",
                details={"law": law.name},
            )
        scale = 1.0 / math.sqrt(variance)
        base = law
        if abs(mean) > MEAN_TOL or abs(variance - 1.0) > VARIANCE_TOL:
            base = affine(law, -mean * scale, scale)
        model = MeasureModel.from_distribution(base, lsi_constant=lsi_constant)
        return cls(n=n, entry_model=model, seed=seed)

    def with_n(self, n: int) -> "WignerEnsembleConfig":
        return self.model_copy(update={"n": n})

    def spectral_sigma2(self, kind: str = "lsi") -> float:
        """PI/LSI constant 2 sigma^2 / n of the eigenvalue vector."""
        base_constant = self.entry_model.constant(kind)
        return lipschitz_image_constant(base_constant, math.sqrt(2.0 / self.n))


def sample_matrix(
    cfg: WignerEnsembleConfig, replication: int = 0, stream: int = MAIN_STREAM
) -> np.ndarray:
    """Draw one symmetric Wigner matrix.

    The n (n + 1) / 2 entries with j <= k come from the replication's own
    stream, are scaled by 1/sqrt(n) and mirrored below the diagonal.

    Args:
        cfg: Ensemble configuration.
        replication: Replication index selecting the random stream.
        stream: Stream id.

    Returns:
        Symmetric float array of shape (n, n).
    """
    rng = replication_rng(cfg.seed, replication, stream)
    return matrix_from_entries(cfg.n, entry_vector(cfg, rng))


def entry_vector(cfg: WignerEnsembleConfig, rng: np.random.Generator) -> np.ndarray:
    """The upper-triangle entries xi_jk, j <= k, in row-major order."""
    count = cfg.n * (cfg.n + 1) // 2
    return np.asarray(cfg.entry_model.base.sample(rng, count), dtype=float)


def matrix_from_entries(n: int, entries: np.ndarray) -> np.ndarray:
    """Symmetric matrix (1/sqrt(n)) (xi_jk) from its upper-triangle entries."""
    rows, cols = np.triu_indices(n)
    matrix = np.zeros((n, n))
    matrix[rows, cols] = entries / math.sqrt(n)
    matrix[cols, rows] = matrix[rows, cols]
    return matrix
