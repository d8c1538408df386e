"""Spectra of symmetric matrices and their empirical distribution functions."""

import logging
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator
from scipy import linalg

from conclab.core.exceptions import NonSymmetricMatrixError
from conclab.empirical.cdf import EmpiricalCdf, build_empirical
from conclab.matrix.ensemble import WignerEnsembleConfig, sample_matrix

logger = logging.getLogger(__name__)

SYMMETRY_TOL = 1e-12


class Spectrum(BaseModel):
    """Eigenvalues X_1 <= ... <= X_n of a symmetric matrix.

    Attributes:
        eigenvalues: Nondecreasing eigenvalues.
        trace: Trace of the matrix they came from.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    eigenvalues: np.ndarray = Field(description="Sorted eigenvalues")
    trace: float = Field(default=0.0, description="Trace of the source matrix")

    @field_validator("eigenvalues", mode="before")
    @classmethod
    def _sorted(cls, value) -> np.ndarray:
        array = np.array(value, dtype=float).reshape(-1)
        if np.any(np.diff(array) < 0):
            raise ValueError("eigenvalues must be sorted nondecreasing")
        array.setflags(write=False)
        return array

    @property
    def n(self) -> int:
        return int(self.eigenvalues.size)

    def to_empirical(self) -> EmpiricalCdf:
        return build_empirical(self.eigenvalues)


def _check_symmetric(matrix: np.ndarray) -> np.ndarray:
    array = np.asarray(matrix, dtype=float)
    if array.ndim != 2 or array.shape[0] != array.shape[1]:
        raise NonSymmetricMatrixError(
            "matrix must be square", details={"shape": list(array.shape)}
        )
    scale = max(1.0, float(np.max(np.abs(array))) if array.size else 1.0)
    asymmetry = float(np.max(np.abs(array - array.T))) if array.size else 0.0
    if asymmetry > SYMMETRY_TOL * scale:
        raise NonSymmetricMatrixError(
            "matrix is not symmetric", details={"max_asymmetry": asymmetry}
        )
    return array


def eigenvalues(matrix: np.ndarray) -> Spectrum:
    """Sorted spectrum of a real symmetric matrix.

    Uses LAPACK's symmetric solver (tridiagonal reduction) through
    ``scipy.linalg.eigvalsh``.

    Raises:
        NonSymmetricMatrixError: If the matrix is not symmetric within 1e-12.

    Example:
        >>> eigenvalues(np.diag([3.0, 1.0, 2.0])).eigenvalues.tolist()
        [1.0, 2.0, 3.0]
    """
    array = _check_symmetric(matrix)
    values = linalg.eigvalsh(array)
    return Spectrum(eigenvalues=np.sort(values), trace=float(np.trace(array)))


def spectral_empirical(
    cfg: WignerEnsembleConfig, replication: int = 0
) -> EmpiricalCdf:
    """Spectral empirical distribution function of one sampled matrix."""
    return eigenvalues(sample_matrix(cfg, replication)).to_empirical()


def interval_count(spectrum: Spectrum, interval: Tuple[float, float]) -> int:
    """N_I = number of eigenvalues in the closed-open interval [a, b).

    Raises:
        ValueError: If a >= b.

    Example:
        >>> interval_count(Spectrum(eigenvalues=[1.0, 2.0, 3.0]), (1.5, 3.5))
        2
    """
    a, b = interval
    if not a < b:
        raise ValueError("interval needs a < b")
    values = spectrum.eigenvalues
    upper = np.searchsorted(values, b, side="left")
    lower = np.searchsorted(values, a, side="left")
    return int(upper - lower)
