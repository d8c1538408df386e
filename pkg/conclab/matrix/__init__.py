"""Wigner random matrices for conclab.

This module exposes the ensemble configuration and sampler, the symmetric
eigensolver wrapper, interval counts, the spectral perturbation checks and
the pooled mean spectral distribution function.
"""

from conclab.matrix.checks import (
    HW_TOLERANCE,
    PooledSpectrum,
    hoffman_wielandt_check,
    pooled_spectral_cdf,
    sample_spectra,
    spectral_lipschitz_ratio,
    spectral_map_lipschitz_check,
)
from conclab.matrix.ensemble import (
    WignerEnsembleConfig,
    entry_vector,
    matrix_from_entries,
    sample_matrix,
)
from conclab.matrix.spectrum import (
    Spectrum,
    eigenvalues,
    interval_count,
    spectral_empirical,
)

__all__ = [
    "HW_TOLERANCE",
    "PooledSpectrum",
    "Spectrum",
    "WignerEnsembleConfig",
    "eigenvalues",
    "entry_vector",
    "hoffman_wielandt_check",
    "interval_count",
    "matrix_from_entries",
    "pooled_spectral_cdf",
    "sample_matrix",
    "sample_spectra",
    "spectral_empirical",
    "spectral_lipschitz_ratio",
    "spectral_map_lipschitz_check",
]
