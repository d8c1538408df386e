"""Empirical distribution functions.

This module provides the EmpiricalCdf class: sorted atoms carrying mass 1/n
each, with right-continuous evaluation, left limits, quantiles and exact
integrals over intervals.
"""

import logging
from typing import Iterable, Tuple, Union

import numpy as np

from conclab.core.exceptions import EmptySampleError, NonFiniteSampleError

logger = logging.getLogger(__name__)


class EmpiricalCdf:
    """Empirical CDF F_n(x) = card{i: x_i <= x} / n.

    Atoms are kept sorted with duplicates (their mass accumulates), so ``n``
    is always the sample size. Instances are immutable.

    Attributes:
        atoms: Read-only sorted array of the n observations.

    Example:
        >>> F = build_empirical([3.0, 1.0, 2.0])
        >>> F.atoms.tolist()
        [1.0, 2.0, 3.0]
        >>> F.cdf(2.0)
        0.6666666666666666
    """

    __slots__ = ("_atoms",)

    def __init__(self, atoms: np.ndarray) -> None:
        """Wrap already validated, sorted atoms. Use build_empirical instead."""
        values = np.array(atoms, dtype=float)
        values.setflags(write=False)
        self._atoms = values

    @property
    def atoms(self) -> np.ndarray:
        return self._atoms

    @property
    def n(self) -> int:
        return int(self._atoms.size)

    def cdf(self, x: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        """Right-continuous evaluation."""
        counts = np.searchsorted(self._atoms, x, side="right")
        values = np.asarray(counts, dtype=float) / self.n
        return float(values) if np.ndim(x) == 0 else values

    __call__ = cdf

    def left_limit(self, x: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        """F_n(x-) = card{i: x_i < x} / n."""
        counts = np.searchsorted(self._atoms, x, side="left")
        values = np.asarray(counts, dtype=float) / self.n
        return float(values) if np.ndim(x) == 0 else values

    def quantile(self, t: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        """Generalized inverse: smallest atom x with F_n(x) >= t."""
        levels = np.asarray(t, dtype=float)
        if np.any((levels < 0.0) | (levels > 1.0)):
            raise ValueError("quantile levels must lie in [0, 1]")
        index = np.clip(np.ceil(levels * self.n).astype(int) - 1, 0, self.n - 1)
        values = self._atoms[index]
        return float(values) if np.ndim(t) == 0 else values

    def unique(self) -> Tuple[np.ndarray, np.ndarray]:
        """Distinct atoms and their multiplicities."""
        return np.unique(self._atoms, return_counts=True)

    def integrate(self, lo: float, hi: float) -> float:
        """Exact integral of F_n over [lo, hi]."""
        if hi <= lo:
            return 0.0
        return float(np.mean(np.clip(hi - np.maximum(self._atoms, lo), 0.0, None)))

    def bounds(self) -> Tuple[float, float]:
        """Smallest and largest atom."""
        return float(self._atoms[0]), float(self._atoms[-1])

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EmpiricalCdf):
            return NotImplemented
        return bool(np.array_equal(self._atoms, other._atoms))

    def __hash__(self) -> int:
        return hash(self._atoms.tobytes())

    def __str__(self) -> str:
        return f"{self.__class__.__name__}(n={self.n})"

    def __repr__(self) -> str:
        return self.__str__()


def build_empirical(samples: Iterable[float]) -> EmpiricalCdf:
    """Build an empirical CDF from raw observations.

    Args:
        samples: Finite real observations.

    Returns:
        EmpiricalCdf with the observations sorted.

    Raises:
        EmptySampleError: If no observation is given.
        NonFiniteSampleError: If any observation is NaN or infinite.
    """
    if not isinstance(samples, np.ndarray):
        samples = list(samples)
    values = np.asarray(samples, dtype=float).ravel()
    if values.size == 0:
        raise EmptySampleError()
    if not np.all(np.isfinite(values)):
        raise NonFiniteSampleError(details={"bad": int(np.sum(~np.isfinite(values)))})
    return EmpiricalCdf(np.sort(values, kind="mergesort"))
