"""Configuration models for conclab runs.

This module provides the pydantic models that describe a verification run:
the Monte Carlo plan shared by every seeded computation, the scenario that
fixes the measure or matrix model, and the run configuration read from a YAML
file and overridden by command-line flags.
"""

import logging
import math
import os
from pathlib import Path
from typing import Any, Dict, List, Literal, Mapping, Optional, Tuple, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from conclab.core.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

THREADS_ENV = "CONCLAB_THREADS"
MAX_SEED = 2**64 - 1


class MonteCarloPlan(BaseModel):
    """Seeded Monte Carlo plan shared by all replicated estimates.

    Attributes:
        replications: Number of independent replications R.
        master_seed: 64-bit master seed; replication streams derive from it.
        n: Sample size or matrix dimension.
        slack_sigmas: Standard errors of slack granted to estimated sides.
        workers: Worker count for replication-parallel execution.

    Example:
        >>> plan = MonteCarloPlan(replications=200, master_seed=7, n=100)
        >>> plan.with_n(50).n
        50
    """

    model_config = ConfigDict(frozen=True)

    replications: int = Field(ge=2, description="Number of replications R")
    master_seed: int = Field(ge=0, le=MAX_SEED, description="64-bit master seed")
    n: int = Field(ge=1, description="Sample size or matrix dimension")
    slack_sigmas: float = Field(
        default=3.0, ge=0.0, description="Standard errors of slack for estimates"
    )
    workers: Optional[int] = Field(
        default=None, ge=1, description="Worker count; None reads CONCLAB_THREADS"
    )

    def with_n(self, n: int) -> "MonteCarloPlan":
        """Return a copy of the plan at a different n."""
        return self.model_copy(update={"n": n})


class LawConfig(BaseModel):
    """A distribution library id with its keyword parameters."""

    model_config = ConfigDict(frozen=True)

    law: str = Field(default="gaussian", description="Distribution library id")
    params: Dict[str, float] = Field(
        default_factory=dict, description="Keyword parameters of the law"
    )


class HardyConfig(BaseModel):
    """Universal constants bracketing PI/LSI constants by Hardy quantities."""

    model_config = ConfigDict(frozen=True)

    c0: float = Field(default=0.25, gt=0.0, description="Lower bracket constant")
    c1: float = Field(default=4.0, gt=0.0, description="Upper bracket constant")


class ScenarioConfig(BaseModel):
    """Measure or matrix model plus the per-bound parameters of a run.

    Symbols left as None are reported by the catalog entry that needs them.
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["product", "wigner"] = Field(
        default="product", description="Product measure or Wigner spectrum"
    )
    law: LawConfig = Field(
        default_factory=LawConfig, description="Coordinate or entry law"
    )
    reference: Optional[LawConfig] = Field(
        default=None, description="Reference law G; semicircle for wigner"
    )
    coupling: Literal["independent", "comonotone"] = Field(
        default="independent", description="Coupling of the n coordinates"
    )
    shifts: Union[Literal["none", "staircase"], List[float]] = Field(
        default="none", description="Per-coordinate location offsets"
    )
    function: str = Field(default="sin", description="Test function id")
    pi_constant: Optional[float] = Field(default=None, ge=0.0)
    lsi_constant: Optional[float] = Field(default=None, ge=0.0)
    x: Optional[float] = None
    r: Optional[float] = Field(default=None, gt=0.0)
    h: Optional[float] = Field(default=None, gt=0.0)
    t: Optional[float] = Field(default=None, gt=0.0)
    p: Optional[float] = Field(default=None, ge=1.0)
    a: Optional[float] = None
    b: Optional[float] = None
    interval: Optional[Tuple[float, float]] = None
    delta: Optional[float] = Field(default=None, gt=0.0)
    n_sweep: List[int] = Field(default_factory=list)
    pool_replications: int = Field(default=200, ge=2)
    pool_max_replications: int = Field(default=3200, ge=2)
    grid_dx: float = Field(default=1e-3, gt=0.0)

    @field_validator("n_sweep")
    @classmethod
    def _sweep_positive(cls, value: List[int]) -> List[int]:
        if any(n < 1 for n in value):
            raise ValueError("n_sweep values must be positive")
        return value

    @field_validator("shifts")
    @classmethod
    def _shifts_finite(cls, value):
        if not isinstance(value, str) and not all(math.isfinite(s) for s in value):
            raise ValueError("shifts must be finite")
        return value


class RunConfig(BaseModel):
    """Complete description of one command-line run.

    Attributes:
        scenario_name: Free-form label copied into every report.
        scenario: The measure/matrix scenario.
        n: Sample sizes; the first is the run n, the full list is the sweep.
        bounds: Catalog bound ids to run.
        replications: Monte Carlo replications per estimate.
        seed: Mandatory master seed.
        out: Output directory.
        slack_sigmas: Slack for estimated sides.
        hardy: Hardy bracket constants.
        record_runtime: Whether runtime_ms is measured or written as 0.
        constants_laws: Laws tabulated by the constants command.
    """

    model_config = ConfigDict(frozen=True)

    scenario_name: str = Field(default="default")
    scenario: ScenarioConfig = Field(default_factory=ScenarioConfig)
    n: List[int] = Field(default_factory=list)
    bounds: List[str] = Field(default_factory=list)
    replications: int = Field(default=1000, ge=2)
    seed: int = Field(ge=0, le=MAX_SEED)
    out: Path = Field(default=Path("results"))
    slack_sigmas: float = Field(default=3.0, ge=0.0)
    hardy: HardyConfig = Field(default_factory=HardyConfig)
    record_runtime: bool = Field(default=True)
    constants_laws: List[LawConfig] = Field(default_factory=list)

    @field_validator("n")
    @classmethod
    def _n_positive(cls, value: List[int]) -> List[int]:
        if any(n < 1 for n in value):
            raise ValueError("n values must be positive")
        return value

    def plan(self, n: Optional[int] = None) -> MonteCarloPlan:
        """Build the Monte Carlo plan of this run.

        Args:
            n: Sample size; defaults to the first configured n.

        Raises:
            ConfigurationError: If no n is configured.
        """
        if n is None:
            if not self.n:
                raise ConfigurationError("no n configured for the run")
            n = self.n[0]
        return MonteCarloPlan(
            replications=self.replications,
            master_seed=self.seed,
            n=n,
            slack_sigmas=self.slack_sigmas,
        )

    def sweep(self) -> List[int]:
        """Return the n-sweep: the scenario's own sweep, else the n list."""
        return list(self.scenario.n_sweep or self.n)


def load_run_config(
    path: Optional[Union[str, Path]] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> RunConfig:
    """Load a run configuration from YAML and apply flag overrides.

    Args:
        path: YAML file; None starts from an empty mapping.
        overrides: Top-level keys replacing file values (None values ignored).

    Returns:
        The validated RunConfig.

    Raises:
        ConfigurationError: If the file cannot be read or does not validate.
    """
    raw: Dict[str, Any] = {}
    if path is not None:
        try:
            with open(path, encoding="utf-8") as handle:
                loaded = yaml.safe_load(handle)
        except (OSError, yaml.YAMLError) as e:
            raise ConfigurationError(f"cannot read config '{path}': {e}")
        if loaded is not None and not isinstance(loaded, dict):
            raise ConfigurationError(f"config '{path}' must be a mapping")
        raw = dict(loaded or {})

    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key in ("c0", "c1"):
            hardy = dict(raw.get("hardy") or {})
            hardy[key] = value
            raw["hardy"] = hardy
        else:
            raw[key] = value

    if "seed" not in raw:
        raise ConfigurationError("a master seed is required (--seed or 'seed:')")

    try:
        config = RunConfig(**raw)
    except ValidationError as e:
        raise ConfigurationError(f"invalid configuration: {e}")

    logger.debug(
        f"[CONFIG] loaded scenario '{config.scenario_name}' seed={config.seed}"
    )
    return config


def worker_count(requested: Optional[int] = None) -> int:
    """Resolve the replication worker count.

    Args:
        requested: Explicit count; overrides the environment when given.

    Returns:
        Positive number of workers.

    Raises:
        ConfigurationError: If CONCLAB_THREADS is not a positive integer.
    """
    if requested is not None:
        return requested
    value = os.environ.get(THREADS_ENV)
    if value is None or value.strip() == "":
        return os.cpu_count() or 1
    try:
        count = int(value)
    except ValueError:
        raise ConfigurationError(f"{THREADS_ENV} must be an integer, got '{value}'")
    if count < 1:
        raise ConfigurationError(f"{THREADS_ENV} must be positive, got {count}")
    return count
