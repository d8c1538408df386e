"""Monte Carlo bound verifier for conclab.

This module exposes the BoundCheck base classes, scenarios, the catalog
registry, the execution engine, rate regressions and sample trajectories.
"""

from conclab.verifier.base import BoundCheck, RateCheck
from conclab.verifier.engine import (
    VerificationRun,
    build_scenario,
    curve,
    exit_code,
    rate_regression,
    run_bound_check,
)
from conclab.verifier.regression import RateFit, RatePoint, fit_rate
from conclab.verifier.registry import (
    CATALOG,
    get_check,
    known_bounds,
    validate_bounds,
)
from conclab.verifier.scenario import Scenario
from conclab.verifier.trajectory import TrajectoryPoint, sample_trajectory

__all__ = [
    "BoundCheck",
    "CATALOG",
    "RateCheck",
    "RateFit",
    "RatePoint",
    "Scenario",
    "TrajectoryPoint",
    "VerificationRun",
    "build_scenario",
    "curve",
    "exit_code",
    "fit_rate",
    "get_check",
    "known_bounds",
    "rate_regression",
    "run_bound_check",
    "sample_trajectory",
    "validate_bounds",
]
