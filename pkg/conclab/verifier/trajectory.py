"""W1(F_n, F) along one nested sample path.

Product scenarios use prefixes X_1, ..., X_n of a single draw of length
max(sweep); Wigner scenarios use the rescaled leading n x n minors of a
single matrix. The rows are plot input for the almost-sure decay and carry
no pass/fail.
"""

import logging
import math
from typing import List

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from conclab.core.config import MonteCarloPlan
from conclab.core.exceptions import ScenarioError
from conclab.core.streams import AUX_STREAM, replication_rng
from conclab.empirical.cdf import build_empirical
from conclab.empirical.metrics import w1_general
from conclab.matrix.ensemble import entry_vector, matrix_from_entries
from conclab.matrix.spectrum import eigenvalues
from conclab.verifier.catalog.transport import w1_shape
from conclab.verifier.scenario import Scenario

logger = logging.getLogger(__name__)

TRAJECTORY_ID = "TRAJECTORY"


class TrajectoryPoint(BaseModel):
    """W1 distance and shape at one n of the path."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    w1: float = Field(ge=0.0)
    shape: float

    @property
    def ratio(self) -> float:
        return self.w1 / self.shape if self.shape > 0 else math.nan

    def as_row(self) -> list:
        return [self.n, self.w1, self.shape, self.ratio]


def _shape(scenario: Scenario) -> float:
    if scenario.kind == "wigner":
        sigma = scenario.entry_sigma("pi", TRAJECTORY_ID)
        return sigma / scenario.n ** (2.0 / 3.0)
    return w1_shape(scenario, TRAJECTORY_ID)


def _product_path(scenario: Scenario, plan: MonteCarloPlan, sizes: List[int]):
    rng = replication_rng(plan.master_seed, 0, AUX_STREAM)
    path = scenario.with_n(sizes[-1]).product.sample(rng)
    for n in sizes:
        yield n, build_empirical(path[:n])


def _wigner_path(scenario: Scenario, plan: MonteCarloPlan, sizes: List[int]):
    top = scenario.with_n(sizes[-1]).ensemble
    rng = replication_rng(plan.master_seed, 0, AUX_STREAM)
    matrix = matrix_from_entries(top.n, entry_vector(top, rng))
    for n in sizes:
        minor = np.sqrt(top.n / n) * matrix[:n, :n]
        yield n, eigenvalues(minor).to_empirical()


def sample_trajectory(
    scenario: Scenario, plan: MonteCarloPlan
) -> List[TrajectoryPoint]:
    """W1(F_n, F) and the decay shape at every n of the sweep.

    The path is drawn from the auxiliary stream of replication 0, so it is
    independent of the replications used by catalog entries.

    Raises:
        ScenarioError: If the sweep is empty or a Wigner sweep contains n < 2.
    """
    sizes = sorted(set(scenario.sweep))
    if not sizes:
        raise ScenarioError("a trajectory needs an n-sweep")
    if scenario.kind == "wigner":
        if sizes[0] < 2:
            raise ScenarioError("Wigner trajectories need n >= 2")
        steps = _wigner_path(scenario, plan, sizes)
    else:
        steps = _product_path(scenario, plan, sizes)

    points = []
    for n, emp in steps:
        at_n = scenario.with_n(n)
        point = TrajectoryPoint(
            n=n, w1=w1_general(emp, at_n.mean_cdf()), shape=_shape(at_n)
        )
        logger.debug(f"[TRAJECTORY-n={n}] w1={point.w1:.6g} ratio={point.ratio:.4g}")
        points.append(point)
    return points
