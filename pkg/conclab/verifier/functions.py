"""Smooth test functions f used by the linear-functional bounds."""

import logging
from typing import Callable, Dict

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from conclab.core.exceptions import ScenarioError

logger = logging.getLogger(__name__)


class TestFunctionSpec(BaseModel):
    """A test function with its derivative and Lipschitz seminorm.

    Attributes:
        name: Identifier used in scenario files.
        f: Vectorized function.
        derivative: Vectorized derivative f'.
        lipschitz: sup |f'|.
        bounded: Whether f is bounded (needed by the Hopf-Lax grid).
    """

    __test__ = False

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    f: Callable[[np.ndarray], np.ndarray]
    derivative: Callable[[np.ndarray], np.ndarray]
    lipschitz: float = Field(gt=0.0)
    bounded: bool = True


def _catalog() -> Dict[str, TestFunctionSpec]:
    return {
        "sin": TestFunctionSpec(
            name="sin", f=np.sin, derivative=np.cos, lipschitz=1.0
        ),
        "identity": TestFunctionSpec(
            name="identity",
            f=lambda x: np.asarray(x, dtype=float),
            derivative=lambda x: np.ones_like(np.asarray(x, dtype=float)),
            lipschitz=1.0,
            bounded=False,
        ),
        "tanh": TestFunctionSpec(
            name="tanh",
            f=np.tanh,
            derivative=lambda x: 1.0 / np.cosh(x) ** 2,
            lipschitz=1.0,
        ),
        "arctan": TestFunctionSpec(
            name="arctan",
            f=np.arctan,
            derivative=lambda x: 1.0 / (1.0 + np.asarray(x, dtype=float) ** 2),
            lipschitz=1.0,
        ),
    }


TEST_FUNCTIONS = _catalog()


def get_test_function(name: str) -> TestFunctionSpec:
    """Look up a test function by id.

    Raises:
        ScenarioError: If the id is unknown.

    Example:
        >>> get_test_function("sin").lipschitz
        1.0
    """
    try:
        return TEST_FUNCTIONS[name]
    except KeyError:
        raise ScenarioError(
            f"unknown test function '{name}'",
            details={"known": sorted(TEST_FUNCTIONS)},
        )
