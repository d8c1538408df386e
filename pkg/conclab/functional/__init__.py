"""Poincare and log-Sobolev machinery for conclab.

This module exposes the measure models, the Hardy and Cheeger criteria for
one-dimensional constants and the checks of both inequalities on test
functions.
"""

from conclab.functional.checks import (
    TestFunction,
    check_coordinate_tail,
    check_exp_moment,
    check_lsi_on_function,
    check_pi_on_function,
    finite_difference_gradient,
    lipschitz_image_constant,
)
from conclab.functional.hardy import (
    LSI_DIVERGENCE_NOTE,
    HardyBracket,
    cheeger_constant,
    cheeger_pi_constant,
    hardy_lsi_bracket,
    hardy_pi_bracket,
    hardy_table_row,
)
from conclab.functional.measures import ConstantKind, MeasureModel, ProductMeasureSpec

__all__ = [
    "ConstantKind",
    "HardyBracket",
    "LSI_DIVERGENCE_NOTE",
    "MeasureModel",
    "ProductMeasureSpec",
    "TestFunction",
    "check_coordinate_tail",
    "check_exp_moment",
    "check_lsi_on_function",
    "check_pi_on_function",
    "cheeger_constant",
    "cheeger_pi_constant",
    "finite_difference_gradient",
    "hardy_lsi_bracket",
    "hardy_pi_bracket",
    "hardy_table_row",
    "lipschitz_image_constant",
]
