"""Test-function catalog with analytic derivatives and starting points."""

from optlab.functions.registry import (
    FunctionSpec,
    INDEX_RULE,
    INVERSE_DIMENSION_RULE,
    StartingPointRule,
    catalog,
    constant_rule,
    evaluate_catalog,
    get_spec,
    is_admissible,
    make_objective,
    nearest_admissible,
    register_function,
    repeat_rule,
    starting_point,
    structure_mask,
    unregister_function,
)
from optlab.functions.library import _register_builtins

_register_builtins()

__all__ = [
    "FunctionSpec",
    "INDEX_RULE",
    "INVERSE_DIMENSION_RULE",
    "StartingPointRule",
    "catalog",
    "constant_rule",
    "evaluate_catalog",
    "get_spec",
    "is_admissible",
    "make_objective",
    "nearest_admissible",
    "register_function",
    "repeat_rule",
    "starting_point",
    "structure_mask",
    "unregister_function",
]
