"""Single entry point dispatching a configured solve to the right method."""

from __future__ import annotations

import numpy as np

from optlab.core.defaults import resolve_config
from optlab.core.evaluation import ObjectiveFunction
from optlab.core.types import SolveReport, SolverConfig, Vector
from optlab.errors import ConfigError, UnknownFunction, UnsupportedDerivative
from optlab.functions import registry as function_registry
from optlab.solvers.registry import MethodInfo, get_method

__all__ = ["solve", "resolve_start"]

_DERIVATIVE_NAMES = {1: "gradient", 2: "hessian"}


def _check_support(f: ObjectiveFunction, info: MethodInfo) -> None:
    for order in range(1, info.required_derivative + 1):
        needed = _DERIVATIVE_NAMES[order]
        if needed not in f.supports:
            raise UnsupportedDerivative(
                f"method {info.name!r} needs the {needed} of {f.name!r}, "
                f"which only supports {sorted(f.supports)}"
            )


def resolve_start(f: ObjectiveFunction, cfg: SolverConfig) -> Vector:
    """The run's starting point: explicit x0 if configured, else the catalog
    rule for the function's name."""
    if cfg.x0 is not None:
        x0 = np.asarray(cfg.x0, dtype=float)
        if x0.ndim != 1 or x0.size != f.dimension:
            raise ConfigError(
                "x0", f"expected {f.dimension} coordinates, got {x0.size}"
            )
        return x0
    try:
        return function_registry.starting_point(f.name, f.dimension)
    except UnknownFunction:
        raise ConfigError(
            "x0", f"required: {f.name!r} has no predefined starting point"
        ) from None


def solve(f: ObjectiveFunction, cfg: SolverConfig) -> SolveReport:
    """Run cfg.method_name on f from the configured or predefined start.

    Applies default-mode substitution, verifies the method's derivative needs
    against the function's support set, and dispatches to the method runner.
    """
    info = get_method(cfg.method_name)
    if cfg.method_group is not None and cfg.method_group != info.group:
        raise ConfigError(
            "methodGroup",
            f"method {cfg.method_name!r} belongs to group {info.group!r}",
        )
    cfg = resolve_config(cfg)
    _check_support(f, info)
    x0 = resolve_start(f, cfg)
    return info.runner(f, cfg, x0)
