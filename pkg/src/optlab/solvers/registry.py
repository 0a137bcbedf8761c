"""Method registry: every solver with its group, derivative requirement,
line-search usage, and runner, in the canonical listing order."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from optlab.core.types import SolveReport, SolverConfig
from optlab.errors import UnknownMethod
from optlab.solvers import cg, gradient, newton, quasinewton, trustregion

__all__ = ["MethodInfo", "METHOD_GROUPS", "methods", "method_names", "get_method",
           "methods_by_group"]

Runner = Callable[[object, SolverConfig, object], SolveReport]

METHOD_GROUPS = (
    "Gradient Descent",
    "Newton",
    "Conjugate Gradient",
    "Modified Newton",
    "Quasi Newton",
    "Trust Region",
)


@dataclass(frozen=True)
class MethodInfo:
    name: str
    group: str
    required_derivative: int  # 1 = gradient, 2 = Hessian
    uses_line_search: bool
    runner: Runner


def _cg_runner(variant: str) -> Runner:
    def run(f, cfg, x0):
        return cg.conjugate_gradient(f, cfg, x0, variant)
    return run


_METHODS: dict[str, MethodInfo] = {}


def _add(name, group, deriv, uses_ls, runner):
    _METHODS[name] = MethodInfo(name, group, deriv, uses_ls, runner)


_add("GradientDescent", "Gradient Descent", 1, True, gradient.gradient_descent)
_add("BarzilaiBorwein", "Gradient Descent", 1, True, gradient.barzilai_borwein)
_add("ScalarCorrection", "Gradient Descent", 1, True, gradient.scalar_correction)
_add("Newton", "Newton", 2, True, newton.newton)
_add("FletcherReeves", "Conjugate Gradient", 1, True, _cg_runner("FletcherReeves"))
_add("PolakRibiere", "Conjugate Gradient", 1, True, _cg_runner("PolakRibiere"))
_add("HestenesStiefel", "Conjugate Gradient", 1, True, _cg_runner("HestenesStiefel"))
_add("DaiYuan", "Conjugate Gradient", 1, True, _cg_runner("DaiYuan"))
_add("CG_DESCENT", "Conjugate Gradient", 1, True, _cg_runner("CG_DESCENT"))
_add("GoldsteinPrice", "Modified Newton", 2, True, newton.goldstein_price)
_add("Levenberg", "Modified Newton", 2, False, newton.levenberg)
_add("Marquardt", "Modified Newton", 2, False, newton.marquardt)
_add("SR1", "Quasi Newton", 1, True, quasinewton.sr1)
_add("DFP", "Quasi Newton", 1, True, quasinewton.dfp)
_add("BFGS", "Quasi Newton", 1, True, quasinewton.bfgs)
_add("L-BFGS", "Quasi Newton", 1, True, quasinewton.lbfgs)
_add("Dogleg", "Trust Region", 2, False, trustregion.dogleg)
_add("DoglegSR1", "Trust Region", 1, False, trustregion.dogleg_sr1)


def methods() -> list[MethodInfo]:
    """All methods in registry (group-then-listing) order."""
    return list(_METHODS.values())


def method_names() -> list[str]:
    return list(_METHODS.keys())


def get_method(name: str) -> MethodInfo:
    try:
        return _METHODS[name]
    except KeyError:
        raise UnknownMethod(f"unknown method {name!r}") from None


def methods_by_group() -> dict[str, list[MethodInfo]]:
    """Methods keyed by their six groups, groups in canonical order."""
    grouped: dict[str, list[MethodInfo]] = {g: [] for g in METHOD_GROUPS}
    for info in _METHODS.values():
        grouped[info.group].append(info)
    return grouped
