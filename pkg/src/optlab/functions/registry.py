"""Function catalog: specs, starting-point rules, and registration.

Each catalog entry is dimension-generic; make_objective() binds it to a
concrete dimension after checking admissibility.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from optlab.core.evaluation import ObjectiveFunction, RawEvaluator, evaluate
from optlab.core.types import EvalCounters, EvalRequest, EvalResult, Vector
from optlab.errors import DimensionMismatch, DuplicateName, UnknownFunction

__all__ = [
    "StartingPointRule",
    "repeat_rule",
    "constant_rule",
    "INDEX_RULE",
    "INVERSE_DIMENSION_RULE",
    "FunctionSpec",
    "register_function",
    "unregister_function",
    "catalog",
    "get_spec",
    "is_admissible",
    "nearest_admissible",
    "starting_point",
    "make_objective",
    "evaluate_catalog",
    "structure_mask",
]


@dataclass(frozen=True)
class StartingPointRule:
    """Deterministic x0 generator for any admissible dimension."""

    rule_id: str
    generate: Callable[[int], Vector]


def repeat_rule(*pattern: float) -> StartingPointRule:
    pat = np.asarray(pattern, dtype=float)
    label = ",".join(format(v, "g") for v in pattern)

    def generate(n: int) -> Vector:
        return np.tile(pat, n // pat.size + 1)[:n].copy()

    return StartingPointRule(rule_id=f"repeat({label})", generate=generate)


def constant_rule(c: float) -> StartingPointRule:
    return StartingPointRule(
        rule_id=f"constant({c:g})", generate=lambda n: np.full(n, float(c))
    )


INDEX_RULE = StartingPointRule(
    rule_id="index", generate=lambda n: np.arange(1, n + 1, dtype=float)
)

INVERSE_DIMENSION_RULE = StartingPointRule(
    rule_id="inverse-dimension", generate=lambda n: np.full(n, 1.0 / n)
)


_CONSTRAINTS: dict[str, Callable[[int], bool]] = {
    "any": lambda n: True,
    "even": lambda n: n % 2 == 0,
    "multiple-of-4": lambda n: n % 4 == 0,
}

# Hessian sparsity claims checkable at random points.
_STRUCTURES = ("diagonal", "tridiagonal", "block-2", "block-4", "dense")


@dataclass(frozen=True)
class FunctionSpec:
    """Catalog metadata for one test function."""

    name: str
    min_dimension: int
    dimension_constraint: str  # key of _CONSTRAINTS
    supports: frozenset
    starting_point: StartingPointRule
    default_dimension: int
    f_star: Optional[float]  # known optimal value when dimension-independent
    hessian_structure: str

    def __post_init__(self):
        if self.dimension_constraint not in _CONSTRAINTS:
            raise ValueError(f"unknown dimension constraint {self.dimension_constraint!r}")
        if self.hessian_structure not in _STRUCTURES:
            raise ValueError(f"unknown hessian structure {self.hessian_structure!r}")


_REGISTRY: dict[str, tuple[FunctionSpec, RawEvaluator]] = {}


def register_function(spec: FunctionSpec, evaluator: RawEvaluator) -> None:
    """Add a function to the catalog. Names are unique."""
    if spec.name in _REGISTRY:
        raise DuplicateName(f"function {spec.name!r} is already registered")
    _REGISTRY[spec.name] = (spec, evaluator)


def unregister_function(name: str) -> None:
    """Remove a registered function (test fixture cleanup)."""
    _REGISTRY.pop(name, None)


def catalog() -> list[FunctionSpec]:
    """All registered specs, sorted by name."""
    return sorted((spec for spec, _ in _REGISTRY.values()), key=lambda s: s.name)


def get_spec(name: str) -> FunctionSpec:
    try:
        return _REGISTRY[name][0]
    except KeyError:
        raise UnknownFunction(f"no catalog function named {name!r}") from None


def is_admissible(spec: FunctionSpec, n: int) -> bool:
    return n >= spec.min_dimension and _CONSTRAINTS[spec.dimension_constraint](n)


def nearest_admissible(spec: FunctionSpec, n: int) -> int:
    """Smallest admissible dimension >= n."""
    m = max(n, spec.min_dimension)
    while not is_admissible(spec, m):
        m += 1
    return m


def starting_point(name: str, n: int) -> Vector:
    """The catalog starting point for dimension n."""
    spec = get_spec(name)
    if not is_admissible(spec, n):
        raise DimensionMismatch(
            f"{name} requires n >= {spec.min_dimension} with constraint "
            f"{spec.dimension_constraint!r}; n={n} is not admissible"
        )
    return spec.starting_point.generate(n)


def make_objective(name: str, n: int) -> ObjectiveFunction:
    """Bind a catalog function to a concrete dimension."""
    try:
        spec, evaluator = _REGISTRY[name]
    except KeyError:
        raise UnknownFunction(f"no catalog function named {name!r}") from None
    if not is_admissible(spec, n):
        raise DimensionMismatch(
            f"{name} requires n >= {spec.min_dimension} with constraint "
            f"{spec.dimension_constraint!r}; n={n} is not admissible"
        )
    return ObjectiveFunction(
        name=name, dimension=n, supports=spec.supports, raw=evaluator
    )


def evaluate_catalog(
    name: str, x, req: EvalRequest, counters: Optional[EvalCounters] = None
) -> EvalResult:
    """Convenience: evaluate a catalog function at x (dimension = len(x))."""
    x = np.asarray(x, dtype=float)
    f = make_objective(name, x.size)
    return evaluate(f, x, req, counters if counters is not None else EvalCounters())


def structure_mask(structure: str, n: int) -> np.ndarray:
    """Boolean mask of entries allowed to be nonzero under a structure claim."""
    if structure == "dense":
        return np.ones((n, n), dtype=bool)
    mask = np.zeros((n, n), dtype=bool)
    idx = np.arange(n)
    if structure == "diagonal":
        mask[idx, idx] = True
    elif structure == "tridiagonal":
        mask[idx, idx] = True
        mask[idx[:-1], idx[:-1] + 1] = True
        mask[idx[:-1] + 1, idx[:-1]] = True
    elif structure in ("block-2", "block-4"):
        b = 2 if structure == "block-2" else 4
        for start in range(0, n, b):
            stop = min(start + b, n)
            mask[start:stop, start:stop] = True
    else:
        raise ValueError(f"unknown hessian structure {structure!r}")
    return mask
