"""Shared domain types: points, evaluation requests/results, counters,
stopping criteria, iteration traces, solve reports, and configuration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from optlab.errors import ConfigError, NonFiniteResult

__all__ = [
    "Vector",
    "Matrix",
    "as_point",
    "TerminationReason",
    "SOLVED_REASONS",
    "EvalRequest",
    "WANT_VALUE",
    "WANT_GRADIENT",
    "WANT_HESSIAN",
    "WANT_VALUE_GRADIENT",
    "EvalResult",
    "EvalCounters",
    "StoppingCriteria",
    "IterationTrace",
    "SolveReport",
    "LineSearchConfig",
    "SolverConfig",
]

Vector = np.ndarray
Matrix = np.ndarray


def as_point(values) -> Vector:
    """Coerce to a 1-D float64 array, requiring at least one finite entry."""
    x = np.atleast_1d(np.asarray(values, dtype=float))
    if x.ndim != 1 or x.size < 1:
        raise ValueError("a point must be a one-dimensional, nonempty sequence")
    if not np.all(np.isfinite(x)):
        raise NonFiniteResult("point contains NaN/Inf coordinates")
    return x


class TerminationReason(str, Enum):
    MAX_ITERATIONS = "MaxIterations"
    GRADIENT_TOLERANCE = "GradientTolerance"
    WORK_PRECISION = "WorkPrecision"
    LINE_SEARCH_FAILURE = "LineSearchFailure"
    NUMERICAL_FAILURE = "NumericalFailure"


# Reasons that count as "solved" for benchmarking purposes.
SOLVED_REASONS = frozenset(
    {TerminationReason.GRADIENT_TOLERANCE, TerminationReason.WORK_PRECISION}
)


@dataclass(frozen=True)
class EvalRequest:
    """Which objects a single objective evaluation should produce."""

    want_value: bool = False
    want_gradient: bool = False
    want_hessian: bool = False

    def __post_init__(self):
        if not (self.want_value or self.want_gradient or self.want_hessian):
            raise ValueError("an evaluation request must ask for at least one object")

    def wanted(self) -> frozenset[str]:
        names = []
        if self.want_value:
            names.append("value")
        if self.want_gradient:
            names.append("gradient")
        if self.want_hessian:
            names.append("hessian")
        return frozenset(names)


WANT_VALUE = EvalRequest(want_value=True)
WANT_GRADIENT = EvalRequest(want_gradient=True)
WANT_HESSIAN = EvalRequest(want_hessian=True)
WANT_VALUE_GRADIENT = EvalRequest(want_value=True, want_gradient=True)


@dataclass(frozen=True)
class EvalResult:
    """Evaluation output. A field is present exactly when it was requested."""

    value: Optional[float] = None
    gradient: Optional[Vector] = None
    hessian: Optional[Matrix] = None


@dataclass
class EvalCounters:
    """Exact evaluation counts; the complexity currency of every report."""

    n_value: int = 0
    n_gradient: int = 0
    n_hessian: int = 0

    def bump(self, req: EvalRequest) -> None:
        self.n_value += int(req.want_value)
        self.n_gradient += int(req.want_gradient)
        self.n_hessian += int(req.want_hessian)

    def merge(self, other: "EvalCounters") -> None:
        self.n_value += other.n_value
        self.n_gradient += other.n_gradient
        self.n_hessian += other.n_hessian

    def __add__(self, other: "EvalCounters") -> "EvalCounters":
        return EvalCounters(
            self.n_value + other.n_value,
            self.n_gradient + other.n_gradient,
            self.n_hessian + other.n_hessian,
        )

    def copy(self) -> "EvalCounters":
        return EvalCounters(self.n_value, self.n_gradient, self.n_hessian)

    def total(self) -> int:
        return self.n_value + self.n_gradient + self.n_hessian


@dataclass(frozen=True)
class StoppingCriteria:
    """Termination thresholds: iteration cap, gradient norm, relative change."""

    max_iter: int = 10000
    epsilon: float = 1e-6
    work_prec: float = 1e-16

    def __post_init__(self):
        if not isinstance(self.max_iter, int) or self.max_iter < 1:
            raise ConfigError("maxIterNum", "must be an integer >= 1")
        if not (self.epsilon > 0) or not np.isfinite(self.epsilon):
            raise ConfigError("epsilon", "must be a finite positive real")
        if self.work_prec < 0 or not np.isfinite(self.work_prec):
            raise ConfigError("workPrec", "must be a finite nonnegative real")

    def to_dict(self) -> dict:
        return {
            "maxIterNum": self.max_iter,
            "epsilon": self.epsilon,
            "workPrec": self.work_prec,
        }


class IterationTrace:
    """Per-iteration history: f values and gradient norms, index 0 = start."""

    def __init__(self):
        self.function_values: list[float] = []
        self.gradient_norms: list[float] = []

    def append(self, f: float, g_norm: float) -> None:
        self.function_values.append(float(f))
        self.gradient_norms.append(float(g_norm))

    def __len__(self) -> int:
        return len(self.function_values)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IterationTrace)
            and self.function_values == other.function_values
            and self.gradient_norms == other.gradient_norms
        )


@dataclass(frozen=True, eq=False)
class SolveReport:
    """Everything a solver run reports."""

    fmin: float
    xmin: Vector
    iterations: int
    cpu_seconds: float
    counters: EvalCounters
    trace: IterationTrace
    termination_reason: TerminationReason

    def __post_init__(self):
        assert len(self.trace) == self.iterations + 1
        assert self.fmin == self.trace.function_values[-1]

    @property
    def gradient_norm(self) -> float:
        return self.trace.gradient_norms[-1]

    @property
    def solved(self) -> bool:
        return self.termination_reason in SOLVED_REASONS

    def to_dict(self) -> dict:
        """Wire representation used by the CLI structured output and the API."""
        return {
            "fmin": self.fmin,
            "xmin": [float(v) for v in self.xmin],
            "gradientNorm": self.gradient_norm,
            "iterations": self.iterations,
            "cpuSeconds": self.cpu_seconds,
            "counters": {
                "nValue": self.counters.n_value,
                "nGradient": self.counters.n_gradient,
                "nHessian": self.counters.n_hessian,
            },
            "trace": {
                "functionValue": list(self.trace.function_values),
                "gradientNorm": list(self.trace.gradient_norms),
            },
            "terminationReason": self.termination_reason.value,
        }


@dataclass(frozen=True)
class LineSearchConfig:
    """Line-search rule selection plus every tunable any rule consumes.

    Rules ignore the fields they do not use. Bounds are enforced here so that
    CLI, API, and direct construction share one validation path.
    """

    rule: str = "Backtracking"
    rho: float = 1e-4
    sigma: float = 0.9
    beta: float = 0.5
    t_init: float = 1.0
    big_m: int = 10

    def __post_init__(self):
        if not (0 < self.rho < 0.5):
            raise ConfigError("rho", "must lie in (0, 0.5)")
        if not (self.rho < self.sigma < 1):
            raise ConfigError("sigma", "must lie in (rho, 1)")
        if not (0 < self.beta < 1):
            raise ConfigError("beta", "must lie in (0, 1)")
        if not (self.t_init > 0) or not np.isfinite(self.t_init):
            raise ConfigError("tInit", "must be a finite positive real")
        if not isinstance(self.big_m, int) or self.big_m < 1:
            raise ConfigError("bigM", "must be an integer >= 1")

    def to_dict(self) -> dict:
        return {
            "rule": self.rule,
            "rho": self.rho,
            "sigma": self.sigma,
            "beta": self.beta,
            "tInit": self.t_init,
            "bigM": self.big_m,
        }


@dataclass(frozen=True, eq=False)
class SolverConfig:
    """Method selection, line-search setup, stopping rule, and extras."""

    method_name: str = "GradientDescent"
    method_group: Optional[str] = None
    line_search: LineSearchConfig = field(default_factory=LineSearchConfig)
    stopping: StoppingCriteria = field(default_factory=StoppingCriteria)
    default_mode: bool = False
    x0: Optional[Vector] = None
    extras: dict = field(default_factory=dict)
    time_limit: Optional[float] = None
