"""Core domain types, counted evaluation, stopping rule, and defaults."""

from optlab.core.defaults import (
    DEFAULT_STOPPING,
    DefaultPairing,
    default_pairing,
    resolve_config,
)
from optlab.core.evaluation import (
    ObjectiveFunction,
    evaluate,
    finite_diff_gradient,
    finite_diff_hessian,
    should_stop,
    with_fd_fallback,
)
from optlab.core.types import (
    EvalCounters,
    EvalRequest,
    EvalResult,
    IterationTrace,
    LineSearchConfig,
    Matrix,
    SOLVED_REASONS,
    SolveReport,
    SolverConfig,
    StoppingCriteria,
    TerminationReason,
    Vector,
    WANT_GRADIENT,
    WANT_HESSIAN,
    WANT_VALUE,
    WANT_VALUE_GRADIENT,
    as_point,
)

__all__ = [
    "DEFAULT_STOPPING",
    "DefaultPairing",
    "default_pairing",
    "resolve_config",
    "ObjectiveFunction",
    "evaluate",
    "finite_diff_gradient",
    "finite_diff_hessian",
    "should_stop",
    "with_fd_fallback",
    "EvalCounters",
    "EvalRequest",
    "EvalResult",
    "IterationTrace",
    "LineSearchConfig",
    "Matrix",
    "SOLVED_REASONS",
    "SolveReport",
    "SolverConfig",
    "StoppingCriteria",
    "TerminationReason",
    "Vector",
    "WANT_GRADIENT",
    "WANT_HESSIAN",
    "WANT_VALUE",
    "WANT_VALUE_GRADIENT",
    "as_point",
]
