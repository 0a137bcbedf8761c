"""Workbench for unconstrained numerical optimization: a catalog of test
functions with analytic derivatives, eleven line-search rules, eighteen
solvers in six method groups, benchmark tooling with performance profiles,
and CLI/HTTP front ends.
"""

from optlab.core.defaults import DEFAULT_STOPPING, default_pairing, resolve_config
from optlab.core.types import (
    EvalCounters,
    EvalRequest,
    IterationTrace,
    LineSearchConfig,
    SolveReport,
    SolverConfig,
    StoppingCriteria,
    TerminationReason,
)
from optlab.functions import registry as functions
from optlab.solvers.api import solve

__version__ = "1.0.0"

__all__ = [
    "DEFAULT_STOPPING",
    "default_pairing",
    "resolve_config",
    "EvalCounters",
    "EvalRequest",
    "IterationTrace",
    "LineSearchConfig",
    "SolveReport",
    "SolverConfig",
    "StoppingCriteria",
    "TerminationReason",
    "functions",
    "solve",
    "__version__",
]
