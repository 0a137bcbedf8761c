"""Error taxonomy shared across the package.

Solvers translate the run-aborting members (NonFiniteResult, SingularMatrix,
LineSearchFailure) into termination reasons; interface layers translate the
rest into exit codes / HTTP statuses.
"""

from __future__ import annotations

__all__ = [
    "OptlabError",
    "DimensionMismatch",
    "UnsupportedDerivative",
    "NonFiniteResult",
    "DuplicateName",
    "UnknownFunction",
    "UnknownMethod",
    "UnknownLineSearch",
    "ConfigError",
    "LineSearchFailure",
    "NotDescentDirection",
    "RoundingStall",
    "SingularMatrix",
    "NonPositiveCurvature",
    "DegenerateMeasure",
    "EmptyWindow",
]


class OptlabError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatch(OptlabError):
    """A point's dimension does not match what the consumer requires."""


class UnsupportedDerivative(OptlabError):
    """A derivative order was requested that the objective does not implement."""


class NonFiniteResult(OptlabError):
    """An evaluation produced or received NaN/Inf entries."""


class DuplicateName(OptlabError):
    """A registry already contains an entry under this name."""


class UnknownFunction(OptlabError):
    """No catalog function registered under this name."""


class UnknownMethod(OptlabError):
    """No solver registered under this name."""


class UnknownLineSearch(OptlabError):
    """No line-search rule registered under this name."""


class ConfigError(OptlabError):
    """A configuration field failed validation. Carries the field name."""

    def __init__(self, field: str, message: str):
        self.field = field
        self.message = message
        super().__init__(f"{field}: {message}")


class LineSearchFailure(OptlabError):
    """A line-search rule exhausted its budget without an acceptable step."""


class NotDescentDirection(LineSearchFailure):
    """The supplied direction has nonnegative directional derivative."""


class RoundingStall(LineSearchFailure):
    """A search interval collapsed below machine-precision scale."""


class SingularMatrix(OptlabError):
    """A linear system could not be solved (singular factorization)."""


class NonPositiveCurvature(OptlabError):
    """Curvature along the gradient is nonpositive; the model has no Cauchy point."""


class DegenerateMeasure(OptlabError):
    """A benchmark measure is unusable for ratio computation."""


class EmptyWindow(OptlabError):
    """A requested trace window contains no points."""
