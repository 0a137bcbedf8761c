"""Shared fixtures and builders for the test suite.

The helpers here construct ad-hoc objectives without touching the function
catalog, so unit tests stay independent of library content. CountingShim
wraps a raw evaluator and tallies the ground-truth call counts that the
package's own counters must match exactly.
"""

from __future__ import annotations

import numpy as np
import pytest

from optlab.core.evaluation import ObjectiveFunction

ALL = frozenset({"value", "gradient", "hessian"})


def make_objective(name, dimension, value_fn, grad_fn=None, hess_fn=None):
    """Build an ObjectiveFunction from plain callables."""
    supports = {"value"}
    if grad_fn is not None:
        supports.add("gradient")
    if hess_fn is not None:
        supports.add("hessian")

    def raw(x, want_value, want_gradient, want_hessian):
        value = value_fn(x) if want_value else None
        gradient = grad_fn(x) if want_gradient else None
        hessian = hess_fn(x) if want_hessian else None
        return value, gradient, hessian

    return ObjectiveFunction(name, dimension, frozenset(supports), raw)


def make_quadratic(A, b=None, name="quadratic"):
    """f(x) = 0.5 x'Ax + b'x with gradient Ax + b and constant Hessian A."""
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    if b is None:
        b = np.zeros(n)
    b = np.asarray(b, dtype=float)
    return make_objective(
        name,
        n,
        lambda x: 0.5 * x @ A @ x + b @ x,
        lambda x: A @ x + b,
        lambda x: A.copy(),
    )


def random_spd(rng, n, condition=10.0):
    """Random symmetric positive definite matrix with bounded conditioning."""
    q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    eigs = np.linspace(1.0, condition, n)
    return q @ np.diag(eigs) @ q.T


class CountingShim:
    """Wraps an ObjectiveFunction and records ground-truth evaluation counts.

    Counts are incremented per requested object, mirroring the accounting the
    package promises: asking for value and gradient in one call is one value
    count plus one gradient count.
    """

    def __init__(self, f: ObjectiveFunction):
        self.n_value = 0
        self.n_gradient = 0
        self.n_hessian = 0
        inner = f.raw

        def counted(x, want_value, want_gradient, want_hessian):
            if want_value:
                self.n_value += 1
            if want_gradient:
                self.n_gradient += 1
            if want_hessian:
                self.n_hessian += 1
            return inner(x, want_value, want_gradient, want_hessian)

        self.objective = ObjectiveFunction(f.name, f.dimension, f.supports, counted)

    def totals(self):
        return (self.n_value, self.n_gradient, self.n_hessian)


_GATE_RESULTS: dict[str, tuple[str, float]] = {}


def pytest_runtest_logreport(report):
    """Collect per-test outcomes for the release-gate summary block. Setup
    time counts toward the criterion (shared fixtures do real solver work)."""
    if "test_acceptance.py::" not in report.nodeid or report.when not in ("setup", "call"):
        return
    name = report.nodeid.split("::")[-1]
    outcome, duration = _GATE_RESULTS.get(name, ("passed", 0.0))
    if report.outcome != "passed":
        outcome = report.outcome
    _GATE_RESULTS[name] = (outcome, duration + report.duration)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _GATE_RESULTS:
        return
    terminalreporter.write_sep("=", "release gate")
    for name, (outcome, duration) in _GATE_RESULTS.items():
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{name}: {verdict} ({duration:.2f}s)")


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def sphere2():
    """f(x) = x1^2 + x2^2, the simplest smooth test objective."""
    return make_objective(
        "sphere",
        2,
        lambda x: float(x @ x),
        lambda x: 2.0 * x,
        lambda x: 2.0 * np.eye(2),
    )


@pytest.fixture
def parabola1d():
    """One-dimensional f(x) = x^2 used by the hand-traced line search examples."""
    return make_objective(
        "parabola",
        1,
        lambda x: float(x[0] ** 2),
        lambda x: np.array([2.0 * x[0]]),
        lambda x: np.array([[2.0]]),
    )
