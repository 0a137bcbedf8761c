"""Trust-region methods with a dogleg subproblem solver.

The quadratic model is m(d) = f + g'd + d'Bd/2 inside ||d|| <= Delta. The
exact variant takes B from the Hessian; the SR1 variant maintains an inverse
approximation H (Newton point -H g, curvature via solves with H) and updates
it on every iteration, including rejected steps.
"""

from __future__ import annotations

import time
from typing import Optional

import numpy as np

from optlab.core.evaluation import evaluate, should_stop
from optlab.core.types import (
    EvalCounters,
    IterationTrace,
    Matrix,
    SolveReport,
    SolverConfig,
    TerminationReason,
    Vector,
    WANT_GRADIENT,
    WANT_HESSIAN,
    WANT_VALUE,
    WANT_VALUE_GRADIENT,
)
from optlab.errors import ConfigError, NonFiniteResult, NonPositiveCurvature, SingularMatrix
from optlab.solvers.linalg import solve_symmetric
from optlab.solvers.quasinewton import sr1_update

__all__ = [
    "dogleg_step",
    "model_value",
    "TrustRegionLoop",
    "dogleg",
    "dogleg_sr1",
]

_SHRINK = 0.25
_GROW = 2.0
_RADIUS_FLOOR = 1e-15


def _b_product(v: Vector, B: Optional[Matrix], H: Optional[Matrix]) -> Vector:
    """B v, where the model matrix is given either directly or through its
    inverse (solved; may raise SingularMatrix)."""
    if B is not None:
        return B @ v
    return solve_symmetric(H, v)


def model_value(g: Vector, d: Vector, B: Optional[Matrix] = None,
                H: Optional[Matrix] = None) -> float:
    """Quadratic model value g'd + d'Bd/2 (constant term dropped)."""
    return float(g @ d) + 0.5 * float(d @ _b_product(d, B, H))


def dogleg_step(g: Vector, delta: float, B: Optional[Matrix] = None,
                H: Optional[Matrix] = None) -> Vector:
    """Minimize the model along the dogleg path within radius delta.

    Exactly one of B (model Hessian) or H (its inverse) must be given.
    Returns the Newton point when it fits, the radius-clipped Cauchy point
    when even the Cauchy point leaves the region, and otherwise the analytic
    intersection of the Cauchy-to-Newton segment with the sphere.

    Raises NonPositiveCurvature when g'Bg <= 0 (or the curvature cannot be
    computed); callers fall back to the scaled steepest-descent step.
    """
    if (B is None) == (H is None):
        raise ValueError("exactly one of B or H is required")
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    try:
        curvature = float(g @ _b_product(g, B, H))
    except SingularMatrix as exc:
        raise NonPositiveCurvature("model curvature unavailable") from exc
    if curvature <= 0.0:
        raise NonPositiveCurvature("g'Bg <= 0 along the gradient")

    p_cauchy = -(float(g @ g) / curvature) * g
    norm_cauchy = float(np.linalg.norm(p_cauchy))
    clipped_cauchy = min(1.0, delta / norm_cauchy) * p_cauchy if norm_cauchy > 0 else p_cauchy

    if H is not None:
        p_newton = -(H @ g)
    else:
        try:
            p_newton = solve_symmetric(B, -g)
        except SingularMatrix:
            return clipped_cauchy

    norm_newton = float(np.linalg.norm(p_newton))
    if norm_newton <= delta:
        return p_newton
    if norm_cauchy >= delta:
        return (delta / norm_cauchy) * p_cauchy

    w = p_newton - p_cauchy
    a = float(w @ w)
    if a <= 0.0:
        return clipped_cauchy
    b = 2.0 * float(p_cauchy @ w)
    c = float(p_cauchy @ p_cauchy) - delta * delta
    disc = max(b * b - 4.0 * a * c, 0.0)
    tau = (-b + np.sqrt(disc)) / (2.0 * a)
    tau = min(max(tau, 0.0), 1.0)
    return p_cauchy + tau * w


def _positive_extra(extras: dict, field: str, default: float) -> float:
    value = float(extras.get(field, default))
    if not np.isfinite(value) or value <= 0.0:
        raise ConfigError(field, "must be a positive finite number")
    return value


class TrustRegionLoop:
    """One trust-region run with inspectable state.

    advance() performs a single outer iteration (accepted or rejected step)
    so tests can observe radius and approximation changes; run() drives the
    loop to termination and assembles the report.
    """

    def __init__(self, f, cfg: SolverConfig, x0: Vector, use_sr1: bool):
        self.f = f
        self.cfg = cfg
        self.use_sr1 = use_sr1
        self.counters = EvalCounters()
        self.trace = IterationTrace()
        self.started = time.perf_counter()

        extras = cfg.extras
        self.delta = _positive_extra(extras, "trustRadius0", 1.0)
        self.delta_max = _positive_extra(extras, "trustRadiusMax", 100.0)
        if self.delta > self.delta_max:
            raise ConfigError("trustRadius0", "must not exceed trustRadiusMax")
        self.eta = float(extras.get("eta", 1e-3))
        if not 0.0 <= self.eta < 0.25:
            raise ConfigError("eta", "must lie in [0, 0.25)")

        res = evaluate(f, x0, WANT_VALUE_GRADIENT, self.counters)
        self.x = np.asarray(x0, dtype=float)
        self.fval = res.value
        self.g = res.gradient
        self.trace.append(self.fval, float(np.linalg.norm(self.g)))

        self.H: Optional[Matrix] = np.eye(self.x.size) if use_sr1 else None
        self.G: Optional[Matrix] = None  # cached Hessian, exact mode only
        self.k = 0
        self.f_prev: Optional[float] = None

    def _stop_reason(self) -> Optional[TerminationReason]:
        reason = should_stop(
            self.k, float(np.linalg.norm(self.g)), self.f_prev, self.fval,
            self.cfg.stopping,
        )
        if reason is None and self.cfg.time_limit is not None:
            if time.perf_counter() - self.started >= self.cfg.time_limit:
                return TerminationReason.MAX_ITERATIONS
        return reason

    def _step_and_reduction(self) -> tuple[Vector, float]:
        """Dogleg step at the current radius, shrinking the radius until the
        predicted reduction is positive. Raises SingularMatrix on radius
        underflow."""
        while True:
            try:
                d = dogleg_step(self.g, self.delta, B=self.G, H=self.H)
            except NonPositiveCurvature:
                g_norm = float(np.linalg.norm(self.g))
                d = -(self.delta / g_norm) * self.g
            pred = -float(self.g @ d) - 0.5 * self._quad_term(d)
            if pred > 0.0:
                return d, pred
            self.delta *= _SHRINK
            if self.delta < _RADIUS_FLOOR:
                raise SingularMatrix("trust radius underflow")

    def _quad_term(self, d: Vector) -> float:
        try:
            return float(d @ _b_product(d, self.G, self.H))
        except SingularMatrix:
            return 0.0  # degenerate inverse: fall back to the linear model

    def advance(self) -> Optional[TerminationReason]:
        """Run one iteration. Returns a failure reason, or None on a normal
        (accepted or rejected) step."""
        try:
            if not self.use_sr1 and self.G is None:
                self.G = evaluate(self.f, self.x, WANT_HESSIAN, self.counters).hessian
            d, pred = self._step_and_reduction()
            x_trial = self.x + d
            f_trial = evaluate(self.f, x_trial, WANT_VALUE, self.counters).value

            g_trial: Optional[Vector] = None
            if self.use_sr1:
                g_trial = evaluate(self.f, x_trial, WANT_GRADIENT, self.counters).gradient
                self.H = sr1_update(self.H, d, g_trial - self.g)

            ratio = (self.fval - f_trial) / pred
            step_norm = float(np.linalg.norm(d))
            if ratio < 0.25:
                self.delta *= _SHRINK
                if self.delta < _RADIUS_FLOOR:
                    return TerminationReason.NUMERICAL_FAILURE
            elif ratio > 0.75 and step_norm >= 0.99 * self.delta:
                self.delta = min(_GROW * self.delta, self.delta_max)

            if ratio > self.eta:
                if g_trial is None:
                    g_trial = evaluate(self.f, x_trial, WANT_GRADIENT, self.counters).gradient
                self.f_prev = self.fval
                self.x, self.fval, self.g = x_trial, f_trial, g_trial
                self.G = None
            else:
                self.f_prev = None  # no progress to measure against
        except (NonFiniteResult, SingularMatrix):
            return TerminationReason.NUMERICAL_FAILURE
        self.k += 1
        self.trace.append(self.fval, float(np.linalg.norm(self.g)))
        return None

    def run(self) -> SolveReport:
        while True:
            reason = self._stop_reason()
            if reason is not None:
                break
            reason = self.advance()
            if reason is not None:
                break
        return SolveReport(
            fmin=self.fval,
            xmin=self.x,
            iterations=self.k,
            cpu_seconds=time.perf_counter() - self.started,
            counters=self.counters,
            trace=self.trace,
            termination_reason=reason,
        )


def dogleg(f, cfg: SolverConfig, x0) -> SolveReport:
    return TrustRegionLoop(f, cfg, x0, use_sr1=False).run()


def dogleg_sr1(f, cfg: SolverConfig, x0) -> SolveReport:
    return TrustRegionLoop(f, cfg, x0, use_sr1=True).run()
