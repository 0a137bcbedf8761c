"""Generic descent loop shared by every line-search solver.

An engine supplies directions (and optionally a trial step and a post-step
state update); the driver owns evaluation, stopping, tracing, timing, and the
translation of search/evaluation failures into termination reasons.
"""

from __future__ import annotations

import time
from typing import Optional, Protocol

import numpy as np

from optlab.core.evaluation import evaluate, should_stop
from optlab.core.types import (
    EvalCounters,
    IterationTrace,
    SolveReport,
    SolverConfig,
    TerminationReason,
    Vector,
    WANT_HESSIAN,
    WANT_VALUE_GRADIENT,
)
from optlab.errors import LineSearchFailure, NonFiniteResult, SingularMatrix
from optlab.linesearch.base import HistoryWindow, LineSearchOutcome
from optlab.linesearch.rules import run_line_search

__all__ = ["DirectionEngine", "RunContext", "run_descent_loop"]


class RunContext:
    """Run-scoped services an engine may use (counted Hessian evaluation)."""

    def __init__(self, f, counters: EvalCounters):
        self.f = f
        self.counters = counters

    def hessian(self, x: Vector) -> np.ndarray:
        return evaluate(self.f, x, WANT_HESSIAN, self.counters).hessian


class DirectionEngine(Protocol):
    def direction(self, ctx: RunContext, k: int, x: Vector, fval: float, g: Vector) -> Vector:
        ...

    def trial_step(self, k: int) -> Optional[float]:
        ...

    def update(self, x_old: Vector, g_old: Vector, out: LineSearchOutcome) -> None:
        ...


class EngineBase:
    """No-op trial step and update; engines override what they need."""

    def trial_step(self, k: int) -> Optional[float]:
        return None

    def update(self, x_old, g_old, out) -> None:
        return None


def _deadline_reached(start: float, limit: Optional[float]) -> bool:
    return limit is not None and (time.perf_counter() - start) >= limit


def run_descent_loop(f, cfg: SolverConfig, x0: Vector, engine) -> SolveReport:
    counters = EvalCounters()
    trace = IterationTrace()
    crit = cfg.stopping
    started = time.perf_counter()

    res = evaluate(f, x0, WANT_VALUE_GRADIENT, counters)
    x, fval, g = np.asarray(x0, dtype=float), res.value, res.gradient
    trace.append(fval, float(np.linalg.norm(g)))

    window = HistoryWindow(max(cfg.line_search.big_m, 2))
    window.push(fval)

    ctx = RunContext(f, counters)
    f_prev: Optional[float] = None
    k = 0
    reason = None
    while True:
        g_norm = float(np.linalg.norm(g))
        reason = should_stop(k, g_norm, f_prev, fval, crit)
        if reason is None and _deadline_reached(started, cfg.time_limit):
            reason = TerminationReason.MAX_ITERATIONS
        if reason is not None:
            break
        try:
            d = engine.direction(ctx, k, x, fval, g)
            out = run_line_search(
                f,
                x,
                fval,
                g,
                d,
                cfg.line_search,
                counters,
                window=window,
                t_start=engine.trial_step(k),
            )
        except LineSearchFailure:
            reason = TerminationReason.LINE_SEARCH_FAILURE
            break
        except (NonFiniteResult, SingularMatrix):
            reason = TerminationReason.NUMERICAL_FAILURE
            break
        engine.update(x, g, out)
        f_prev = fval
        x, fval, g = out.x_new, out.f_new, out.g_new
        k += 1
        trace.append(fval, float(np.linalg.norm(g)))
        window.push(fval)
        window.prev_t = out.t

    return SolveReport(
        fmin=fval,
        xmin=x,
        iterations=k,
        cpu_seconds=time.perf_counter() - started,
        counters=counters,
        trace=trace,
        termination_reason=reason,
    )
