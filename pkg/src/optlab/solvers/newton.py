"""Newton and the modified-Newton family.

Newton and the angle-guarded variant run through the shared descent loop; the
damped variants own their accept-on-decrease iteration with multiplier
adaptation and no step-length search.
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
from optlab.errors import NonFiniteResult, SingularMatrix
from optlab.solvers.driver import EngineBase, run_descent_loop
from optlab.solvers.linalg import solve_symmetric

__all__ = [
    "goldstein_price_direction",
    "damped_direction",
    "newton",
    "goldstein_price",
    "levenberg",
    "marquardt",
]

_DAMPING_FACTOR = 10.0
_MAX_DAMPING_TRIALS = 50


class _NewtonEngine(EngineBase):
    def direction(self, ctx, k, x, fval, g):
        G = ctx.hessian(x)
        return solve_symmetric(G, -g)  # SingularMatrix -> NumericalFailure


def goldstein_price_direction(G: Matrix, g: Vector, eta: float = 0.2) -> Vector:
    """Newton direction when its angle to -g has cosine >= eta, else -g.
    Singular systems fall back to -g."""
    try:
        dn = solve_symmetric(G, -g)
    except SingularMatrix:
        return -g
    denom = float(np.linalg.norm(dn)) * float(np.linalg.norm(g))
    if denom == 0.0:
        return -g
    cos_angle = float(dn @ -g) / denom
    if cos_angle >= eta:
        return dn
    return -g


class _GoldsteinPriceEngine(EngineBase):
    def __init__(self, eta: float):
        self.eta = eta

    def direction(self, ctx, k, x, fval, g):
        G = ctx.hessian(x)
        return goldstein_price_direction(G, g, self.eta)


def newton(f, cfg: SolverConfig, x0) -> SolveReport:
    return run_descent_loop(f, cfg, x0, _NewtonEngine())


def goldstein_price(f, cfg: SolverConfig, x0) -> SolveReport:
    eta = float(cfg.extras.get("eta", 0.2))
    return run_descent_loop(f, cfg, x0, _GoldsteinPriceEngine(eta))


def damped_direction(G: Matrix, g: Vector, lam: float, scale_diagonal: bool) -> Vector:
    """Direction from the shifted system (G + lam*I) d = -g, or with the shift
    applied to G's own diagonal when scale_diagonal is set."""
    n = g.size
    if scale_diagonal:
        shifted = G + lam * np.diag(np.diag(G))
    else:
        shifted = G + lam * np.eye(n)
    return solve_symmetric(shifted, -g)


def _damped_newton(f, cfg: SolverConfig, x0, scale_diagonal: bool) -> SolveReport:
    counters = EvalCounters()
    trace = IterationTrace()
    crit = cfg.stopping
    started = time.perf_counter()

    res = evaluate(f, x0, WANT_VALUE_GRADIENT, counters)
    x, fval, g = np.asarray(x0, dtype=float), res.value, res.gradient
    trace.append(fval, float(np.linalg.norm(g)))

    lam = float(cfg.extras.get("lambda0", 1e-3))
    f_prev: Optional[float] = None
    k = 0
    reason = None
    while True:
        g_norm = float(np.linalg.norm(g))
        reason = should_stop(k, g_norm, f_prev, fval, crit)
        if reason is None and cfg.time_limit is not None:
            if time.perf_counter() - started >= cfg.time_limit:
                reason = TerminationReason.MAX_ITERATIONS
        if reason is not None:
            break
        try:
            G = evaluate(f, x, WANT_HESSIAN, counters).hessian
            accepted = None
            for _ in range(_MAX_DAMPING_TRIALS):
                try:
                    d = damped_direction(G, g, lam, scale_diagonal)
                except SingularMatrix:
                    lam *= _DAMPING_FACTOR
                    continue
                f_trial = evaluate(f, x + d, WANT_VALUE, counters).value
                if f_trial < fval:
                    accepted = (d, f_trial)
                    break
                lam *= _DAMPING_FACTOR
            if accepted is None:
                reason = TerminationReason.NUMERICAL_FAILURE
                break
            d, f_trial = accepted
            lam /= _DAMPING_FACTOR
            f_prev = fval
            x = x + d
            fval = f_trial
            g = evaluate(f, x, WANT_GRADIENT, counters).gradient
        except NonFiniteResult:
            reason = TerminationReason.NUMERICAL_FAILURE
            break
        k += 1
        trace.append(fval, float(np.linalg.norm(g)))

    return SolveReport(
        fmin=fval,
        xmin=x,
        iterations=k,
        cpu_seconds=time.perf_counter() - started,
        counters=counters,
        trace=trace,
        termination_reason=reason,
    )


def levenberg(f, cfg: SolverConfig, x0) -> SolveReport:
    return _damped_newton(f, cfg, x0, scale_diagonal=False)


def marquardt(f, cfg: SolverConfig, x0) -> SolveReport:
    return _damped_newton(f, cfg, x0, scale_diagonal=True)
