"""Counted objective evaluation, the stopping rule, and finite-difference
oracles.

Every derivative the rest of the package consumes flows through evaluate(),
which is what makes the evaluation counters exact: one requested object is one
counter increment, always.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from optlab.core.types import (
    EvalCounters,
    EvalRequest,
    EvalResult,
    Matrix,
    StoppingCriteria,
    TerminationReason,
    Vector,
    WANT_VALUE,
)
from optlab.errors import DimensionMismatch, NonFiniteResult, UnsupportedDerivative

__all__ = [
    "ObjectiveFunction",
    "RawEvaluator",
    "evaluate",
    "should_stop",
    "finite_diff_gradient",
    "finite_diff_hessian",
    "with_fd_fallback",
]

# (x, want_value, want_gradient, want_hessian) -> (value|None, grad|None, hess|None)
RawEvaluator = Callable[[Vector, bool, bool, bool], tuple]

_SYMMETRY_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class ObjectiveFunction:
    """A dimension-bound objective with declared derivative support."""

    name: str
    dimension: int
    supports: frozenset
    raw: RawEvaluator


def evaluate(
    f: ObjectiveFunction, x: Vector, req: EvalRequest, counters: EvalCounters
) -> EvalResult:
    """Evaluate the requested objects at x, incrementing counters exactly.

    Raises UnsupportedDerivative for requests outside f.supports,
    DimensionMismatch for wrong-sized points, and NonFiniteResult when the
    input or any returned entry is NaN/Inf. Counters are incremented as soon
    as the underlying call happens, so aborted runs still report the true
    amount of work done.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size != f.dimension:
        raise DimensionMismatch(
            f"{f.name} expects dimension {f.dimension}, got shape {x.shape}"
        )
    if not np.all(np.isfinite(x)):
        raise NonFiniteResult(f"evaluation point for {f.name} contains NaN/Inf")
    missing = req.wanted() - f.supports
    if missing:
        raise UnsupportedDerivative(
            f"{f.name} does not implement: {', '.join(sorted(missing))}"
        )

    value, gradient, hessian = f.raw(
        x, req.want_value, req.want_gradient, req.want_hessian
    )
    counters.bump(req)

    out_value = out_gradient = out_hessian = None
    if req.want_value:
        out_value = float(value)
        if not np.isfinite(out_value):
            raise NonFiniteResult(f"{f.name} returned a non-finite value")
    if req.want_gradient:
        out_gradient = np.asarray(gradient, dtype=float)
        if out_gradient.shape != (f.dimension,):
            raise DimensionMismatch(f"{f.name} gradient has shape {out_gradient.shape}")
        if not np.all(np.isfinite(out_gradient)):
            raise NonFiniteResult(f"{f.name} returned a non-finite gradient")
    if req.want_hessian:
        out_hessian = np.asarray(hessian, dtype=float)
        if out_hessian.shape != (f.dimension, f.dimension):
            raise DimensionMismatch(f"{f.name} hessian has shape {out_hessian.shape}")
        if not np.all(np.isfinite(out_hessian)):
            raise NonFiniteResult(f"{f.name} returned a non-finite hessian")
        skew = np.abs(out_hessian - out_hessian.T).max()
        scale = 1.0 + np.abs(out_hessian).max()
        if skew > _SYMMETRY_RTOL * scale:
            raise NonFiniteResult(f"{f.name} returned an asymmetric hessian")
    return EvalResult(value=out_value, gradient=out_gradient, hessian=out_hessian)


def should_stop(
    k: int,
    g_norm: float,
    f_prev: Optional[float],
    f_curr: float,
    criteria: StoppingCriteria,
) -> Optional[TerminationReason]:
    """Stopping rule, checked in fixed order: iteration cap, gradient norm,
    relative function change. The change test is skipped when f_prev is None
    (first iteration, or an iteration that did not move the point).
    """
    if k >= criteria.max_iter:
        return TerminationReason.MAX_ITERATIONS
    if g_norm <= criteria.epsilon:
        return TerminationReason.GRADIENT_TOLERANCE
    if f_prev is not None:
        if abs(f_prev - f_curr) / (1.0 + abs(f_curr)) <= criteria.work_prec:
            return TerminationReason.WORK_PRECISION
    return None


def finite_diff_gradient(
    f: ObjectiveFunction,
    x: Vector,
    h: float = 1e-6,
    counters: Optional[EvalCounters] = None,
) -> Vector:
    """Central-difference gradient from value evaluations only."""
    counters = counters if counters is not None else EvalCounters()
    x = np.asarray(x, dtype=float)
    g = np.empty_like(x)
    for i in range(x.size):
        step = np.zeros_like(x)
        step[i] = h
        fp = evaluate(f, x + step, WANT_VALUE, counters).value
        fm = evaluate(f, x - step, WANT_VALUE, counters).value
        g[i] = (fp - fm) / (2.0 * h)
    return g


def finite_diff_hessian(
    f: ObjectiveFunction,
    x: Vector,
    h: float = 1e-4,
    counters: Optional[EvalCounters] = None,
) -> Matrix:
    """Central second-difference Hessian, symmetrized."""
    counters = counters if counters is not None else EvalCounters()
    x = np.asarray(x, dtype=float)
    n = x.size
    H = np.empty((n, n))
    f0 = evaluate(f, x, WANT_VALUE, counters).value
    for i in range(n):
        ei = np.zeros(n)
        ei[i] = h
        fp = evaluate(f, x + ei, WANT_VALUE, counters).value
        fm = evaluate(f, x - ei, WANT_VALUE, counters).value
        H[i, i] = (fp - 2.0 * f0 + fm) / (h * h)
        for j in range(i + 1, n):
            ej = np.zeros(n)
            ej[j] = h
            fpp = evaluate(f, x + ei + ej, WANT_VALUE, counters).value
            fpm = evaluate(f, x + ei - ej, WANT_VALUE, counters).value
            fmp = evaluate(f, x - ei + ej, WANT_VALUE, counters).value
            fmm = evaluate(f, x - ei - ej, WANT_VALUE, counters).value
            H[i, j] = H[j, i] = (fpp - fpm - fmp + fmm) / (4.0 * h * h)
    return 0.5 * (H + H.T)


def with_fd_fallback(
    f: ObjectiveFunction, h_gradient: float = 1e-6, h_hessian: float = 1e-4
) -> ObjectiveFunction:
    """Extend a value-only objective with finite-difference derivatives.

    The wrapped objective advertises gradient/hessian support; internal
    difference stencils call the original raw evaluator directly, so the
    counters of a solve reflect calls to the *wrapped* objective only.
    """

    def raw(x, want_value, want_gradient, want_hessian):
        value = gradient = hessian = None
        if want_value:
            value, _, _ = f.raw(x, True, False, False)
        if want_gradient:
            if "gradient" in f.supports:
                _, gradient, _ = f.raw(x, False, True, False)
            else:
                gradient = np.empty_like(x)
                for i in range(x.size):
                    step = np.zeros_like(x)
                    step[i] = h_gradient
                    fp, _, _ = f.raw(x + step, True, False, False)
                    fm, _, _ = f.raw(x - step, True, False, False)
                    gradient[i] = (fp - fm) / (2.0 * h_gradient)
        if want_hessian:
            if "hessian" in f.supports:
                _, _, hessian = f.raw(x, False, False, True)
            else:
                inner = ObjectiveFunction(
                    name=f.name,
                    dimension=f.dimension,
                    supports=frozenset({"value"}),
                    raw=f.raw,
                )
                hessian = finite_diff_hessian(inner, x, h=h_hessian)
        return value, gradient, hessian

    return ObjectiveFunction(
        name=f.name,
        dimension=f.dimension,
        supports=f.supports | frozenset({"gradient", "hessian"}),
        raw=raw,
    )
