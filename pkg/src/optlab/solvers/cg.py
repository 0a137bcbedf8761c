"""Nonlinear conjugate-gradient variants sharing one engine.

Directions restart to steepest descent every n iterations, whenever the
computed direction loses descent, and whenever a beta denominator degenerates.
"""

from __future__ import annotations

import numpy as np

from optlab.core.types import SolveReport, SolverConfig, Vector
from optlab.solvers.driver import EngineBase, run_descent_loop

__all__ = ["CG_VARIANTS", "cg_beta", "conjugate_gradient"]

CG_VARIANTS = ("FletcherReeves", "PolakRibiere", "HestenesStiefel", "DaiYuan", "CG_DESCENT")

_DENOM_FLOOR = 1e-30


def cg_beta(variant: str, g_new: Vector, g_old: Vector, p_old: Vector) -> float:
    """Conjugacy coefficient for one variant; 0 when the denominator degenerates."""
    y = g_new - g_old
    if variant == "FletcherReeves":
        den = float(g_old @ g_old)
        if abs(den) < _DENOM_FLOOR:
            return 0.0
        return float(g_new @ g_new) / den
    if variant == "PolakRibiere":
        den = float(g_old @ g_old)
        if abs(den) < _DENOM_FLOOR:
            return 0.0
        return max(float(g_new @ y) / den, 0.0)
    if variant == "HestenesStiefel":
        den = float(p_old @ y)
        if abs(den) < _DENOM_FLOOR:
            return 0.0
        return float(g_new @ y) / den
    if variant == "DaiYuan":
        den = float(p_old @ y)
        if abs(den) < _DENOM_FLOOR:
            return 0.0
        return float(g_new @ g_new) / den
    if variant == "CG_DESCENT":
        den = float(p_old @ y)
        if abs(den) < _DENOM_FLOOR:
            return 0.0
        scaled = y - (2.0 * float(y @ y) / den) * p_old
        return float(scaled @ g_new) / den
    raise ValueError(f"unknown conjugate-gradient variant {variant!r}")


class _ConjugateGradient(EngineBase):
    def __init__(self, variant: str, n: int):
        self.variant = variant
        self.n = n
        self.p_old = None
        self.g_old = None

    def direction(self, ctx, k, x, fval, g):
        if self.p_old is None or (self.n > 0 and k % self.n == 0):
            p = -g
        else:
            beta = cg_beta(self.variant, g, self.g_old, self.p_old)
            p = -g + beta * self.p_old
            if float(p @ g) >= 0.0:
                p = -g
        self.p_old = p
        self.g_old = g
        assert float(p @ g) < 0.0 or not np.any(g)
        return p


def conjugate_gradient(f, cfg: SolverConfig, x0, variant: str) -> SolveReport:
    return run_descent_loop(f, cfg, x0, _ConjugateGradient(variant, f.dimension))
