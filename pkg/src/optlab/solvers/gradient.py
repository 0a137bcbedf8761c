"""Gradient-descent family: steepest descent and the two spectral step-size
variants that feed their trial step into the configured line search.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from optlab.core.types import SolveReport, SolverConfig, Vector
from optlab.solvers.driver import EngineBase, run_descent_loop

__all__ = [
    "bb_trial_step",
    "sc_trial_step",
    "gradient_descent",
    "barzilai_borwein",
    "scalar_correction",
]


def bb_trial_step(s: Vector, y: Vector) -> float:
    """Spectral step s'y / y'y; falls back to 1 when degenerate."""
    yy = float(y @ y)
    if yy <= 0.0:
        return 1.0
    t = float(s @ y) / yy
    if not np.isfinite(t) or t <= 0.0:
        return 1.0
    return t


def sc_trial_step(s: Vector, y: Vector, t: float) -> float:
    """Correction step from r = s - t*y: s'r / y'r when y'r > 0, otherwise
    the safeguard ||s||/||y||; falls back to 1 when degenerate."""
    ny = float(np.linalg.norm(y))
    if ny == 0.0:
        return 1.0
    r = s - t * y
    yr = float(y @ r)
    if yr > 0.0:
        trial = float(s @ r) / yr
    else:
        trial = float(np.linalg.norm(s)) / ny
    if not np.isfinite(trial) or trial <= 0.0:
        return 1.0
    return trial


class _SteepestDescent(EngineBase):
    def direction(self, ctx, k, x, fval, g):
        d = -g
        assert float(d @ g) < 0.0 or not np.any(g)
        return d


class _SpectralEngine(EngineBase):
    """Steepest-descent direction with a history-derived trial step."""

    def __init__(self, kind: str):
        self.kind = kind
        self.trial: Optional[float] = None
        self.last_t: Optional[float] = None

    def direction(self, ctx, k, x, fval, g):
        return -g

    def trial_step(self, k):
        return self.trial  # None on the first iteration: rule uses tInit

    def update(self, x_old, g_old, out):
        s = out.x_new - x_old
        y = out.g_new - g_old
        if self.kind == "bb":
            self.trial = bb_trial_step(s, y)
        else:
            self.trial = sc_trial_step(s, y, out.t)


def gradient_descent(f, cfg: SolverConfig, x0) -> SolveReport:
    return run_descent_loop(f, cfg, x0, _SteepestDescent())


def barzilai_borwein(f, cfg: SolverConfig, x0) -> SolveReport:
    return run_descent_loop(f, cfg, x0, _SpectralEngine("bb"))


def scalar_correction(f, cfg: SolverConfig, x0) -> SolveReport:
    return run_descent_loop(f, cfg, x0, _SpectralEngine("sc"))
