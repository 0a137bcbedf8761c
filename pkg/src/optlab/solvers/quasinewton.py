"""Quasi-Newton methods maintaining an inverse-Hessian approximation: SR1,
DFP, BFGS, and the limited-memory two-loop variant.

The update formulas are exposed as pure functions so they can be exercised
directly against secant-equation checks.
"""

from __future__ import annotations

from collections import deque
from typing import Optional

import numpy as np

from optlab.core.types import Matrix, SolveReport, SolverConfig, Vector
from optlab.solvers.driver import EngineBase, run_descent_loop

__all__ = [
    "sr1_update",
    "dfp_update",
    "bfgs_update",
    "LbfgsMemory",
    "lbfgs_direction",
    "sr1",
    "dfp",
    "bfgs",
    "lbfgs",
]

_SR1_SKIP = 1e-8
_CURVATURE_SKIP = 1e-12


def sr1_update(H: Matrix, s: Vector, y: Vector) -> Matrix:
    """Symmetric rank-one update of the inverse approximation. Skipped (H
    returned unchanged) when the denominator v'y is negligible relative to
    ||v||*||y||, which also covers v = 0."""
    v = s - H @ y
    vy = float(v @ y)
    guard = _SR1_SKIP * float(np.linalg.norm(v)) * float(np.linalg.norm(y))
    if abs(vy) <= guard or vy == 0.0:
        return H
    return H + np.outer(v, v) / vy


def dfp_update(H: Matrix, s: Vector, y: Vector) -> Matrix:
    """Rank-two DFP update of the inverse approximation; skipped unless the
    curvature s'y is safely positive."""
    sy = float(s @ y)
    if sy <= _CURVATURE_SKIP * float(np.linalg.norm(s)) * float(np.linalg.norm(y)):
        return H
    Hy = H @ y
    yHy = float(y @ Hy)
    if yHy <= 0.0:
        return H
    return H + np.outer(s, s) / sy - np.outer(Hy, Hy) / yHy


def bfgs_update(H: Matrix, s: Vector, y: Vector) -> Matrix:
    """BFGS update of the inverse approximation,
    (I - rho*s*y')H(I - rho*y*s') + rho*s*s'; skipped unless the curvature
    s'y is safely positive."""
    sy = float(s @ y)
    if sy <= _CURVATURE_SKIP * float(np.linalg.norm(s)) * float(np.linalg.norm(y)):
        return H
    rho = 1.0 / sy
    n = s.size
    left = np.eye(n) - rho * np.outer(s, y)
    return left @ H @ left.T + rho * np.outer(s, s)


_UPDATES = {"sr1": sr1_update, "dfp": dfp_update, "bfgs": bfgs_update}


class _DenseQuasiNewton(EngineBase):
    """d = -H g with H reset to the identity if that fails to descend."""

    def __init__(self, kind: str):
        self.update_fn = _UPDATES[kind]
        self.H: Optional[Matrix] = None

    def direction(self, ctx, k, x, fval, g):
        if self.H is None:
            self.H = np.eye(g.size)
        d = -(self.H @ g)
        if float(d @ g) >= 0.0:
            self.H = np.eye(g.size)
            d = -g
        return d

    def update(self, x_old, g_old, out):
        s = out.x_new - x_old
        y = out.g_new - g_old
        self.H = self.update_fn(self.H, s, y)


class LbfgsMemory:
    """Bounded store of (s, y, rho) pairs, newest first. Pairs with
    non-positive or negligible curvature are discarded on arrival."""

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ValueError("memory capacity must be >= 1")
        self.capacity = capacity
        self._pairs: deque[tuple[Vector, Vector, float]] = deque(maxlen=capacity)

    def push(self, s: Vector, y: Vector) -> bool:
        sy = float(y @ s)
        if sy <= _CURVATURE_SKIP * float(np.linalg.norm(y)) * float(np.linalg.norm(s)):
            return False
        self._pairs.appendleft((s, y, 1.0 / sy))
        return True

    def clear(self) -> None:
        self._pairs.clear()

    def pairs(self) -> list[tuple[Vector, Vector, float]]:
        return list(self._pairs)

    def __len__(self) -> int:
        return len(self._pairs)


def lbfgs_direction(g: Vector, memory: LbfgsMemory) -> Vector:
    """Two-loop recursion: implicitly applies the limited-memory inverse
    approximation to -g, seeding with gamma = s'y / y'y from the newest pair
    (identity seed when the memory is empty)."""
    pairs = memory.pairs()
    q = g.copy()
    alphas = []
    for s, y, rho in pairs:  # newest to oldest
        a = rho * float(s @ q)
        alphas.append(a)
        q = q - a * y
    if pairs:
        s0, y0, _ = pairs[0]
        gamma = float(s0 @ y0) / float(y0 @ y0)
        q = gamma * q
    for (s, y, rho), a in zip(reversed(pairs), reversed(alphas)):
        b = rho * float(y @ q)
        q = q + (a - b) * s
    return -q


class _Lbfgs(EngineBase):
    def __init__(self, capacity: int):
        self.memory = LbfgsMemory(capacity)

    def direction(self, ctx, k, x, fval, g):
        d = lbfgs_direction(g, self.memory)
        if float(d @ g) >= 0.0:
            self.memory.clear()
            d = -g
        return d

    def update(self, x_old, g_old, out):
        self.memory.push(out.x_new - x_old, out.g_new - g_old)


def sr1(f, cfg: SolverConfig, x0) -> SolveReport:
    return run_descent_loop(f, cfg, x0, _DenseQuasiNewton("sr1"))


def dfp(f, cfg: SolverConfig, x0) -> SolveReport:
    return run_descent_loop(f, cfg, x0, _DenseQuasiNewton("dfp"))


def bfgs(f, cfg: SolverConfig, x0) -> SolveReport:
    return run_descent_loop(f, cfg, x0, _DenseQuasiNewton("bfgs"))


def lbfgs(f, cfg: SolverConfig, x0) -> SolveReport:
    capacity = int(cfg.extras.get("lbfgsMemory", 10))
    return run_descent_loop(f, cfg, x0, _Lbfgs(capacity))
