"""Support types for line searches: the memoized one-dimensional restriction
of the objective along a ray, the accepted-step outcome, and the history
window consumed by nonmonotone and step-carrying rules.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

import numpy as np

from optlab.core.evaluation import ObjectiveFunction, evaluate
from optlab.core.types import (
    EvalCounters,
    Vector,
    WANT_GRADIENT,
    WANT_VALUE,
)

__all__ = ["LineSearchOutcome", "HistoryWindow", "Restriction"]


@dataclass(frozen=True, eq=False)
class LineSearchOutcome:
    """Accepted step: x_new = x + t*d exactly, with f and g evaluated there."""

    t: float
    x_new: Vector
    f_new: float
    g_new: Vector
    counters: EvalCounters  # evaluations spent by the search itself


class HistoryWindow:
    """Recent accepted function values, most recent first, plus the last
    accepted step length. Capacity bounds the nonmonotone reference window."""

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ValueError("window capacity must be >= 1")
        self.capacity = capacity
        self._values: deque[float] = deque(maxlen=capacity)
        self.prev_t: Optional[float] = None

    def push(self, f: float) -> None:
        self._values.appendleft(float(f))

    def values(self) -> list[float]:
        return list(self._values)

    def reference_max(self) -> float:
        if not self._values:
            raise ValueError("history window is empty")
        return max(self._values)

    def current(self) -> Optional[float]:
        return self._values[0] if self._values else None

    def previous(self) -> Optional[float]:
        return self._values[1] if len(self._values) >= 2 else None

    def __len__(self) -> int:
        return len(self._values)


class Restriction:
    """phi(t) = f(x + t*d) with memoized, counted evaluations.

    phi(0) and phi'(0) are seeded from the caller's current point, so a rule
    never re-pays for them. Every distinct t is evaluated at most once per
    requested object; the delta counter is what the accepted outcome reports.
    """

    def __init__(
        self,
        f: ObjectiveFunction,
        x: Vector,
        fval: float,
        g: Vector,
        d: Vector,
    ):
        self.f = f
        self.x = np.asarray(x, dtype=float)
        self.d = np.asarray(d, dtype=float)
        self.delta = EvalCounters()
        self.phi0 = float(fval)
        self.dphi0 = float(g @ self.d)
        self._memo: dict[float, list] = {0.0: [self.phi0, np.asarray(g, dtype=float)]}
        self.n_trials = 0  # distinct value evaluations beyond t=0

    def point(self, t: float) -> Vector:
        return self.x + t * self.d

    def _entry(self, t: float) -> list:
        return self._memo.setdefault(float(t), [None, None])

    def phi(self, t: float) -> float:
        e = self._entry(t)
        if e[0] is None:
            e[0] = evaluate(self.f, self.point(t), WANT_VALUE, self.delta).value
            self.n_trials += 1
        return e[0]

    def grad(self, t: float) -> Vector:
        e = self._entry(t)
        if e[1] is None:
            e[1] = evaluate(self.f, self.point(t), WANT_GRADIENT, self.delta).gradient
        return e[1]

    def slope(self, t: float) -> float:
        return float(self.grad(t) @ self.d)

    def outcome(self, t: float) -> LineSearchOutcome:
        f_new = self.phi(t)
        g_new = self.grad(t)
        return LineSearchOutcome(
            t=float(t),
            x_new=self.point(t),
            f_new=f_new,
            g_new=g_new,
            counters=self.delta.copy(),
        )
