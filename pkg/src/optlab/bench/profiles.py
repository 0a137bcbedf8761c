"""Dolan-More performance profiles over run records.

For each problem the ratio r = measure / best-solved-measure; unsolved runs
get r = infinity and never count at any finite tau. The profile of a solver
is the fraction of problems with r <= tau.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from optlab.bench.records import MEASURE_KINDS, RunRecord
from optlab.errors import DegenerateMeasure

__all__ = ["ProfileTable", "performance_profile"]


@dataclass(frozen=True)
class ProfileTable:
    """Step functions rho_s(tau) sampled exactly at the ratio breakpoints."""

    measure: str
    taus: list[float]
    curves: dict[str, list[float]]

    @property
    def solvers(self) -> list[str]:
        return list(self.curves)

    def to_dict(self) -> dict:
        return {"measure": self.measure, "taus": self.taus, "curves": self.curves}


def _effective_measure(record: RunRecord, kind: str) -> float:
    value = record.measure(kind)
    if value < 0:
        raise DegenerateMeasure(f"negative {kind} measure for {record.solver}")
    if value == 0.0:
        return float(np.finfo(float).eps)  # zero-cost solve: keep ratios finite
    return value


def performance_profile(records: list[RunRecord], measure: str) -> ProfileTable:
    if measure not in MEASURE_KINDS:
        raise ValueError(f"measure must be one of {MEASURE_KINDS}")
    if not records:
        raise ValueError("no records")

    solvers: list[str] = []
    problems: list[tuple[str, int]] = []
    by_cell: dict[tuple[str, int], dict[str, RunRecord]] = {}
    for rec in records:
        key = (rec.problem, rec.n)
        if key not in by_cell:
            by_cell[key] = {}
            problems.append(key)
        by_cell[key][rec.solver] = rec
        if rec.solver not in solvers:
            solvers.append(rec.solver)

    ratios: dict[str, list[float]] = {s: [] for s in solvers}
    for key in problems:
        cell = by_cell[key]
        solved_measures = [
            _effective_measure(rec, measure) for rec in cell.values() if rec.solved
        ]
        best = min(solved_measures) if solved_measures else math.inf
        for s in solvers:
            rec = cell.get(s)
            if rec is None or not rec.solved:
                ratios[s].append(math.inf)
            else:
                ratios[s].append(_effective_measure(rec, measure) / best)

    finite = sorted({r for rs in ratios.values() for r in rs if math.isfinite(r)})
    taus = sorted({1.0, *finite})

    n_problems = len(problems)
    curves = {
        s: [sum(1 for r in rs if r <= tau) / n_problems for tau in taus]
        for s, rs in ratios.items()
    }
    return ProfileTable(measure=measure, taus=taus, curves=curves)
