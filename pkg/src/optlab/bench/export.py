"""Record serialization (CSV and JSON) and plot-series extraction."""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Optional, Sequence

from optlab.bench.records import RunRecord
from optlab.errors import EmptyWindow

__all__ = ["dump_records", "load_records", "export_records", "import_records",
           "plot_data"]

_COLUMNS = ("solver", "problem", "n", "iterations", "cpu_seconds",
            "n_value", "n_gradient", "n_hessian", "solved", "reason")

_LOG_FLOOR = 1e-300


def _record_row(rec: RunRecord) -> dict:
    return {
        "solver": rec.solver,
        "problem": rec.problem,
        "n": rec.n,
        "iterations": rec.iterations,
        "cpu_seconds": f"{rec.cpu_seconds:.6f}",
        "n_value": rec.n_value,
        "n_gradient": rec.n_gradient,
        "n_hessian": rec.n_hessian,
        "solved": "true" if rec.solved else "false",
        "reason": rec.reason,
    }


def _row_record(row: dict) -> RunRecord:
    return RunRecord(
        solver=row["solver"],
        problem=row["problem"],
        n=int(row["n"]),
        iterations=int(row["iterations"]),
        cpu_seconds=float(row["cpu_seconds"]),
        n_value=int(row["n_value"]),
        n_gradient=int(row["n_gradient"]),
        n_hessian=int(row["n_hessian"]),
        solved=str(row["solved"]).lower() == "true",
        reason=row["reason"],
    )


def dump_records(records: Sequence[RunRecord], fmt: str = "csv") -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for rec in records:
            writer.writerow(_record_row(rec))
        return buf.getvalue()
    if fmt == "structured-text":
        return json.dumps([_record_row(rec) for rec in records], indent=2) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def load_records(text: str, fmt: str = "csv") -> list[RunRecord]:
    if fmt == "csv":
        return [_row_record(row) for row in csv.DictReader(io.StringIO(text))]
    if fmt == "structured-text":
        return [_row_record(row) for row in json.loads(text)]
    raise ValueError(f"unknown format {fmt!r}")


def export_records(records: Sequence[RunRecord], path, fmt: str = "csv") -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dump_records(records, fmt))


def import_records(path, fmt: str = "csv") -> list[RunRecord]:
    with open(path, "r", encoding="utf-8") as handle:
        return load_records(handle.read(), fmt)


def plot_data(values: Sequence[float], log_scale: bool = False,
              window: Optional[tuple[int, int]] = None) -> list[tuple[int, float]]:
    """Plot series of (iteration, value) pairs over an inclusive iteration
    window. Log scale maps v to log10(max(v, 1e-300)) so zeros and negatives
    floor at -300 instead of blowing up."""
    if window is None:
        lo, hi = 0, len(values) - 1
    else:
        lo, hi = window
        if lo < 0 or hi > len(values):
            raise ValueError("window out of bounds")
    hi = min(hi, len(values) - 1)
    if lo > hi:
        raise EmptyWindow(f"window [{lo}, {hi}] selects no iterations")
    series = []
    for i in range(lo, hi + 1):
        v = float(values[i])
        if log_scale:
            v = math.log10(max(v, _LOG_FLOOR))
        series.append((i, v))
    if not series:
        raise EmptyWindow("empty trace")
    return series
