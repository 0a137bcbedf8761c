"""Batch execution of solver x problem matrices into flat run records."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from optlab.core.defaults import DEFAULT_STOPPING
from optlab.core.types import (
    LineSearchConfig,
    SolveReport,
    SolverConfig,
    StoppingCriteria,
)
from optlab.errors import ConfigError
from optlab.functions import registry as function_registry
from optlab.solvers.api import solve
from optlab.solvers.registry import get_method

__all__ = ["RunRecord", "ProblemSpec", "run_single", "run_matrix",
           "parse_benchmark_config"]

MEASURE_KINDS = ("iterations", "cpu", "evaluations")


@dataclass(frozen=True)
class RunRecord:
    """One solver-on-problem outcome with every comparison measure kept raw."""

    solver: str
    problem: str
    n: int
    iterations: int
    cpu_seconds: float
    n_value: int
    n_gradient: int
    n_hessian: int
    solved: bool
    reason: str

    def __post_init__(self):
        for field in ("iterations", "cpu_seconds", "n_value", "n_gradient", "n_hessian"):
            if getattr(self, field) < 0:
                raise ValueError(f"{field} must be nonnegative")

    @classmethod
    def from_report(cls, solver: str, problem: str, n: int, report: SolveReport) -> "RunRecord":
        # cpu is quantized here so exporting at 6 decimals round-trips exactly
        return cls(
            solver=solver,
            problem=problem,
            n=n,
            iterations=report.iterations,
            cpu_seconds=round(report.cpu_seconds, 6),
            n_value=report.counters.n_value,
            n_gradient=report.counters.n_gradient,
            n_hessian=report.counters.n_hessian,
            solved=report.solved,
            reason=report.termination_reason.value,
        )

    @property
    def evaluations(self) -> int:
        return self.n_value + self.n_gradient + self.n_hessian

    def to_dict(self) -> dict:
        return {
            "solver": self.solver,
            "problem": self.problem,
            "n": self.n,
            "iterations": self.iterations,
            "cpuSeconds": self.cpu_seconds,
            "nValue": self.n_value,
            "nGradient": self.n_gradient,
            "nHessian": self.n_hessian,
            "solved": self.solved,
            "reason": self.reason,
        }

    def measure(self, kind: str) -> float:
        if kind == "iterations":
            return float(self.iterations)
        if kind == "cpu":
            return self.cpu_seconds
        if kind == "evaluations":
            return float(self.evaluations)
        raise ValueError(f"unknown measure kind {kind!r}")


@dataclass(frozen=True)
class ProblemSpec:
    function: str
    n: int


def run_single(solver: str, problem: ProblemSpec,
               stopping: Optional[StoppingCriteria] = None) -> RunRecord:
    """One isolated solve under the solver's default pairing. Exceptions
    become solved=false records carrying the error class as the reason."""
    cfg = SolverConfig(
        method_name=solver,
        line_search=LineSearchConfig(),
        stopping=stopping if stopping is not None else DEFAULT_STOPPING,
        default_mode=True,
    )
    try:
        f = function_registry.make_objective(problem.function, problem.n)
        report = solve(f, cfg)
    except Exception as exc:
        return RunRecord(
            solver=solver,
            problem=problem.function,
            n=problem.n,
            iterations=0,
            cpu_seconds=0.0,
            n_value=0,
            n_gradient=0,
            n_hessian=0,
            solved=False,
            reason=type(exc).__name__,
        )
    return RunRecord.from_report(solver, problem.function, problem.n, report)


def run_matrix(solvers: list[str], problems: list[ProblemSpec],
               stopping: Optional[StoppingCriteria] = None,
               parallelism: int = 1) -> list[RunRecord]:
    """Every solver on every problem. Record order is the solver-major input
    order regardless of parallelism; per-run failures are data, not errors."""
    if parallelism < 1:
        raise ValueError("parallelism must be >= 1")
    for solver in solvers:
        get_method(solver)
    for problem in problems:
        spec = function_registry.get_spec(problem.function)
        if not function_registry.is_admissible(spec, problem.n):
            raise ConfigError(
                "problems", f"dimension {problem.n} not admissible for {problem.function!r}"
            )

    tasks = [(s, p) for s in solvers for p in problems]
    if parallelism == 1:
        return [run_single(s, p, stopping) for s, p in tasks]
    with ThreadPoolExecutor(max_workers=parallelism) as pool:
        futures = [pool.submit(run_single, s, p, stopping) for s, p in tasks]
        return [fut.result() for fut in futures]


def parse_benchmark_config(raw: dict) -> tuple[list[str], list[ProblemSpec], StoppingCriteria]:
    """Validate a benchmark matrix document: solver ids, problem/dimension
    pairs, optional stopping overrides."""
    if not isinstance(raw, dict):
        raise ConfigError("config", "expected a JSON object")
    solvers = raw.get("solvers")
    if not isinstance(solvers, list) or not solvers or not all(isinstance(s, str) for s in solvers):
        raise ConfigError("solvers", "expected a nonempty list of method names")
    problems_raw = raw.get("problems")
    if not isinstance(problems_raw, list) or not problems_raw:
        raise ConfigError("problems", "expected a nonempty list of {function, n} objects")
    problems = []
    for i, entry in enumerate(problems_raw):
        if not isinstance(entry, dict) or "function" not in entry or "n" not in entry:
            raise ConfigError(f"problems[{i}]", "expected an object with function and n")
        try:
            n = int(entry["n"])
        except (TypeError, ValueError):
            raise ConfigError(f"problems[{i}].n", "expected an integer") from None
        problems.append(ProblemSpec(str(entry["function"]), n))
    stopping_raw = raw.get("stopping", {})
    if not isinstance(stopping_raw, dict):
        raise ConfigError("stopping", "expected an object")
    stopping = StoppingCriteria(
        max_iter=int(stopping_raw.get("maxIterNum", DEFAULT_STOPPING.max_iter)),
        epsilon=float(stopping_raw.get("epsilon", DEFAULT_STOPPING.epsilon)),
        work_prec=float(stopping_raw.get("workPrec", DEFAULT_STOPPING.work_prec)),
    )
    return solvers, problems, stopping
