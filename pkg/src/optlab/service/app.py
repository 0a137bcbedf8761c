"""HTTP/JSON API: catalogs, default pairings, synchronous solves with full
traces, and background benchmark jobs. Also serves the built web UI.

Validation is delegated to the core config types so the API accepts exactly
what the library accepts; field-level failures come back as 400 bodies of
{"errors": [{"field", "message"}]}. Unsupported derivative orders are 422;
numerical failure is a normal 200 whose report carries the reason.
"""

from __future__ import annotations

import threading
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from typing import Optional

import numpy as np
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from optlab.bench import (
    MEASURE_KINDS,
    parse_benchmark_config,
    performance_profile,
    run_matrix,
)
from optlab.core.defaults import DEFAULT_STOPPING, default_pairing, resolve_config
from optlab.core.types import (
    LineSearchConfig,
    SolverConfig,
    StoppingCriteria,
)
from optlab.errors import (
    ConfigError,
    DimensionMismatch,
    UnknownFunction,
    UnknownMethod,
    UnsupportedDerivative,
)
from optlab.functions import registry as function_registry
from optlab.linesearch.rules import RULES, rule_parameters
from optlab.solvers.api import resolve_start, solve
from optlab.solvers.registry import methods_by_group

__all__ = ["create_app"]

SOLVE_TIME_LIMIT = 60.0  # seconds; larger budgets belong to the benchmark API
SOLVE_MAX_ITER = 10_000


class LineSearchModel(BaseModel):
    rule: str = "Backtracking"
    rho: float = 1e-4
    sigma: float = 0.9
    beta: float = 0.5
    tInit: float = 1.0
    bigM: int = 10

    def to_config(self) -> LineSearchConfig:
        return LineSearchConfig(
            rule=self.rule, rho=self.rho, sigma=self.sigma, beta=self.beta,
            t_init=self.tInit, big_m=self.bigM,
        )


class StoppingModel(BaseModel):
    maxIterNum: int = DEFAULT_STOPPING.max_iter
    epsilon: float = DEFAULT_STOPPING.epsilon
    workPrec: float = DEFAULT_STOPPING.work_prec

    def to_config(self) -> StoppingCriteria:
        return StoppingCriteria(
            max_iter=self.maxIterNum, epsilon=self.epsilon, work_prec=self.workPrec
        )


class SolveRequestModel(BaseModel):
    functionName: str
    dimension: int
    x0: Optional[list[float]] = None
    methodGroup: Optional[str] = None
    methodName: str
    defaultMode: bool = False
    lineSearch: Optional[LineSearchModel] = None
    stopping: Optional[StoppingModel] = None
    extras: dict[str, float] = {}


class BenchmarkRequestModel(BaseModel):
    solvers: list[str]
    problems: list[dict]
    stopping: Optional[dict] = None
    parallelism: int = 2


class ApiError(Exception):
    """Carries an HTTP status and field-level messages to the handler."""

    def __init__(self, status_code: int, field: str, message: str):
        self.status_code = status_code
        self.errors = [{"field": field, "message": message}]
        super().__init__(message)


class _JobStore:
    """Benchmark jobs on a bounded pool; status only moves forward."""

    def __init__(self, max_workers: int):
        self._pool = ThreadPoolExecutor(max_workers=max_workers)
        self._lock = threading.Lock()
        self._jobs: dict[str, dict] = {}

    def submit(self, solvers, problems, stopping, parallelism: int) -> str:
        job_id = uuid.uuid4().hex
        with self._lock:
            self._jobs[job_id] = {"status": "running"}
        self._pool.submit(self._run, job_id, solvers, problems, stopping, parallelism)
        return job_id

    def _run(self, job_id, solvers, problems, stopping, parallelism) -> None:
        try:
            records = run_matrix(solvers, problems, stopping, parallelism=parallelism)
            profiles = {
                kind: performance_profile(records, kind).to_dict()
                for kind in MEASURE_KINDS
            }
            result = {
                "status": "done",
                "records": [r.to_dict() for r in records],
                "profiles": profiles,
            }
        except Exception as exc:
            result = {"status": "failed", "error": f"{type(exc).__name__}: {exc}"}
        with self._lock:
            self._jobs[job_id] = result

    def get(self, job_id: str) -> Optional[dict]:
        with self._lock:
            job = self._jobs.get(job_id)
            return dict(job) if job is not None else None


def _pairing_document(method: str) -> dict:
    row = default_pairing(method)
    return {
        "method": method,
        "lineSearch": row.line_search.to_dict() if row.line_search else None,
        "extras": row.extras,
        "stopping": DEFAULT_STOPPING.to_dict(),
    }


def create_app(static_dir: Optional[str] = None, job_workers: int = 2) -> FastAPI:
    app = FastAPI(title="optlab service")
    jobs = _JobStore(max_workers=job_workers)

    @app.exception_handler(ApiError)
    async def _api_error(request: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status_code, content={"errors": exc.errors})

    @app.exception_handler(ConfigError)
    async def _config_error(request: Request, exc: ConfigError):
        return JSONResponse(
            status_code=400,
            content={"errors": [{"field": exc.field, "message": exc.message}]},
        )

    @app.exception_handler(RequestValidationError)
    async def _request_error(request: Request, exc: RequestValidationError):
        errors = [
            {
                "field": ".".join(str(p) for p in err["loc"] if p != "body"),
                "message": err["msg"],
            }
            for err in exc.errors()
        ]
        return JSONResponse(status_code=400, content={"errors": errors})

    @app.get("/api/functions")
    def list_functions():
        return [
            {
                "name": spec.name,
                "minDimension": spec.min_dimension,
                "dimensionConstraint": spec.dimension_constraint,
                "defaultDimension": spec.default_dimension,
                "supports": sorted(spec.supports),
            }
            for spec in function_registry.catalog()
        ]

    @app.get("/api/methods")
    def list_methods():
        return {
            group: [
                {
                    "name": info.name,
                    "requiredDerivative": info.required_derivative,
                    "usesLineSearch": info.uses_line_search,
                }
                for info in infos
            ]
            for group, infos in methods_by_group().items()
        }

    @app.get("/api/linesearches")
    def list_linesearches():
        return [
            {"name": name, "parameters": list(rule_parameters(name))}
            for name in sorted(RULES)
        ]

    @app.get("/api/defaults")
    def get_defaults(method: str):
        try:
            return _pairing_document(method)
        except UnknownMethod as exc:
            raise ApiError(404, "method", str(exc)) from None

    @app.get("/api/startpoint")
    def get_startpoint(function: str, n: int):
        try:
            x0 = function_registry.starting_point(function, n)
        except UnknownFunction as exc:
            raise ApiError(400, "function", str(exc)) from None
        except DimensionMismatch as exc:
            raise ApiError(400, "n", str(exc)) from None
        return {"function": function, "n": n, "x0": [float(v) for v in x0]}

    @app.post("/api/solve")
    def post_solve(req: SolveRequestModel):
        if req.stopping is not None and req.stopping.maxIterNum > SOLVE_MAX_ITER:
            raise ApiError(
                400, "maxIterNum",
                f"synchronous solves are capped at {SOLVE_MAX_ITER} iterations; "
                "use the benchmark API for larger budgets",
            )
        try:
            f = function_registry.make_objective(req.functionName, req.dimension)
        except UnknownFunction as exc:
            raise ApiError(400, "functionName", str(exc)) from None
        except DimensionMismatch as exc:
            raise ApiError(400, "dimension", str(exc)) from None

        line_search = (
            LineSearchConfig()
            if req.defaultMode or req.lineSearch is None
            else req.lineSearch.to_config()
        )
        stopping = (
            DEFAULT_STOPPING if req.stopping is None else req.stopping.to_config()
        )
        cfg = SolverConfig(
            method_name=req.methodName,
            method_group=req.methodGroup,
            line_search=line_search,
            stopping=stopping,
            default_mode=req.defaultMode,
            x0=np.asarray(req.x0, dtype=float) if req.x0 is not None else None,
            extras=dict(req.extras),
            time_limit=SOLVE_TIME_LIMIT,
        )
        try:
            x0 = resolve_start(f, cfg)
            effective = replace(resolve_config(cfg), x0=x0)
            report = solve(f, effective)
        except UnknownMethod as exc:
            raise ApiError(400, "methodName", str(exc)) from None
        except UnsupportedDerivative as exc:
            raise ApiError(422, "methodName", str(exc)) from None

        return {
            "report": report.to_dict(),
            "effectiveConfig": {
                "functionName": req.functionName,
                "dimension": req.dimension,
                "x0": [float(v) for v in x0],
                "methodGroup": req.methodGroup,
                "methodName": effective.method_name,
                "defaultMode": effective.default_mode,
                "lineSearch": effective.line_search.to_dict(),
                "stopping": effective.stopping.to_dict(),
                "extras": effective.extras,
            },
        }

    @app.post("/api/benchmark")
    def post_benchmark(req: BenchmarkRequestModel):
        solvers, problems, stopping = parse_benchmark_config(
            {"solvers": req.solvers, "problems": req.problems,
             "stopping": req.stopping or {}}
        )
        if req.parallelism < 1:
            raise ApiError(400, "parallelism", "must be >= 1")
        job_id = jobs.submit(solvers, problems, stopping, req.parallelism)
        return {"jobId": job_id, "status": "running"}

    @app.get("/api/benchmark/{job_id}")
    def get_benchmark(job_id: str):
        job = jobs.get(job_id)
        if job is None:
            raise ApiError(404, "jobId", f"no benchmark job {job_id!r}")
        return job

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
