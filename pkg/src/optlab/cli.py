"""Command-line entry point: single solves, benchmark matrices, and catalog
listings with machine-readable output.

Exit codes: 0 converged (gradient tolerance or work precision), 1 usage or
configuration error, 2 iteration budget exhausted, 3 line-search or numerical
failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from optlab.bench import (
    MEASURE_KINDS,
    export_records,
    parse_benchmark_config,
    performance_profile,
    run_matrix,
)
from optlab.core.defaults import DEFAULT_STOPPING, default_pairing
from optlab.core.types import (
    SOLVED_REASONS,
    LineSearchConfig,
    SolverConfig,
    StoppingCriteria,
    TerminationReason,
)
from optlab.errors import ConfigError, OptlabError
from optlab.functions import registry as function_registry
from optlab.linesearch.rules import RULES
from optlab.solvers.api import solve
from optlab.solvers.registry import methods_by_group, get_method

__all__ = ["main", "build_parser"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BUDGET = 2
EXIT_FAILED = 3

_XMIN_SHOWN = 10


class _Parser(argparse.ArgumentParser):
    """argparse flavor whose usage failures exit 1, keeping 2 for budget."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="optlab", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="run one method on one function")
    p_solve.add_argument("--function", required=True)
    p_solve.add_argument("--method", required=True)
    p_solve.add_argument("--n", type=int)
    p_solve.add_argument("--x0", help="comma-separated coordinates")
    p_solve.add_argument("--line-search", dest="line_search", choices=sorted(RULES))
    p_solve.add_argument("--rho", type=float)
    p_solve.add_argument("--sigma", type=float)
    p_solve.add_argument("--beta", type=float)
    p_solve.add_argument("--t-init", dest="t_init", type=float)
    p_solve.add_argument("--big-m", dest="big_m", type=int)
    p_solve.add_argument("--max-iter", dest="max_iter", type=int)
    p_solve.add_argument("--epsilon", type=float)
    p_solve.add_argument("--work-prec", dest="work_prec", type=float)
    p_solve.add_argument("--default-mode", action="store_true")
    p_solve.add_argument("--output", choices=("text", "structured"), default="text")
    p_solve.add_argument("--trace", help="write iteration,f,gnorm CSV here")
    p_solve.set_defaults(handler=cmd_solve)

    p_bench = sub.add_parser("bench", help="run a solver x problem matrix")
    p_bench.add_argument("config", help="JSON file: solvers, problems, stopping")
    p_bench.add_argument("--out", default=".", help="output directory")
    p_bench.add_argument("--parallel", type=int, default=1)
    p_bench.set_defaults(handler=cmd_bench)

    p_list = sub.add_parser("list", help="print a registry")
    p_list.add_argument("kind", choices=("functions", "methods", "linesearches"))
    p_list.set_defaults(handler=cmd_list)

    p_defaults = sub.add_parser("defaults", help="print a method's default pairing")
    p_defaults.add_argument("method")
    p_defaults.set_defaults(handler=cmd_defaults)

    return parser


def _exit_code(reason: TerminationReason) -> int:
    if reason in SOLVED_REASONS:
        return EXIT_OK
    if reason is TerminationReason.MAX_ITERATIONS:
        return EXIT_BUDGET
    return EXIT_FAILED


_LS_FLAG_FIELDS = ("line_search", "rho", "sigma", "beta", "t_init", "big_m")


def _line_search_from_flags(args) -> LineSearchConfig:
    overrides = {}
    if args.line_search is not None:
        overrides["rule"] = args.line_search
    for name in ("rho", "sigma", "beta", "t_init", "big_m"):
        value = getattr(args, name)
        if value is not None:
            overrides[name] = value
    return LineSearchConfig(**overrides)


def _stopping_from_flags(args) -> StoppingCriteria:
    return StoppingCriteria(
        max_iter=args.max_iter if args.max_iter is not None else DEFAULT_STOPPING.max_iter,
        epsilon=args.epsilon if args.epsilon is not None else DEFAULT_STOPPING.epsilon,
        work_prec=args.work_prec if args.work_prec is not None else DEFAULT_STOPPING.work_prec,
    )


def _parse_x0(text: str) -> np.ndarray:
    try:
        return np.array([float(tok) for tok in text.split(",")], dtype=float)
    except ValueError:
        raise ConfigError("x0", "expected a comma-separated list of numbers") from None


def _resolve_dimension(args, info, spec) -> int:
    if args.n is not None:
        return args.n
    if args.x0 is not None:
        return _parse_x0(args.x0).size
    base = 100 if info.required_derivative == 1 else 10
    return function_registry.nearest_admissible(spec, base)


def _format_xmin(xmin) -> str:
    shown = ", ".join(format(v, ".10g") for v in xmin[:_XMIN_SHOWN])
    if xmin.size > _XMIN_SHOWN:
        shown += f", ... ({xmin.size - _XMIN_SHOWN} more)"
    return f"({shown})"


def _write_trace(path: str, trace) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["iteration", "f", "gnorm"])
        rows = zip(trace.function_values, trace.gradient_norms)
        for i, (fval, gnorm) in enumerate(rows):
            writer.writerow([i, repr(fval), repr(gnorm)])


def cmd_solve(args) -> int:
    if args.default_mode:
        explicit = [n for n in _LS_FLAG_FIELDS if getattr(args, n) is not None]
        if explicit:
            flags = ", ".join("--" + n.replace("_", "-") for n in explicit)
            raise ConfigError("lineSearch", f"--default-mode conflicts with {flags}")

    info = get_method(args.method)
    spec = function_registry.get_spec(args.function)
    n = _resolve_dimension(args, info, spec)
    f = function_registry.make_objective(args.function, n)

    cfg = SolverConfig(
        method_name=args.method,
        line_search=_line_search_from_flags(args),
        stopping=_stopping_from_flags(args),
        default_mode=args.default_mode,
        x0=_parse_x0(args.x0) if args.x0 is not None else None,
    )
    report = solve(f, cfg)

    if args.trace:
        _write_trace(args.trace, report.trace)

    if args.output == "structured":
        print(json.dumps(report.to_dict(), indent=2))
    else:
        c = report.counters
        print(f"Fmin:         {report.fmin:.10e}")
        print(f"Xmin:         {_format_xmin(report.xmin)}")
        print(f"GradientNorm: {report.gradient_norm:.6e}")
        print(f"Iterations:   {report.iterations}")
        print(f"CpuSeconds:   {report.cpu_seconds:.6f}")
        print(f"Evaluations:  value={c.n_value} gradient={c.n_gradient} hessian={c.n_hessian}")
        print(f"Termination:  {report.termination_reason.value}")
    return _exit_code(report.termination_reason)


def _write_profile(path: Path, table) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["tau", *table.solvers])
        for i, tau in enumerate(table.taus):
            writer.writerow(
                [repr(tau), *(repr(table.curves[s][i]) for s in table.solvers)]
            )


def cmd_bench(args) -> int:
    try:
        raw = json.loads(Path(args.config).read_text(encoding="utf-8"))
    except OSError as exc:
        print(f"error: cannot read {args.config}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except json.JSONDecodeError as exc:
        print(f"error: {args.config} is not valid JSON: {exc}", file=sys.stderr)
        return EXIT_USAGE
    solvers, problems, stopping = parse_benchmark_config(raw)
    records = run_matrix(solvers, problems, stopping, parallelism=args.parallel)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    export_records(records, out / "records.csv", "csv")
    for kind in MEASURE_KINDS:
        _write_profile(out / f"profile_{kind}.csv", performance_profile(records, kind))
    failed = sum(1 for r in records if not r.solved)
    print(f"{len(records)} runs ({failed} unsolved) -> {out / 'records.csv'}")
    return EXIT_OK


def cmd_list(args) -> int:
    if args.kind == "functions":
        for spec in function_registry.catalog():
            print(spec.name)
    elif args.kind == "linesearches":
        for rule in sorted(RULES):
            print(rule)
    else:
        for group, infos in methods_by_group().items():
            print(f"{group}:")
            for info in sorted(infos, key=lambda m: m.name):
                ls = "yes" if info.uses_line_search else "no"
                print(f"  {info.name}  derivative-order={info.required_derivative}"
                      f"  line-search={ls}")
    return EXIT_OK


def cmd_defaults(args) -> int:
    row = default_pairing(args.method)
    doc = {
        "method": args.method,
        "lineSearch": row.line_search.to_dict() if row.line_search else None,
        "extras": row.extras,
        "stopping": DEFAULT_STOPPING.to_dict(),
    }
    print(json.dumps(doc, indent=2))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.handler(args)
    except OptlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
