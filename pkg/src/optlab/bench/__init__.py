from optlab.bench.export import (
    dump_records,
    export_records,
    import_records,
    load_records,
    plot_data,
)
from optlab.bench.profiles import ProfileTable, performance_profile
from optlab.bench.records import (
    MEASURE_KINDS,
    ProblemSpec,
    RunRecord,
    parse_benchmark_config,
    run_matrix,
    run_single,
)

__all__ = [
    "dump_records",
    "export_records",
    "import_records",
    "load_records",
    "plot_data",
    "ProfileTable",
    "performance_profile",
    "MEASURE_KINDS",
    "ProblemSpec",
    "RunRecord",
    "parse_benchmark_config",
    "run_matrix",
    "run_single",
]
