from optlab.solvers.api import resolve_start, solve
from optlab.solvers.cg import CG_VARIANTS, cg_beta, conjugate_gradient
from optlab.solvers.driver import DirectionEngine, RunContext, run_descent_loop
from optlab.solvers.gradient import (
    barzilai_borwein,
    bb_trial_step,
    gradient_descent,
    scalar_correction,
    sc_trial_step,
)
from optlab.solvers.linalg import solve_symmetric
from optlab.solvers.newton import (
    damped_direction,
    goldstein_price,
    goldstein_price_direction,
    levenberg,
    marquardt,
    newton,
)
from optlab.solvers.quasinewton import (
    LbfgsMemory,
    bfgs,
    bfgs_update,
    dfp,
    dfp_update,
    lbfgs,
    lbfgs_direction,
    sr1,
    sr1_update,
)
from optlab.solvers.registry import (
    METHOD_GROUPS,
    MethodInfo,
    get_method,
    method_names,
    methods,
    methods_by_group,
)
from optlab.solvers.trustregion import (
    TrustRegionLoop,
    dogleg,
    dogleg_sr1,
    dogleg_step,
    model_value,
)

__all__ = [
    "solve",
    "resolve_start",
    "CG_VARIANTS",
    "cg_beta",
    "conjugate_gradient",
    "DirectionEngine",
    "RunContext",
    "run_descent_loop",
    "barzilai_borwein",
    "bb_trial_step",
    "gradient_descent",
    "scalar_correction",
    "sc_trial_step",
    "solve_symmetric",
    "damped_direction",
    "goldstein_price",
    "goldstein_price_direction",
    "levenberg",
    "marquardt",
    "newton",
    "LbfgsMemory",
    "bfgs",
    "bfgs_update",
    "dfp",
    "dfp_update",
    "lbfgs",
    "lbfgs_direction",
    "sr1",
    "sr1_update",
    "METHOD_GROUPS",
    "MethodInfo",
    "get_method",
    "method_names",
    "methods",
    "methods_by_group",
    "TrustRegionLoop",
    "dogleg",
    "dogleg_sr1",
    "dogleg_step",
    "model_value",
]
