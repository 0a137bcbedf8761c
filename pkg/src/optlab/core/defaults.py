"""Default stopping thresholds and the method -> line-search pairing table.

Default mode replaces whatever line-search setup the caller provided with the
row below for the chosen method; trust-region methods have no line search and
their rows carry only radius parameters.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

from optlab.core.types import LineSearchConfig, SolverConfig, StoppingCriteria
from optlab.errors import UnknownMethod

__all__ = ["DEFAULT_STOPPING", "DefaultPairing", "default_pairing", "resolve_config"]

DEFAULT_STOPPING = StoppingCriteria(max_iter=10000, epsilon=1e-6, work_prec=1e-16)


@dataclass(frozen=True)
class DefaultPairing:
    line_search: Optional[LineSearchConfig]
    extras: dict


def _ls(rule: str, **kw) -> LineSearchConfig:
    return LineSearchConfig(rule=rule, **kw)


_STRONG_WOLFE_CG = _ls("StrongWolfe", rho=1e-4, sigma=0.1)
_STRONG_WOLFE_QN = _ls("StrongWolfe", rho=1e-4, sigma=0.9)
_WOLFE_MODIFIED_NEWTON = _ls("Wolfe", rho=1e-4, sigma=0.9)
_TRUST_EXTRAS = {"trustRadius0": 1.0, "trustRadiusMax": 100.0, "eta": 1e-3}

_TABLE: dict[str, DefaultPairing] = {
    "GradientDescent": DefaultPairing(
        _ls("Backtracking", rho=1e-4, beta=0.5, t_init=1.0), {}
    ),
    "BarzilaiBorwein": DefaultPairing(
        _ls("NonMonotone", rho=1e-4, beta=0.5, t_init=1.0, big_m=10), {}
    ),
    "ScalarCorrection": DefaultPairing(
        _ls("NonMonotone", rho=1e-4, beta=0.5, t_init=1.0, big_m=10), {}
    ),
    "Newton": DefaultPairing(_ls("FixedStep", t_init=1.0), {}),
    "FletcherReeves": DefaultPairing(_STRONG_WOLFE_CG, {}),
    "PolakRibiere": DefaultPairing(_STRONG_WOLFE_CG, {}),
    "HestenesStiefel": DefaultPairing(_STRONG_WOLFE_CG, {}),
    "DaiYuan": DefaultPairing(_STRONG_WOLFE_CG, {}),
    "CG_DESCENT": DefaultPairing(_ls("ApproxWolfe", rho=0.1, sigma=0.9), {}),
    "GoldsteinPrice": DefaultPairing(_WOLFE_MODIFIED_NEWTON, {"eta": 0.2}),
    "Levenberg": DefaultPairing(_WOLFE_MODIFIED_NEWTON, {"lambda0": 1e-3}),
    "Marquardt": DefaultPairing(_WOLFE_MODIFIED_NEWTON, {"lambda0": 1e-3}),
    "SR1": DefaultPairing(_STRONG_WOLFE_QN, {}),
    # DFP needs a near-exact search (small sigma) to keep its inverse
    # approximation from degenerating on ill-conditioned valleys.
    "DFP": DefaultPairing(_ls("StrongWolfe", rho=1e-4, sigma=0.1), {}),
    "BFGS": DefaultPairing(_STRONG_WOLFE_QN, {}),
    "L-BFGS": DefaultPairing(_ls("MoreThuente", rho=1e-4, sigma=0.9), {"lbfgsMemory": 10}),
    "Dogleg": DefaultPairing(None, dict(_TRUST_EXTRAS)),
    "DoglegSR1": DefaultPairing(None, dict(_TRUST_EXTRAS)),
}


def default_pairing(method_name: str) -> DefaultPairing:
    """The default-mode row for a method: its line search and extras."""
    try:
        return _TABLE[method_name]
    except KeyError:
        raise UnknownMethod(f"no default pairing for method {method_name!r}") from None


def resolve_config(cfg: SolverConfig) -> SolverConfig:
    """Apply default-mode substitution; identity when default_mode is off."""
    if not cfg.default_mode:
        return cfg
    row = default_pairing(cfg.method_name)
    merged_extras = {**cfg.extras, **row.extras}
    line_search = row.line_search if row.line_search is not None else cfg.line_search
    return replace(cfg, line_search=line_search, extras=merged_extras)
