"""Step-size rules.

Every rule takes the memoized restriction, the effective config, the history
window, and an optional externally supplied starting step, and returns the
accepted t. run_line_search wraps this into a LineSearchOutcome whose x/f/g
are evaluated at exactly the returned t.
"""

from __future__ import annotations

import math
from typing import Optional

from optlab.core.evaluation import ObjectiveFunction
from optlab.core.types import EvalCounters, LineSearchConfig, Vector
from optlab.errors import (
    LineSearchFailure,
    NotDescentDirection,
    RoundingStall,
    UnknownLineSearch,
)
from optlab.linesearch.base import HistoryWindow, LineSearchOutcome, Restriction

__all__ = ["RULES", "run_line_search", "rule_parameters"]

_T_FLOOR = 1e-20
_T_CEILING = 1e10
_MAX_BACKTRACKS = 60
_MAX_EXPANSIONS = 50
_MAX_ZOOM = 50
_MAX_BISECTIONS = 100
_MAX_DOUBLINGS = 60
_MAX_SECANT = 50
_MAX_MT_TRIALS = 50
_MT_STPMIN = 1e-20
_MT_STPMAX = 1e20
_MT_XTOL = 1e-14


def _require_descent(r: Restriction) -> None:
    if r.dphi0 >= 0:
        raise NotDescentDirection(
            f"directional derivative {r.dphi0:.3e} is nonnegative"
        )


def _start(cfg, window, t_start, inherit=False) -> float:
    if t_start is not None:
        return float(t_start)
    if inherit and window is not None and window.prev_t:
        return float(window.prev_t)
    return cfg.t_init


def fixed_step(r, cfg, window, t_start) -> float:
    """Constant step; evaluates f and g at the stepped point, no conditions."""
    return _start(cfg, window, t_start)


def corr_prev_iter(r, cfg, window, t_start) -> float:
    """Carry the previous step; halve until strict decrease."""
    t = _start(cfg, window, t_start, inherit=True)
    while r.phi(t) >= r.phi0:
        t *= 0.5
        if t < _T_FLOOR:
            raise LineSearchFailure("step underflow while seeking decrease")
    return t


def corr_prev_two_iter(r, cfg, window, t_start) -> float:
    """Carry the previous step; grow by 1.2 after two consecutive decreases,
    halve to repair a non-decrease, otherwise keep the step unchanged."""
    t = _start(cfg, window, t_start, inherit=True)
    f_curr = r.phi0
    f_before = window.previous() if window is not None else None
    phi_t = r.phi(t)
    if phi_t < f_curr and f_before is not None and f_curr < f_before:
        t *= 1.2
        r.phi(t)  # accepted without a re-check
        return t
    if phi_t >= f_curr:
        while r.phi(t) >= f_curr:
            t *= 0.5
            if t < _T_FLOOR:
                raise LineSearchFailure("step underflow while seeking decrease")
    return t


def _armijo_ok(r, cfg, t, phi_t) -> bool:
    return phi_t <= r.phi0 + cfg.rho * t * r.dphi0


def backtracking(r, cfg, window, t_start) -> float:
    """Smallest l >= 0 with the sufficient-decrease inequality at beta^l * t."""
    _require_descent(r)
    t = _start(cfg, window, t_start)
    for _ in range(_MAX_BACKTRACKS + 1):
        if _armijo_ok(r, cfg, t, r.phi(t)):
            return t
        t *= cfg.beta
    raise LineSearchFailure(f"no sufficient decrease within {_MAX_BACKTRACKS} reductions")


def armijo_interpolation(r, cfg, window, t_start) -> float:
    """Sufficient decrease with quadratic-then-cubic interpolation, each
    proposal safeguarded into [0.1*t, 0.5*t] of the current trial."""
    _require_descent(r)
    phi0, dphi0 = r.phi0, r.dphi0
    t = _start(cfg, window, t_start)
    phi_t = r.phi(t)
    if _armijo_ok(r, cfg, t, phi_t):
        return t
    t_old = phi_old = None
    for _ in range(_MAX_BACKTRACKS):
        if t_old is None:
            denom = 2.0 * (phi_t - phi0 - dphi0 * t)
            cand = -dphi0 * t * t / denom if denom > 0 else 0.5 * t
        else:
            cand = _cubic_min(phi0, dphi0, t_old, phi_old, t, phi_t)
            if cand is None:
                cand = 0.5 * t
        cand = min(max(cand, 0.1 * t), 0.5 * t)
        t_old, phi_old = t, phi_t
        t = cand
        phi_t = r.phi(t)
        if _armijo_ok(r, cfg, t, phi_t):
            return t
        if t < _T_FLOOR:
            break
    raise LineSearchFailure("interpolated backtracking exhausted its budget")


def _cubic_min(phi0, dphi0, t0, f0, t1, f1) -> Optional[float]:
    """Minimizer of the cubic through (0, phi0) with slope dphi0 and the two
    trial pairs; None when the fit is degenerate."""
    denom = t0 * t0 * t1 * t1 * (t1 - t0)
    if denom == 0:
        return None
    r0 = f0 - phi0 - dphi0 * t0
    r1 = f1 - phi0 - dphi0 * t1
    a = (t0 * t0 * r1 - t1 * t1 * r0) / denom
    b = (-(t0**3) * r1 + t1**3 * r0) / denom
    if a == 0:
        if b == 0:
            return None
        return -dphi0 / (2.0 * b)
    disc = b * b - 3.0 * a * dphi0
    if disc < 0:
        return None
    cand = (-b + math.sqrt(disc)) / (3.0 * a)
    return cand if math.isfinite(cand) else None


def goldstein(r, cfg, window, t_start) -> float:
    """Two-sided decrease bounds; grow an initial bracket, then bisect."""
    _require_descent(r)
    phi0, dphi0, rho = r.phi0, r.dphi0, cfg.rho

    def not_too_long(t):  # upper bound on f
        return r.phi(t) <= phi0 + rho * t * dphi0

    def not_too_short(t):  # lower bound on f
        return r.phi(t) >= phi0 + (1.0 - rho) * t * dphi0

    lo = 0.0
    t = _start(cfg, window, t_start)
    hi = None
    for _ in range(_MAX_DOUBLINGS):
        if not not_too_long(t):
            hi = t
            break
        if not_too_short(t):
            return t
        lo = t
        t *= 2.0
        if t > _T_CEILING:
            raise LineSearchFailure("bracket growth exceeded the step ceiling")
    if hi is None:
        raise LineSearchFailure("no upper bracket endpoint found")
    for _ in range(_MAX_BISECTIONS):
        mid = 0.5 * (lo + hi)
        if not not_too_long(mid):
            hi = mid
        elif not not_too_short(mid):
            lo = mid
        else:
            return mid
    raise LineSearchFailure(f"no acceptable step within {_MAX_BISECTIONS} bisections")


def _quadratic_interp(lo, phi_lo, dphi_lo, hi, phi_hi) -> Optional[float]:
    """Minimizer of the quadratic through (lo, phi_lo) with slope dphi_lo and
    (hi, phi_hi); None when the fit has no interior minimum."""
    dt = hi - lo
    denom = 2.0 * (phi_hi - phi_lo - dphi_lo * dt)
    if denom == 0 or not math.isfinite(denom):
        return None
    cand = lo - dphi_lo * dt * dt / denom
    if not math.isfinite(cand):
        return None
    return cand


def _zoom(r, cfg, strong, lo, hi) -> float:
    phi0, dphi0 = r.phi0, r.dphi0

    def curvature_ok(dp):
        if strong:
            return abs(dp) <= cfg.sigma * abs(dphi0)
        return dp >= cfg.sigma * dphi0

    for _ in range(_MAX_ZOOM):
        phi_lo = r.phi(lo)
        dphi_lo = r.slope(lo)
        phi_hi = r.phi(hi)
        a, b = (lo, hi) if lo < hi else (hi, lo)
        width = b - a
        cand = _quadratic_interp(lo, phi_lo, dphi_lo, hi, phi_hi)
        margin = 0.05 * width
        if cand is None or not (a + margin <= cand <= b - margin):
            cand = 0.5 * (a + b)
        phi_c = r.phi(cand)
        if phi_c > phi0 + cfg.rho * cand * dphi0 or phi_c >= phi_lo:
            hi = cand
        else:
            dp = r.slope(cand)
            if curvature_ok(dp):
                return cand
            if dp * (hi - lo) >= 0:
                hi = lo
            lo = cand
        if width <= _MT_XTOL * max(1.0, b):
            raise RoundingStall("zoom interval collapsed")
    raise LineSearchFailure(f"no acceptable step within {_MAX_ZOOM} zoom steps")


def _wolfe(r, cfg, window, t_start, strong) -> float:
    """Bracket-then-zoom search for the (strong) curvature pair."""
    _require_descent(r)
    phi0, dphi0 = r.phi0, r.dphi0

    def curvature_ok(dp):
        if strong:
            return abs(dp) <= cfg.sigma * abs(dphi0)
        return dp >= cfg.sigma * dphi0

    t_prev, phi_prev = 0.0, phi0
    t = _start(cfg, window, t_start)
    for i in range(_MAX_EXPANSIONS):
        phi_t = r.phi(t)
        if phi_t > phi0 + cfg.rho * t * dphi0 or (i > 0 and phi_t >= phi_prev):
            return _zoom(r, cfg, strong, t_prev, t)
        dp = r.slope(t)
        if curvature_ok(dp):
            return t
        if dp >= 0:
            return _zoom(r, cfg, strong, t, t_prev)
        t_prev, phi_prev = t, phi_t
        t *= 2.0
        if t > _T_CEILING:
            raise LineSearchFailure("bracket expansion exceeded the step ceiling")
    raise LineSearchFailure(f"no bracket within {_MAX_EXPANSIONS} expansions")


def wolfe(r, cfg, window, t_start) -> float:
    return _wolfe(r, cfg, window, t_start, strong=False)


def strong_wolfe(r, cfg, window, t_start) -> float:
    return _wolfe(r, cfg, window, t_start, strong=True)


def approx_wolfe(r, cfg, window, t_start) -> float:
    """Accept when either the standard pair (sufficient decrease + weak
    curvature) or the approximate slope pair holds; secant interval updates."""
    _require_descent(r)
    phi0, dphi0 = r.phi0, r.dphi0
    rho, sigma = cfg.rho, cfg.sigma

    def acceptable(t):
        phi_t = r.phi(t)
        dp = r.slope(t)
        standard = phi_t <= phi0 + rho * t * dphi0 and dp >= sigma * dphi0
        approx = (2.0 * rho - 1.0) * dphi0 >= dp >= sigma * dphi0
        return standard or approx

    t = _start(cfg, window, t_start)
    if acceptable(t):
        return t
    a, b = 0.0, None
    if r.slope(t) >= 0:
        b = t
    else:
        a = t
        for _ in range(_MAX_EXPANSIONS):
            t *= 2.0
            if t > _T_CEILING:
                raise LineSearchFailure("bracket expansion exceeded the step ceiling")
            if acceptable(t):
                return t
            if r.slope(t) >= 0:
                b = t
                break
            a = t
        if b is None:
            raise LineSearchFailure("no opposite-slope endpoint found")
    def shrink(t):
        """Move one endpoint to t, keeping slope(a) < 0 <= slope(b)."""
        nonlocal a, b
        if r.slope(t) >= 0:
            b = t
        else:
            a = t

    width = b - a
    for _ in range(_MAX_SECANT):
        da, db = r.slope(a), r.slope(b)
        denom = db - da
        cand = (a * db - b * da) / denom if abs(denom) > 1e-300 else 0.5 * (a + b)
        if not (a < cand < b):
            cand = 0.5 * (a + b)
        if acceptable(cand):
            return cand
        shrink(cand)
        if b - a > 0.66 * width:
            # secant stagnated against one endpoint; bisect to force progress
            mid = 0.5 * (a + b)
            if acceptable(mid):
                return mid
            shrink(mid)
        width = b - a
    raise LineSearchFailure(f"no acceptable step within {_MAX_SECANT} secant steps")


def nonmonotone(r, cfg, window, t_start) -> float:
    """Sufficient decrease measured against the window maximum of recent f."""
    _require_descent(r)
    if window is not None and len(window) > 0:
        f_ref = window.reference_max()
    else:
        f_ref = r.phi0
    t = _start(cfg, window, t_start)
    for _ in range(_MAX_BACKTRACKS + 1):
        if r.phi(t) <= f_ref + cfg.rho * t * r.dphi0:
            return t
        t *= cfg.beta
    raise LineSearchFailure(f"no window decrease within {_MAX_BACKTRACKS} reductions")


def _dcstep(stx, fx, dx, sty, fy, dy, stp, fp, dp, brackt, stpmin, stpmax):
    """Interval/trial update for the staged strong-Wolfe search (the classic
    four-case safeguarded cubic/quadratic step computation)."""
    sgnd = dp * math.copysign(1.0, dx)
    if fp > fx:
        # Case 1: higher value; the minimum is bracketed.
        theta = 3.0 * (fx - fp) / (stp - stx) + dx + dp
        s = max(abs(theta), abs(dx), abs(dp))
        gamma = s * math.sqrt(max((theta / s) ** 2 - (dx / s) * (dp / s), 0.0))
        if stp < stx:
            gamma = -gamma
        p = (gamma - dx) + theta
        q = ((gamma - dx) + gamma) + dp
        rr = p / q
        stpc = stx + rr * (stp - stx)
        stpq = stx + ((dx / ((fx - fp) / (stp - stx) + dx)) / 2.0) * (stp - stx)
        if abs(stpc - stx) < abs(stpq - stx):
            stpf = stpc
        else:
            stpf = stpc + (stpq - stpc) / 2.0
        brackt = True
    elif sgnd < 0.0:
        # Case 2: opposite slope signs; the minimum is bracketed.
        theta = 3.0 * (fx - fp) / (stp - stx) + dx + dp
        s = max(abs(theta), abs(dx), abs(dp))
        gamma = s * math.sqrt(max((theta / s) ** 2 - (dx / s) * (dp / s), 0.0))
        if stp > stx:
            gamma = -gamma
        p = (gamma - dp) + theta
        q = ((gamma - dp) + gamma) + dx
        rr = p / q
        stpc = stp + rr * (stx - stp)
        stpq = stp + (dp / (dp - dx)) * (stx - stp)
        if abs(stpc - stp) > abs(stpq - stp):
            stpf = stpc
        else:
            stpf = stpq
        brackt = True
    elif abs(dp) < abs(dx):
        # Case 3: same sign, decreasing magnitude.
        theta = 3.0 * (fx - fp) / (stp - stx) + dx + dp
        s = max(abs(theta), abs(dx), abs(dp))
        gamma = s * math.sqrt(max((theta / s) ** 2 - (dx / s) * (dp / s), 0.0))
        if stp > stx:
            gamma = -gamma
        p = (gamma - dp) + theta
        q = (gamma + (dx - dp)) + gamma
        rr = p / q
        if rr < 0.0 and gamma != 0.0:
            stpc = stp + rr * (stx - stp)
        elif stp > stx:
            stpc = stpmax
        else:
            stpc = stpmin
        stpq = stp + (dp / (dp - dx)) * (stx - stp)
        if brackt:
            if abs(stpc - stp) < abs(stpq - stp):
                stpf = stpc
            else:
                stpf = stpq
            if stp > stx:
                stpf = min(stp + 0.66 * (sty - stp), stpf)
            else:
                stpf = max(stp + 0.66 * (sty - stp), stpf)
        else:
            if abs(stpc - stp) > abs(stpq - stp):
                stpf = stpc
            else:
                stpf = stpq
            stpf = min(max(stpf, stpmin), stpmax)
    else:
        # Case 4: same sign, not decreasing.
        if brackt:
            theta = 3.0 * (fp - fy) / (sty - stp) + dy + dp
            s = max(abs(theta), abs(dy), abs(dp))
            gamma = s * math.sqrt(max((theta / s) ** 2 - (dy / s) * (dp / s), 0.0))
            if stp > sty:
                gamma = -gamma
            p = (gamma - dp) + theta
            q = ((gamma - dp) + gamma) + dy
            rr = p / q
            stpc = stp + rr * (sty - stp)
            stpf = stpc
        elif stp > stx:
            stpf = stpmax
        else:
            stpf = stpmin

    # Interval update.
    if fp > fx:
        sty, fy, dy = stp, fp, dp
    else:
        if sgnd < 0.0:
            sty, fy, dy = stx, fx, dx
        stx, fx, dx = stp, fp, dp
    return stx, fx, dx, sty, fy, dy, stpf, brackt


def more_thuente(r, cfg, window, t_start, interval_log=None) -> float:
    """Staged strong-Wolfe search with safeguarded interpolation.

    Stage 1 interpolates the decrease-shifted function until it goes
    nonpositive with nonnegative slope, then stage 2 works on the function
    itself. Nested intervals once bracketed; trial steps stay in
    [stpmin, stpmax]. Raises RoundingStall when the interval collapses.
    """
    _require_descent(r)
    ftol, gtol = cfg.rho, cfg.sigma
    stp = min(max(_start(cfg, window, t_start), _MT_STPMIN), _MT_STPMAX)
    finit, ginit = r.phi0, r.dphi0
    gtest = ftol * ginit
    width = _MT_STPMAX - _MT_STPMIN
    width1 = 2.0 * width
    stx, fx, gx = 0.0, finit, ginit
    sty, fy, gy = 0.0, finit, ginit
    stmin, stmax = 0.0, stp + 4.0 * stp
    brackt = False
    stage = 1
    for _ in range(_MAX_MT_TRIALS):
        fp = r.phi(stp)
        dp = r.slope(stp)
        ftest = finit + stp * gtest
        if stage == 1 and fp <= ftest and dp >= 0.0:
            stage = 2
        if fp <= ftest and abs(dp) <= gtol * (-ginit):
            return stp
        if brackt and (stp <= stmin or stp >= stmax):
            raise RoundingStall("trial step pinned to the interval boundary")
        if brackt and stmax - stmin <= _MT_XTOL * stmax:
            raise RoundingStall("search interval below tolerance")
        if stp == _MT_STPMAX and fp <= ftest and dp <= gtest:
            raise LineSearchFailure("step reached the upper limit")
        if stp == _MT_STPMIN and (fp > ftest or dp >= gtest):
            raise LineSearchFailure("step reached the lower limit")

        if stage == 1 and fp <= fx and fp > ftest:
            fm = fp - stp * gtest
            fxm = fx - stx * gtest
            fym = fy - sty * gtest
            gm = dp - gtest
            gxm = gx - gtest
            gym = gy - gtest
            stx, fxm, gxm, sty, fym, gym, stp, brackt = _dcstep(
                stx, fxm, gxm, sty, fym, gym, stp, fm, gm, brackt, stmin, stmax
            )
            fx = fxm + stx * gtest
            fy = fym + sty * gtest
            gx = gxm + gtest
            gy = gym + gtest
        else:
            stx, fx, gx, sty, fy, gy, stp, brackt = _dcstep(
                stx, fx, gx, sty, fy, gy, stp, fp, dp, brackt, stmin, stmax
            )

        if brackt:
            if abs(sty - stx) >= 0.66 * width1:
                stp = stx + 0.5 * (sty - stx)
            width1 = width
            width = abs(sty - stx)
            stmin = min(stx, sty)
            stmax = max(stx, sty)
            if interval_log is not None:
                interval_log.append((stmin, stmax))
        else:
            stmin = stp + 1.1 * (stp - stx)
            stmax = stp + 4.0 * (stp - stx)
        stp = min(max(stp, _MT_STPMIN), _MT_STPMAX)
    raise LineSearchFailure(f"no acceptable step within {_MAX_MT_TRIALS} trials")


RULES = {
    "FixedStep": fixed_step,
    "CorrPrevIter": corr_prev_iter,
    "CorrPrevTwoIter": corr_prev_two_iter,
    "Backtracking": backtracking,
    "Armijo": armijo_interpolation,
    "Goldstein": goldstein,
    "Wolfe": wolfe,
    "StrongWolfe": strong_wolfe,
    "ApproxWolfe": approx_wolfe,
    "MoreThuente": more_thuente,
    "NonMonotone": nonmonotone,
}

# Which config fields each rule consumes (interface hints for UI/CLI).
_RULE_PARAMETERS = {
    "FixedStep": ("tInit",),
    "CorrPrevIter": ("tInit",),
    "CorrPrevTwoIter": ("tInit",),
    "Backtracking": ("rho", "beta", "tInit"),
    "Armijo": ("rho", "tInit"),
    "Goldstein": ("rho", "tInit"),
    "Wolfe": ("rho", "sigma", "tInit"),
    "StrongWolfe": ("rho", "sigma", "tInit"),
    "ApproxWolfe": ("rho", "sigma", "tInit"),
    "MoreThuente": ("rho", "sigma", "tInit"),
    "NonMonotone": ("rho", "beta", "tInit", "bigM"),
}


def rule_parameters(rule: str) -> tuple[str, ...]:
    try:
        return _RULE_PARAMETERS[rule]
    except KeyError:
        raise UnknownLineSearch(f"no line-search rule named {rule!r}") from None


def run_line_search(
    f: ObjectiveFunction,
    x: Vector,
    fval: float,
    g: Vector,
    d: Vector,
    cfg: LineSearchConfig,
    counters: EvalCounters,
    window: Optional[HistoryWindow] = None,
    t_start: Optional[float] = None,
) -> LineSearchOutcome:
    """Run the configured rule and return the accepted step with f and g at
    the new point. The search's evaluation delta is merged into counters even
    when the rule fails."""
    try:
        rule = RULES[cfg.rule]
    except KeyError:
        raise UnknownLineSearch(f"no line-search rule named {cfg.rule!r}") from None
    r = Restriction(f, x, fval, g, d)
    try:
        t = rule(r, cfg, window, t_start)
        return r.outcome(t)
    finally:
        counters.merge(r.delta)
