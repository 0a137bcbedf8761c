"""Post-hoc acceptance predicates.

Pure functions of freshly computed quantities, used by tests to re-verify
accepted steps against each rule's defining inequality.
"""

from __future__ import annotations

__all__ = [
    "satisfies_armijo",
    "satisfies_goldstein",
    "satisfies_wolfe",
    "satisfies_strong_wolfe",
    "satisfies_approx_wolfe",
    "satisfies_nonmonotone",
]


def satisfies_armijo(phi0, dphi0, t, phi_t, rho) -> bool:
    return phi_t <= phi0 + rho * t * dphi0


def satisfies_goldstein(phi0, dphi0, t, phi_t, rho) -> bool:
    upper = phi_t <= phi0 + rho * t * dphi0
    lower = phi_t >= phi0 + (1.0 - rho) * t * dphi0
    return upper and lower


def satisfies_wolfe(phi0, dphi0, t, phi_t, dphi_t, rho, sigma) -> bool:
    return satisfies_armijo(phi0, dphi0, t, phi_t, rho) and dphi_t >= sigma * dphi0


def satisfies_strong_wolfe(phi0, dphi0, t, phi_t, dphi_t, rho, sigma) -> bool:
    return satisfies_armijo(phi0, dphi0, t, phi_t, rho) and abs(dphi_t) <= sigma * abs(
        dphi0
    )


def satisfies_approx_wolfe(phi0, dphi0, t, phi_t, dphi_t, rho, sigma) -> bool:
    """Standard pair or approximate slope pair, matching the rule's acceptance."""
    standard = satisfies_wolfe(phi0, dphi0, t, phi_t, dphi_t, rho, sigma)
    approx = (2.0 * rho - 1.0) * dphi0 >= dphi_t >= sigma * dphi0
    return standard or approx


def satisfies_nonmonotone(f_window_max, dphi0, t, phi_t, rho) -> bool:
    return phi_t <= f_window_max + rho * t * dphi0
