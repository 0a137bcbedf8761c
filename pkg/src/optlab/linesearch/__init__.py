"""Line-search rules, their support types, and acceptance predicates."""

from optlab.linesearch.base import HistoryWindow, LineSearchOutcome, Restriction
from optlab.linesearch.conditions import (
    satisfies_approx_wolfe,
    satisfies_armijo,
    satisfies_goldstein,
    satisfies_nonmonotone,
    satisfies_strong_wolfe,
    satisfies_wolfe,
)
from optlab.linesearch.rules import RULES, rule_parameters, run_line_search

__all__ = [
    "HistoryWindow",
    "LineSearchOutcome",
    "Restriction",
    "RULES",
    "rule_parameters",
    "run_line_search",
    "satisfies_approx_wolfe",
    "satisfies_armijo",
    "satisfies_goldstein",
    "satisfies_nonmonotone",
    "satisfies_strong_wolfe",
    "satisfies_wolfe",
]
