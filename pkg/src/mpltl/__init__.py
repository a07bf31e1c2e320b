"""Bounded satisfiability checking for metric LTL with past operators,
over mono-infinite or bi-infinite time."""

from . import formula
from .oracle import check_trace, eval_on_lasso
from .parser import ParseError, Problem, format_formula, parse_formula, \
    parse_problem
from .pipeline import CheckResult, check_formula, check_problem, decode_trace
from .solver import ExternalSolver, SolverTimeout
from .trace import LassoTrace

__all__ = [
    "formula", "parse_formula", "parse_problem", "format_formula",
    "ParseError", "Problem", "LassoTrace", "check_formula", "check_problem",
    "CheckResult", "decode_trace", "eval_on_lasso", "check_trace",
    "ExternalSolver", "SolverTimeout",
]
