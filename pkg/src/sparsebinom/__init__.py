"""Exact arithmetic for sparse polynomials whose exponents are binomial coefficients.

The central objects are ``H_n(z) = sum_j C(n, j) z^(h_j)`` for an exponent
sequence h, and its specialisation ``f_{m,n}`` with ``h_j = C(j, m)``.
"""

from .family import ExponentRule, H_poly, binomial, f_poly, parse_rule
from .polycore import SparsePoly, eval_exact, eval_numeric, format_poly, parse_poly

__all__ = [
    "ExponentRule",
    "H_poly",
    "SparsePoly",
    "binomial",
    "eval_exact",
    "eval_numeric",
    "f_poly",
    "format_poly",
    "parse_poly",
    "parse_rule",
]

__version__ = "0.1.0"
