"""Exact arithmetic kernel: scalars in Q / Q(lambda), polynomials, truncated series."""

from .linalg import Echelon, rank
from .monomial import MonomialOrder, grevlex, lex
from .parse import ParseError, parse_poly, parse_scalar
from .poly import Poly, VariableMismatch, format_poly, poly_add, poly_mul, poly_sub, substitute
from .roots import RootReport, bareiss_det, factor, resultant_univ, squarefree_linear_roots, squarefree_part, sylvester_matrix, to_sympy, from_sympy
from .scalar import LAMBDA, PARAM, RatFunc, Scalar, format_scalar, ratfunc, specialize, to_scalar
from .series import TruncSeries, evaluate_poly, series_invert_map, series_sqrt_one_plus

__all__ = [
    "Echelon",
    "LAMBDA",
    "PARAM",
    "MonomialOrder",
    "ParseError",
    "Poly",
    "RatFunc",
    "RootReport",
    "Scalar",
    "TruncSeries",
    "VariableMismatch",
    "bareiss_det",
    "evaluate_poly",
    "factor",
    "format_poly",
    "from_sympy",
    "format_scalar",
    "grevlex",
    "lex",
    "parse_poly",
    "parse_scalar",
    "poly_add",
    "poly_mul",
    "poly_sub",
    "rank",
    "ratfunc",
    "resultant_univ",
    "series_invert_map",
    "series_sqrt_one_plus",
    "specialize",
    "squarefree_linear_roots",
    "squarefree_part",
    "substitute",
    "sylvester_matrix",
    "to_sympy",
    "to_scalar",
]
