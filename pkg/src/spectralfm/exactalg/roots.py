"""Resultants, root extraction in the coefficient field, square-free parts.

Factorisation over Q (with lambda as an extra polynomial variable) is
delegated to sympy; everything else here works on :class:`Poly` directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import lcm as ilcm
from typing import List, Tuple

import sympy

from .poly import Poly, VariableMismatch
from .scalar import RatFunc, Scalar, ratfunc, scalar_sort_key

_LAM = sympy.Symbol("_lam")


def _denominator_lcm(p: Poly):
    """A polynomial (dense over Q, in lambda) clearing every coefficient denominator."""
    from .scalar import _pmul, _pgcd, _pdivmod

    acc = (Fraction(1),)
    for c in (c for _, c in p.items()):
        if isinstance(c, RatFunc):
            g = _pgcd(acc, c.den)
            acc = _pmul(acc, _pdivmod(c.den, g)[0])
    ints = [c.denominator for _, c in p.items() if isinstance(c, Fraction)]
    if ints:
        acc = tuple(x * reduce(ilcm, ints, 1) for x in acc)
    return acc


def to_sympy(p: Poly) -> sympy.Poly:
    """Clear denominators and return an integer-coefficient sympy polynomial in p.vars + (lambda,)."""
    gens = [sympy.Symbol(v) for v in p.vars] + [_LAM]
    clear = _denominator_lcm(p)
    terms = {}
    for e, c in p.items():
        c = c * ratfunc(clear, (Fraction(1),))
        if isinstance(c, RatFunc):
            if c.den != (Fraction(1),):
                raise ArithmeticError("denominator clearing failed")
            dense = c.num
        else:
            dense = (c,)
        for k, a in enumerate(dense):
            if a != 0:
                key = tuple(e) + (k,)
                terms[key] = terms.get(key, 0) + sympy.Rational(a.numerator, a.denominator)
    return sympy.Poly.from_dict(terms or {(0,) * len(gens): 0}, *gens, domain="QQ")


def from_sympy(sp: sympy.Poly, vars) -> Poly:
    vars = tuple(vars)
    n = len(vars)
    coeffs = {}
    for mono, c in sp.terms():
        e, k = tuple(mono[:n]), mono[n]
        dense = [Fraction(0)] * (k + 1)
        dense[k] = Fraction(int(c.p), int(c.q))
        coeffs[e] = coeffs.get(e, Fraction(0)) + ratfunc(dense, (Fraction(1),))
    return Poly(vars, coeffs)


def factor(p: Poly) -> List[Tuple[Poly, int]]:
    """Irreducible factors over Q(lambda) that involve ring variables, with multiplicities."""
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    sp = to_sympy(p)
    _, facs = sp.factor_list()
    out = []
    for f, m in facs:
        q = from_sympy(sympy.Poly(f, *sp.gens, domain="QQ"), p.vars)
        if q.used_vars():
            out.append((q, m))
    return out


def squarefree_part(p: Poly, var: str) -> Poly:
    """Product of the distinct irreducible factors of positive degree in ``var``."""
    acc = Poly.const(p.vars, 1)
    for f, _ in factor(p):
        if f.degree(var) > 0:
            acc = acc * f
    return acc


@dataclass(frozen=True)
class RootReport:
    """Field-rational roots with multiplicities plus the leftover irreducible factors."""

    roots: Tuple[Tuple[Scalar, int], ...]
    clusters: Tuple[Tuple[Poly, int], ...]

    @property
    def cluster_degree(self) -> int:
        return sum(f.total_degree() * m for f, m in self.clusters)


def squarefree_linear_roots(p: Poly, var: str) -> RootReport:
    """Roots of a univariate polynomial lying in Q or Q(lambda).

    Non-linear irreducible factors are returned untouched as clusters; they
    are never approximated.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no well-defined roots")
    other = [v for v in p.used_vars() if v != var]
    if other:
        raise VariableMismatch(f"expected a polynomial in {var!r} only, found {other}")
    q = p.embed((var,))
    roots, clusters = [], []
    for f, m in factor(q):
        d = f.degree(var)
        if d == 1:
            c1, c0 = f.coeff((1,)), f.coeff((0,))
            roots.append((-c0 / c1, m))
        elif d > 1:
            clusters.append((f.monic(), m))
    roots.sort(key=lambda r: scalar_sort_key(r[0]))
    clusters.sort(key=lambda c: (c[0].total_degree(), str(c[0])))
    return RootReport(tuple(roots), tuple(clusters))


def sylvester_matrix(p: Poly, q: Poly, var: str):
    """Sylvester matrix of p, q in ``var``; entries are polynomials in the other variables."""
    rest = tuple(v for v in p.vars if v != var)
    m, n = p.degree(var), q.degree(var)
    pc = {k: c.embed(rest) for k, c in p.coefficients_in(var).items()}
    qc = {k: c.embed(rest) for k, c in q.coefficients_in(var).items()}
    zero = Poly(rest)
    size = m + n
    rows = []
    for i in range(n):
        rows.append([pc.get(m - (j - i), zero) if 0 <= j - i <= m else zero for j in range(size)])
    for i in range(m):
        rows.append([qc.get(n - (j - i), zero) if 0 <= j - i <= n else zero for j in range(size)])
    return rows


def bareiss_det(matrix) -> Poly:
    """Fraction-free determinant (Bareiss) of a square matrix of polynomials."""
    M = [list(r) for r in matrix]
    n = len(M)
    if n == 0:
        raise ValueError("empty matrix")
    sign = 1
    prev = None
    for k in range(n - 1):
        if M[k][k].is_zero():
            for i in range(k + 1, n):
                if not M[i][k].is_zero():
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return M[0][0] * 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                M[i][j] = num if prev is None else num.exact_div(prev)
        prev = M[k][k]
    return M[n - 1][n - 1] * sign


def resultant_univ(p: Poly, q: Poly, var: str) -> Poly:
    """Res_var(p, q) as the determinant of the Sylvester matrix (rows: n shifts of p, then m of q).

    The result is a polynomial over the variables of p other than ``var``.
    For a monic cubic p the classical discriminant equals -Res(p, p').
    """
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of a zero polynomial")
    if p.vars != q.vars:
        raise VariableMismatch(f"variable sets differ: {p.vars} vs {q.vars}")
    rest = tuple(v for v in p.vars if v != var)
    m, n = p.degree(var), q.degree(var)
    if m == 0 and n == 0:
        return Poly.const(rest, 1)
    if m == 0:
        return p.embed(rest) ** n
    if n == 0:
        return q.embed(rest) ** m
    return bareiss_det(sylvester_matrix(p, q, var))
