"""Truncated formal power series in one or two local variables."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple

from .monomial import Exps
from .poly import Poly
from .scalar import Scalar, to_scalar


class TruncSeries:
    """Power series modulo total degree ``order`` (all stored terms have degree < order)."""

    __slots__ = ("vars", "order", "_terms")

    def __init__(self, vars: Iterable[str], order: int, terms: Mapping[Exps, object] = None):
        self.vars = tuple(vars)
        if order < 1:
            raise ValueError("truncation order must be positive")
        self.order = order
        out = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if sum(e) < order:
                c = to_scalar(c)
                if c != 0:
                    out[e] = c
        self._terms: Dict[Exps, Scalar] = out

    @classmethod
    def from_poly(cls, p: Poly, order: int) -> "TruncSeries":
        return cls(p.vars, order, dict(p.items()))

    @classmethod
    def variable(cls, vars, name, order) -> "TruncSeries":
        return cls.from_poly(Poly.var(vars, name), order)

    @classmethod
    def one(cls, vars, order) -> "TruncSeries":
        vars = tuple(vars)
        return cls(vars, order, {(0,) * len(vars): 1})

    def items(self):
        return self._terms.items()

    def coeff(self, e) -> Scalar:
        return self._terms.get(tuple(e), Fraction(0))

    def constant(self) -> Scalar:
        return self.coeff((0,) * len(self.vars))

    def valuation(self) -> int:
        """Lowest total degree present (``order`` for the zero series)."""
        return min((sum(e) for e in self._terms), default=self.order)

    def is_zero(self) -> bool:
        return not self._terms

    def to_poly(self) -> Poly:
        return Poly(self.vars, self._terms)

    def truncate(self, order: int) -> "TruncSeries":
        return TruncSeries(self.vars, min(order, self.order), self._terms)

    def _check(self, other: "TruncSeries"):
        if other.vars != self.vars:
            raise ValueError(f"series variables differ: {self.vars} vs {other.vars}")

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            other = TruncSeries(self.vars, self.order, {(0,) * len(self.vars): other})
        self._check(other)
        order = min(self.order, other.order)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return TruncSeries(self.vars, order, out)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(self.vars, self.order, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            c = to_scalar(other)
            return TruncSeries(self.vars, self.order, {e: v * c for e, v in self._terms.items()})
        self._check(other)
        order = min(self.order, other.order)
        out: Dict[Exps, Scalar] = {}
        for e1, c1 in self._terms.items():
            d1 = sum(e1)
            for e2, c2 in other._terms.items():
                if d1 + sum(e2) >= order:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return TruncSeries(self.vars, order, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = TruncSeries.one(self.vars, self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.vars == other.vars and self.order == other.order and self._terms == other._terms

    def __repr__(self):
        return f"TruncSeries({self.to_poly()} + O(deg {self.order}), vars={self.vars})"

    def compose(self, inner: "TruncSeries") -> "TruncSeries":
        """f(inner) for univariate f; inner must have zero constant term."""
        if len(self.vars) != 1:
            raise ValueError("composition needs a univariate outer series")
        if inner.constant() != 0:
            raise ValueError("inner series must have zero constant term")
        order = min(self.order, inner.order)
        acc = TruncSeries(inner.vars, order)
        # Horner in the inner series
        for k in range(self.order - 1, -1, -1):
            acc = acc * inner + self.coeff((k,))
        return acc.truncate(order)


def evaluate_poly(p: Poly, images: Mapping[str, TruncSeries]) -> TruncSeries:
    """Evaluate a polynomial at series (one image per variable of ``p``)."""
    first = next(iter(images.values()))
    vars, order = first.vars, min(s.order for s in images.values())
    acc = TruncSeries(vars, order)
    powers: Dict[Tuple[str, int], TruncSeries] = {}
    for e, c in p.items():
        term = TruncSeries(vars, order, {(0,) * len(vars): c})
        for v, k in zip(p.vars, e):
            if not k:
                continue
            pw = powers.get((v, k))
            if pw is None:
                pw = powers[(v, k)] = images[v] ** k
            term = term * pw
        acc = acc + term
    return acc


def _binom_half(k: int) -> Fraction:
    c = Fraction(1)
    for i in range(k):
        c = c * (Fraction(1, 2) - i) / (i + 1)
    return c


def series_sqrt_one_plus(s: TruncSeries, order: int = None) -> TruncSeries:
    """The unit series u with u^2 = 1 + s (mod degree order), u(0) = 1, by the binomial series."""
    order = s.order if order is None else order
    if s.constant() != 0:
        raise ValueError("series_sqrt_one_plus needs a series without constant term")
    s = TruncSeries(s.vars, order, dict(s.items()))
    acc = TruncSeries.one(s.vars, order)
    pw = TruncSeries.one(s.vars, order)
    for k in range(1, order):
        pw = pw * s
        if pw.is_zero():
            break
        acc = acc + pw * _binom_half(k)
    return acc


def series_invert_map(f: TruncSeries, order: int = None) -> TruncSeries:
    """Compositional inverse g of a univariate f with f(0) = 0 and f'(0) != 0."""
    if len(f.vars) != 1:
        raise ValueError("series_invert_map works on univariate series")
    order = f.order if order is None else order
    if f.constant() != 0:
        raise ValueError("series must have zero constant term")
    a = f.coeff((1,))
    if a == 0:
        raise ValueError("linear coefficient is not a unit")
    f = TruncSeries(f.vars, order, dict(f.items()))
    x = TruncSeries.variable(f.vars, f.vars[0], order)
    g = x * (1 / a)
    # each step fixes at least one more degree of f(g) = x
    for _ in range(order):
        err = f.compose(g) - x
        if err.is_zero():
            break
        g = g - err * (1 / a)
    return g
