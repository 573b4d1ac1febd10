"""Sparse multivariate polynomials with exact scalar coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Tuple

from .monomial import Exps, MonomialOrder, divides, quotient
from .scalar import PARAM, Scalar, has_parameter, is_negative, specialize, to_scalar, format_scalar

DEFAULT_ORDER = MonomialOrder("grevlex")


class VariableMismatch(ValueError):
    pass


class Poly:
    """Immutable polynomial over Q or Q(lambda) in a declared tuple of variables.

    Terms live in a dict ``{exponent tuple: scalar}`` with no zero
    coefficients, so two equal polynomials over the same variables always
    have identical term maps.
    """

    __slots__ = ("vars", "_terms", "_hash")

    def __init__(self, vars: Iterable[str], terms: Optional[Mapping[Exps, object]] = None):
        self.vars = tuple(vars)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"repeated variable in {self.vars}")
        if PARAM in self.vars:
            raise ValueError(f"{PARAM!r} is the coefficient parameter, not a variable")
        clean: Dict[Exps, Scalar] = {}
        n = len(self.vars)
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n:
                raise ValueError(f"exponent {e} does not match variables {self.vars}")
            c = to_scalar(c)
            if c != 0:
                clean[e] = c
        self._terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, vars, c) -> "Poly":
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def var(cls, vars, name: str) -> "Poly":
        vars = tuple(vars)
        if name not in vars:
            raise VariableMismatch(f"{name!r} not among {vars}")
        return cls(vars, {tuple(int(v == name) for v in vars): 1})

    @classmethod
    def _raw(cls, vars, terms) -> "Poly":
        p = cls.__new__(cls)
        p.vars = vars
        p._terms = terms
        p._hash = None
        return p

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> Dict[Exps, Scalar]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def sorted_terms(self, order: MonomialOrder = DEFAULT_ORDER):
        key = order.key(self.vars)
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((0,) * len(self.vars), Fraction(0))

    def coeff(self, exps: Exps) -> Scalar:
        return self._terms.get(tuple(exps), Fraction(0))

    def used_vars(self) -> Tuple[str, ...]:
        used = set()
        for e in self._terms:
            used.update(v for v, k in zip(self.vars, e) if k)
        return tuple(v for v in self.vars if v in used)

    def has_parameter(self) -> bool:
        return any(has_parameter(c) for c in self._terms.values())

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def degree(self, var: str) -> int:
        i = self._index(var)
        return max((e[i] for e in self._terms), default=-1)

    def leading(self, order: MonomialOrder = DEFAULT_ORDER) -> Tuple[Exps, Scalar]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        key = order.key(self.vars)
        e = max(self._terms, key=key)
        return e, self._terms[e]

    def _index(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            raise VariableMismatch(f"{var!r} not among {self.vars}") from None

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.vars != self.vars:
                raise VariableMismatch(f"variable sets differ: {self.vars} vs {other.vars}")
            return other
        return Poly.const(self.vars, to_scalar(other))

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return Poly._raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            try:
                c = to_scalar(other)
            except TypeError:
                return NotImplemented
            return self.scale(c)
        other = self._coerce(other)
        out: Dict[Exps, Scalar] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return Poly._raw(self.vars, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = to_scalar(other) if not isinstance(other, Poly) else other.constant_value()
        if c == 0:
            raise ZeroDivisionError("polynomial division by zero scalar")
        return self.scale(1 / c)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        result = Poly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "Poly":
        c = to_scalar(c)
        if c == 0:
            return Poly._raw(self.vars, {})
        return Poly._raw(self.vars, {e: v * c for e, v in self._terms.items()})

    def mul_monomial(self, exps: Exps, c=1) -> "Poly":
        c = to_scalar(c)
        if c == 0:
            return Poly._raw(self.vars, {})
        return Poly._raw(
            self.vars,
            {tuple(a + b for a, b in zip(e, exps)): v * c for e, v in self._terms.items()},
        )

    def monic(self, order: MonomialOrder = DEFAULT_ORDER) -> "Poly":
        if not self._terms:
            return self
        return self.scale(1 / self.leading(order)[1])

    def diff(self, var: str) -> "Poly":
        i = self._index(var)
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Poly._raw(self.vars, out)

    def exact_div(self, other: "Poly") -> "Poly":
        """Quotient of an exact division; raises ArithmeticError if other does not divide self."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        order = MonomialOrder("lex")
        key = order.key(self.vars)
        le, lc = other.leading(order)
        rem = dict(self._terms)
        q: Dict[Exps, Scalar] = {}
        while rem:
            e = max(rem, key=key)
            if not divides(le, e):
                raise ArithmeticError("inexact polynomial division")
            m = quotient(e, le)
            c = rem[e] / lc
            q[m] = c
            for e2, c2 in other._terms.items():
                f = tuple(a + b for a, b in zip(e2, m))
                s = rem.get(f, 0) - c * c2
                if s == 0:
                    rem.pop(f, None)
                else:
                    rem[f] = s
        return Poly._raw(self.vars, q)

    # -- change of ring ---------------------------------------------------
    def embed(self, vars: Iterable[str]) -> "Poly":
        """Re-express over another variable tuple containing every used variable."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        pos = {v: i for i, v in enumerate(vars)}
        for v in self.used_vars():
            if v not in pos:
                raise VariableMismatch(f"{v!r} is used but missing from {vars}")
        idx = [(pos[v], i) for i, v in enumerate(self.vars) if v in pos]
        out = {}
        for e, c in self._terms.items():
            f = [0] * len(vars)
            for j, i in idx:
                f[j] = e[i]
            out[tuple(f)] = c
        return Poly._raw(vars, out)

    def specialize_parameter(self, value) -> "Poly":
        return Poly(self.vars, {e: specialize(c, value) for e, c in self._terms.items()})

    def coefficients_in(self, var: str) -> Dict[int, "Poly"]:
        """View as a polynomial in ``var``: degree -> coefficient (same variable tuple)."""
        i = self._index(var)
        out: Dict[int, Dict[Exps, Scalar]] = {}
        for e, c in self._terms.items():
            f = list(e)
            f[i] = 0
            out.setdefault(e[i], {})[tuple(f)] = c
        return {k: Poly._raw(self.vars, v) for k, v in out.items()}

    # -- protocol ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.vars == other.vars and self._terms == other._terms
        try:
            c = to_scalar(other)
        except TypeError:
            return NotImplemented
        return self.is_constant() and self.constant_value() == c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r}, vars={self.vars})"


def _format_monomial(vars, e) -> str:
    parts = []
    for v, k in zip(vars, e):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def format_poly(p: Poly, order: MonomialOrder = DEFAULT_ORDER) -> str:
    out = []
    for e, c in p.sorted_terms(order):
        neg = is_negative(c)
        a = -c if neg else c
        mono = _format_monomial(p.vars, e)
        if not mono:
            body = format_scalar(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_scalar(a)}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out) or "0"


def poly_add(a: Poly, b: Poly) -> Poly:
    return a + a._coerce(b)


def poly_sub(a: Poly, b: Poly) -> Poly:
    return a - a._coerce(b)


def poly_mul(a: Poly, b: Poly) -> Poly:
    return a * a._coerce(b)


def substitute(p: Poly, bindings: Mapping[str, object], vars: Optional[Iterable[str]] = None) -> Poly:
    """Substitute polynomials or scalars for variables (and optionally for lambda).

    The result lives over ``vars`` when given, otherwise over the variables of
    ``p`` that were not bound, followed by any new variables introduced by
    polynomial bindings.
    """
    bindings = dict(bindings)
    lam = bindings.pop(PARAM, None)
    if vars is None:
        out_vars = [v for v in p.vars if v not in bindings]
        for b in bindings.values():
            if isinstance(b, Poly):
                out_vars += [v for v in b.used_vars() if v not in out_vars]
        vars = tuple(out_vars)
    else:
        vars = tuple(vars)
    for name in bindings:
        if name not in p.vars:
            raise VariableMismatch(f"cannot bind {name!r}: not a variable of {p.vars}")
    images = []
    for v in p.vars:
        if v in bindings:
            b = bindings[v]
            images.append(b.embed(vars) if isinstance(b, Poly) else Poly.const(vars, b))
        else:
            images.append(Poly.var(vars, v) if v in vars else None)
    if lam is not None and any(isinstance(b, Poly) and b.has_parameter() for b in bindings.values()):
        images = [im.specialize_parameter(lam) if im is not None else None for im in images]
    result = Poly(vars)
    cache: Dict[Tuple[int, int], Poly] = {}
    for e, c in p.items():
        if lam is not None:
            c = specialize(c, lam)
        term = Poly.const(vars, c)
        for i, k in enumerate(e):
            if not k:
                continue
            if images[i] is None:
                raise VariableMismatch(f"{p.vars[i]!r} is neither bound nor in {vars}")
            pw = cache.get((i, k))
            if pw is None:
                pw = cache[(i, k)] = images[i] ** k
            term = term * pw
        result = result + term
    return result
