"""Ideals, Buchberger's algorithm and normal forms."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from ..exactalg.monomial import Exps, MonomialOrder, divides, lcm, quotient
from ..exactalg.parse import parse_poly
from ..exactalg.poly import Poly, VariableMismatch

INFINITE = math.inf


@dataclass(frozen=True)
class Ideal:
    """Generators over a declared variable tuple.

    Variables listed in ``params`` are treated as elements of the coefficient
    field: the ideal is read in K(params)[other vars].  Bases are computed over
    K[params] with a block order, which is the standard way to get a basis of
    the extended ideal without rational-function arithmetic in those
    variables.
    """

    gens: Tuple[Poly, ...]
    vars: Tuple[str, ...]
    params: Tuple[str, ...] = ()

    def __post_init__(self):
        gens = []
        for g in self.gens:
            if not isinstance(g, Poly):
                raise TypeError(f"generator {g!r} is not a Poly")
            g = g.embed(self.vars)
            if not g.is_zero():
                gens.append(g)
        object.__setattr__(self, "gens", tuple(gens))
        object.__setattr__(self, "vars", tuple(self.vars))
        object.__setattr__(self, "params", tuple(self.params))
        for p in self.params:
            if p not in self.vars:
                raise VariableMismatch(f"parameter {p!r} is not a ring variable")

    @classmethod
    def from_text(cls, gens: Sequence[str], vars: Sequence[str], params=()) -> "Ideal":
        vars = tuple(vars)
        return cls(tuple(parse_poly(g, vars) for g in gens), vars, tuple(params))

    @property
    def main_vars(self) -> Tuple[str, ...]:
        return tuple(v for v in self.vars if v not in self.params)

    @property
    def field(self) -> str:
        base = "QQ(lambda)" if any(g.has_parameter() for g in self.gens) else "QQ"
        if self.params:
            base = f"{base}({','.join(self.params)})"
        return base

    def with_params(self, params) -> "Ideal":
        return Ideal(self.gens, self.vars, tuple(params))

    def to_json(self) -> dict:
        d = {"vars": list(self.vars), "gens": [str(g) for g in self.gens]}
        if self.params:
            d["params"] = list(self.params)
        return d

    @classmethod
    def from_json(cls, data) -> "Ideal":
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_text(data["gens"], data["vars"], data.get("params", ()))


def default_order(ideal: Ideal, kind: str = "grevlex") -> MonomialOrder:
    return MonomialOrder(kind, params=ideal.params)


@dataclass(frozen=True)
class GroebnerBasis:
    polys: Tuple[Poly, ...]
    order: MonomialOrder
    vars: Tuple[str, ...]
    params: Tuple[str, ...] = ()
    _lms: Tuple[Exps, ...] = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        if not self._lms:
            object.__setattr__(self, "_lms", tuple(g.leading(self.order)[0] for g in self.polys))

    @property
    def leading_monomials(self) -> Tuple[Exps, ...]:
        return self._lms

    @property
    def main_vars(self) -> Tuple[str, ...]:
        return tuple(v for v in self.vars if v not in self.params)

    def _main_index(self):
        return [i for i, v in enumerate(self.vars) if v not in self.params]

    def main_leading_monomials(self) -> Tuple[Exps, ...]:
        """Leading monomials projected to the non-parameter variables."""
        idx = self._main_index()
        return tuple(tuple(e[i] for i in idx) for e in self._lms)

    def leading_coefficients(self) -> Tuple[Poly, ...]:
        """Coefficient of the main-variable leading monomial, as a polynomial in the params."""
        idx = self._main_index()
        out = []
        for g, e in zip(self.polys, self._lms):
            target = tuple(e[i] for i in idx)
            terms = {}
            for f, c in g.items():
                if tuple(f[i] for i in idx) == target:
                    h = list(f)
                    for i in idx:
                        h[i] = 0
                    terms[tuple(h)] = c
            out.append(Poly(self.vars, terms))
        return tuple(out)

    def normal_form(self, p: Poly) -> Poly:
        return normal_form(p.embed(self.vars), self.polys, self.order)

    def contains(self, p: Poly) -> bool:
        return self.normal_form(p).is_zero()

    def is_unit(self) -> bool:
        return any(not any(e) for e in self.main_leading_monomials())

    def standard_monomials(self) -> Optional[Tuple[Exps, ...]]:
        """Monomials in the main variables outside the leading-term ideal (None if infinitely many)."""
        lms = self.main_leading_monomials()
        n = len(self.main_vars)
        if any(not any(e) for e in lms):
            return ()
        bounds = []
        for i in range(n):
            pure = [e[i] for e in lms if e[i] and all(e[j] == 0 for j in range(n) if j != i)]
            if not pure:
                return None
            bounds.append(min(pure))
        out = [m for m in product(*(range(b) for b in bounds)) if not any(divides(e, m) for e in lms)]
        out.sort(key=lambda m: (sum(m), m))
        return tuple(out)


def _reduce_step_terms(terms: Dict[Exps, object], g: Poly, m: Exps, c):
    for e, a in g.items():
        f = tuple(x + y for x, y in zip(e, m))
        s = terms.get(f, 0) - c * a
        if s == 0:
            terms.pop(f, None)
        else:
            terms[f] = s


def normal_form(p: Poly, basis: Sequence[Poly], order: MonomialOrder) -> Poly:
    """Fully reduced remainder of p modulo the polynomials of ``basis``."""
    if not basis:
        return p
    key = order.key(p.vars)
    leads = [(g.leading(order), g) for g in basis]
    rem = dict(p.items())
    out = {}
    while rem:
        e = max(rem, key=key)
        c = rem[e]
        for (le, lc), g in leads:
            if divides(le, e):
                _reduce_step_terms(rem, g, quotient(e, le), c / lc)
                break
        else:
            out[e] = rem.pop(e)
    return Poly(p.vars, out)


def _spoly(f: Poly, g: Poly, order: MonomialOrder) -> Poly:
    (ef, cf), (eg, cg) = f.leading(order), g.leading(order)
    L = lcm(ef, eg)
    return f.mul_monomial(quotient(L, ef), 1 / cf) - g.mul_monomial(quotient(L, eg), 1 / cg)


def buchberger(ideal: Ideal, order: MonomialOrder = None) -> GroebnerBasis:
    """Reduced Groebner basis.

    Pairs are processed by the normal strategy (smallest lcm first, ties
    broken by the order and then by index), skipping pairs with coprime
    leading monomials and pairs removed by the chain criterion.
    """
    if order is None:
        order = default_order(ideal)
    elif ideal.params and set(order.params) != set(ideal.params):
        order = order.with_params(ideal.params)
    vars = ideal.vars
    key = order.key(vars)
    G: List[Poly] = []
    L: List[Exps] = []
    for g in ideal.gens:
        g = normal_form(g, G, order) if G else g
        if not g.is_zero():
            G.append(g.monic(order))
            L.append(G[-1].leading(order)[0])
    if any(not any(e) for e in L):
        one = Poly.const(vars, 1)
        return GroebnerBasis((one,), order, vars, ideal.params)

    pairs = {(i, j) for j in range(len(G)) for i in range(j)}

    def pair_key(ij):
        m = lcm(L[ij[0]], L[ij[1]])
        return (sum(m), key(m), ij[1], ij[0])

    while pairs:
        ij = min(pairs, key=pair_key)
        pairs.discard(ij)
        i, j = ij
        m = lcm(L[i], L[j])
        if all(a == 0 or b == 0 for a, b in zip(L[i], L[j])):
            continue
        if any(
            k != i and k != j
            and divides(L[k], m)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(G))
        ):
            continue
        h = normal_form(_spoly(G[i], G[j], order), G, order)
        if h.is_zero():
            continue
        h = h.monic(order)
        le = h.leading(order)[0]
        if not any(le):
            one = Poly.const(vars, 1)
            return GroebnerBasis((one,), order, vars, ideal.params)
        n = len(G)
        G.append(h)
        L.append(le)
        pairs.update((k, n) for k in range(n))

    # minimise, then inter-reduce
    keep = []
    for i, e in enumerate(L):
        if any(divides(L[j], e) and (L[j] != e or j < i) for j in range(len(L)) if j != i):
            continue
        keep.append(G[i])
    reduced = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        reduced.append(normal_form(g, others, order).monic(order))
    reduced.sort(key=lambda g: key(g.leading(order)[0]))
    return GroebnerBasis(tuple(reduced), order, vars, ideal.params)


def spoly_criterion_holds(gb: GroebnerBasis) -> bool:
    """Post-hoc Buchberger criterion: every S-polynomial reduces to zero."""
    P = gb.polys
    for j in range(len(P)):
        for i in range(j):
            if not normal_form(_spoly(P[i], P[j], gb.order), P, gb.order).is_zero():
                return False
    return True


def is_reduced(gb: GroebnerBasis) -> bool:
    for g, e in zip(gb.polys, gb.leading_monomials):
        if g.leading(gb.order)[1] != 1:
            return False
        for h, f in zip(gb.polys, gb.leading_monomials):
            if h is g:
                continue
            if any(divides(f, t) for t, _ in g.items()):
                return False
    return True
