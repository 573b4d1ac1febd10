"""Lengths, elimination, support points, ideal quotients and flatness over the t-line."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

from ..exactalg.monomial import MonomialOrder
from ..exactalg.poly import Poly, VariableMismatch, substitute
from ..exactalg.roots import squarefree_linear_roots, squarefree_part
from ..exactalg.scalar import Scalar, format_scalar, scalar_sort_key
from .basis import INFINITE, GroebnerBasis, Ideal, buchberger
from .local import local_length_at


class NotZeroDimensional(ValueError):
    pass


def quotient_length(gb: GroebnerBasis) -> Union[int, float]:
    """Number of standard monomials; ``INFINITE`` when the staircase is unbounded."""
    std = gb.standard_monomials()
    return INFINITE if std is None else len(std)


def ideal_length(ideal: Ideal) -> Union[int, float]:
    return quotient_length(buchberger(ideal))


def same_ideal(a: Ideal, b: Ideal) -> bool:
    if a.vars != b.vars or a.params != b.params:
        return False
    return buchberger(a).polys == buchberger(b).polys


def _require_zero_dim(ideal: Ideal) -> int:
    n = ideal_length(ideal)
    if n == INFINITE:
        raise NotZeroDimensional(f"ideal {[str(g) for g in ideal.gens]} is not zero-dimensional")
    return n


def eliminate(ideal: Ideal, keep: str) -> Poly:
    """Generator of the ideal intersected with K[keep] (lex projection), monic when possible."""
    if keep not in ideal.main_vars:
        raise VariableMismatch(f"cannot keep {keep!r}: not a main variable of {ideal.vars}")
    _require_zero_dim(ideal)
    others = tuple(v for v in ideal.main_vars if v != keep)
    order = MonomialOrder("lex", others + (keep,), params=ideal.params)
    gb = buchberger(ideal, order)
    ki = ideal.vars.index(keep)
    main_idx = [i for i, v in enumerate(ideal.vars) if v not in ideal.params]
    cands = []
    for g, e in zip(gb.polys, gb.leading_monomials):
        if all(e[i] == 0 for i in main_idx if i != ki) and all(
            all(f[i] == 0 for i in main_idx if i != ki) for f, _ in g.items()
        ):
            cands.append(g)
    if not cands:
        raise NotZeroDimensional("no elimination polynomial found")
    key = order.key(ideal.vars)
    g = min(cands, key=lambda p: key(p.leading(order)[0]))
    if not ideal.params:
        g = g.monic(order)
    return g


def radical_length(ideal: Ideal) -> int:
    """Number of distinct geometric points (length of the radical, char 0)."""
    _require_zero_dim(ideal)
    extra = [squarefree_part(eliminate(ideal, v), v) for v in ideal.main_vars]
    return ideal_length(Ideal(ideal.gens + tuple(extra), ideal.vars, ideal.params))


@dataclass(frozen=True)
class SupportPoint:
    coords: Tuple[Scalar, ...]
    length: int

    def as_dict(self, vars) -> dict:
        return dict(zip(vars, self.coords))


@dataclass(frozen=True)
class Cluster:
    """Points not defined over the coefficient field: how many, and their total length."""

    degree: int
    length: int


@dataclass(frozen=True)
class Support:
    vars: Tuple[str, ...]
    points: Tuple[SupportPoint, ...]
    clusters: Tuple[Cluster, ...]
    total_length: int


def _rational_points(gens: Sequence[Poly], vars: Tuple[str, ...]) -> List[Tuple[Scalar, ...]]:
    if not vars:
        return [()] if all(g.is_zero() for g in gens) else []
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise NotZeroDimensional("positive-dimensional fibre while solving")
    ideal = Ideal(tuple(gens), vars)
    if buchberger(ideal).is_unit():
        return []
    last = vars[-1]
    elim = eliminate(ideal, last)
    order = MonomialOrder("lex", vars)
    gb = buchberger(ideal, order)
    pts = []
    for r, _ in squarefree_linear_roots(elim.embed((last,)), last).roots:
        sub = [substitute(g, {last: r}, vars=vars[:-1]) for g in gb.polys]
        pts += [p + (r,) for p in _rational_points(sub, vars[:-1])]
    return pts


def support_points(ideal: Ideal, trunc: Optional[int] = None) -> Support:
    """Field-rational support points with local lengths, plus one cluster entry for the rest.

    Local lengths come from truncated local linear algebra at each point with
    truncation ``global length + 2`` unless ``trunc`` is given.
    """
    if ideal.params:
        raise ValueError("support_points works over the coefficient field only (no parameters)")
    total = _require_zero_dim(ideal)
    vars = ideal.vars
    gb = buchberger(ideal)
    coords = _rational_points(list(gb.polys), vars)
    coords.sort(key=lambda c: tuple(scalar_sort_key(x) for x in c))
    N = trunc if trunc is not None else total + 2
    points = tuple(
        SupportPoint(c, local_length_at(list(gb.polys), dict(zip(vars, c)), N)) for c in coords
    )
    distinct = radical_length(ideal) if total else 0
    rest_len = total - sum(p.length for p in points)
    rest_deg = distinct - len(points)
    if rest_deg < 0 or rest_len < 0 or (rest_deg == 0) != (rest_len == 0):
        raise ArithmeticError("local lengths do not reconcile with the global length")
    clusters = (Cluster(rest_deg, rest_len),) if rest_deg else ()
    return Support(vars, points, clusters, total)


def ideal_quotient(ideal: Ideal, f: Poly) -> Ideal:
    """(I : f) via I ∩ <f> = elimination of w from w*I + (1-w)*f, divided by f."""
    f = f.embed(ideal.vars)
    if f.is_zero():
        raise ValueError("ideal quotient by zero")
    if f.is_constant():
        return ideal
    w = "_w"
    while w in ideal.vars:
        w += "_"
    big = (w,) + ideal.vars
    W = Poly.var(big, w)
    gens = [W * g.embed(big) for g in ideal.gens] + [(1 - W) * f.embed(big)]
    order = MonomialOrder("grevlex", elim=(w,), params=ideal.params)
    gb = buchberger(Ideal(tuple(gens), big, ideal.params), order)
    inter = [g for g in gb.polys if g.degree(w) <= 0]
    quot = tuple(g.embed(ideal.vars).exact_div(f) for g in inter)
    return Ideal(quot, ideal.vars, ideal.params)


@dataclass(frozen=True)
class FlatnessCertificate:
    """Outcome of the fibre-length test over the t-line.

    ``flat`` is True, False or the string "undetermined" (a candidate value of
    t lies outside the coefficient field).
    """

    flat: Union[bool, str]
    generic_length: Union[int, float]
    checked: Tuple[Tuple[Scalar, Union[int, float]], ...]
    jump_candidates: Tuple[Scalar, ...]
    unresolved: Tuple[str, ...] = ()
    leading_coefficients: Tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        def ln(n):
            return "infinite" if n == INFINITE else n

        return {
            "flat": self.flat,
            "generic_length": ln(self.generic_length),
            "checked": [{"t": format_scalar(t), "length": ln(n)} for t, n in self.checked],
            "jump_candidates": [format_scalar(t) for t in self.jump_candidates],
            "unresolved_candidates": list(self.unresolved),
            "leading_coefficients": list(self.leading_coefficients),
        }


def fibre_at(ideal: Ideal, t: str, t0) -> Ideal:
    rest = tuple(v for v in ideal.vars if v != t)
    return Ideal(tuple(substitute(g, {t: t0}, vars=rest) for g in ideal.gens), rest)


def jump_locus(ideal: Ideal, t: str = "t"):
    """Generic basis over K(t) plus rational roots / unresolved factors of its leading coefficients."""
    generic = Ideal(ideal.gens, ideal.vars, (t,))
    gb = buchberger(generic)
    roots, unresolved, lcs = [], [], []
    for lc in gb.leading_coefficients():
        if lc.is_constant():
            continue
        lcs.append(str(lc))
        rep = squarefree_linear_roots(lc.embed((t,)), t)
        roots += [r for r, _ in rep.roots]
        unresolved += [str(f) for f, _ in rep.clusters]
    uniq = sorted(set(roots), key=scalar_sort_key)
    return gb, tuple(uniq), tuple(dict.fromkeys(unresolved)), tuple(lcs)


def is_t_flat(ideal: Ideal, t: str = "t", extra_values: Sequence[Scalar] = ()) -> FlatnessCertificate:
    """Compare the generic fibre length over Q(t) with every candidate special fibre.

    Candidates are the field-rational roots of the leading coefficients (in t)
    of the generic block-order basis: away from them the basis specialises to a
    basis of the fibre, so the length cannot jump.  ``extra_values`` adds
    further t values to check (e.g. singular fibres).
    """
    if t not in ideal.vars:
        raise VariableMismatch(f"{t!r} is not a variable of {ideal.vars}")
    gb, cands, unresolved, lcs = jump_locus(ideal, t)
    gen_len = quotient_length(gb)
    if gen_len == INFINITE:
        raise NotZeroDimensional("generic fibre length is infinite")
    values = sorted(set(cands) | set(extra_values), key=scalar_sort_key)
    checked = tuple((t0, ideal_length(fibre_at(ideal, t, t0))) for t0 in values)
    if any(n != gen_len for _, n in checked):
        flat = False
    elif unresolved:
        flat = "undetermined"
    else:
        flat = True
    return FlatnessCertificate(flat, gen_len, checked, cands, unresolved, lcs)


def is_t_regular(ideal: Ideal, t: str = "t") -> bool:
    """Independent certificate: t is a non-zero-divisor iff (I : t) = I."""
    T = Poly.var(ideal.vars, t)
    return same_ideal(Ideal(ideal.gens, ideal.vars), ideal_quotient(Ideal(ideal.gens, ideal.vars), T))
