"""Formal neighbourhood of a node: branch coordinates and length-two module types.

At a node (x0, 0) of y^2 = p(x) write p(x0 + X) = X^2 u(X) with u(0) = c != 0.
With x~ = X sqrt(u(X)) the local equation becomes y^2 - x~^2 = -(x~ - y)(x~ + y),
so xi = x~ - y and eta = x~ + y satisfy xi*eta = 0 and identify the completed
local ring with k[[xi, eta]]/(xi*eta).  In that ring every element is a
constant plus a series in xi plus a series in eta, so modulo (xi, eta)^N the
ring has basis 1, xi, ..., xi^(N-1), eta, ..., eta^(N-1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Dict, List, Optional, Sequence, Tuple

from .exactalg.linalg import Echelon
from .exactalg.poly import Poly, substitute
from .exactalg.scalar import RatFunc, Scalar, format_scalar, to_scalar
from .exactalg.series import TruncSeries, evaluate_poly, series_invert_map, series_sqrt_one_plus
from .fibration import CuspError, FibreSingularity, WeierstrassFamily

BRANCH_VARS = ("xi", "eta")
MIN_ORDER = 4


class NonSplitNode(ValueError):
    """The branch tangents are not defined over the coefficient field."""


class TruncationTooSmall(ArithmeticError):
    pass


class UnclassifiedModule(ValueError):
    def __init__(self, message, length=None, operators=None):
        super().__init__(message)
        self.length = length
        self.operators = operators


def _rational_sqrt(c: Scalar) -> Optional[Fraction]:
    if isinstance(c, RatFunc) or c <= 0:
        return None
    n, d = c.numerator, c.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class LocalModuleType:
    """Simple (length 1), Band((1,1),1,param) or String(orientation) of length 2."""

    kind: str
    length: int
    parameter: Optional[Scalar] = None
    orientation: Optional[str] = None
    word: Tuple[int, ...] = ()
    multiplicity: int = 1

    def __post_init__(self):
        if self.kind == "band":
            if self.parameter is None or self.parameter == 0:
                raise ValueError("band parameter must be nonzero")
            if self.length != 2:
                raise ValueError("only the length-two band M((1,1),1,lambda) is implemented")
        elif self.kind == "string":
            if self.orientation not in ("xi", "eta"):
                raise ValueError("string orientation must be 'xi' or 'eta'")
        elif self.kind == "simple":
            if self.length != 1:
                raise ValueError("simple modules have length one")
        else:
            raise ValueError(f"unknown local module kind {self.kind!r}")

    @classmethod
    def simple(cls) -> "LocalModuleType":
        return cls("simple", 1)

    @classmethod
    def band(cls, parameter) -> "LocalModuleType":
        return cls("band", 2, to_scalar(parameter), None, (1, 1), 1)

    @classmethod
    def string(cls, orientation: str, length: int = 2) -> "LocalModuleType":
        return cls("string", length, None, orientation)

    def label(self) -> str:
        if self.kind == "simple":
            return "Simple"
        if self.kind == "band":
            return f"Band((1,1),1,{format_scalar(self.parameter)})"
        return f"String({self.orientation})"

    def to_json(self) -> dict:
        d = {"kind": self.kind, "length": self.length, "label": self.label()}
        if self.kind == "band":
            d.update(word=list(self.word), multiplicity=self.multiplicity, parameter=format_scalar(self.parameter))
        if self.kind == "string":
            d["orientation"] = self.orientation
        return d

    @classmethod
    def from_json(cls, d) -> "LocalModuleType":
        from .exactalg.parse import parse_scalar

        if d["kind"] == "simple":
            return cls.simple()
        if d["kind"] == "band":
            return cls.band(parse_scalar(d["parameter"]))
        return cls.string(d["orientation"], d["length"])

    def specialize(self, value) -> "LocalModuleType":
        if self.kind == "band" and isinstance(self.parameter, RatFunc):
            return LocalModuleType.band(self.parameter.evaluate(value))
        return self


@dataclass(frozen=True)
class NodalChart:
    family: WeierstrassFamily
    singularity: FibreSingularity
    order: int
    x0: Scalar
    unit: Poly  # u(X), in the variable "x"
    xtilde: TruncSeries  # x~ as a series in the translated x
    x_series: TruncSeries  # translated x as a series in (xi, eta)
    y_series: TruncSeries  # y as a series in (xi, eta)
    local_equation: Poly = field(repr=False)  # y^2 - X^2 u(X) in translated (x, y)

    def with_order(self, order: int) -> "NodalChart":
        return build_chart(self.family, self.singularity, order)

    def pullback(self, p: Poly) -> TruncSeries:
        """Image of p(x, y) (fibre coordinates, node not translated) in k[[xi,eta]]/(xi*eta) mod degree N."""
        q = p.embed(("x", "y"))
        X = self.x_series + self.x0 if self.x0 != 0 else self.x_series
        s = evaluate_poly(q, {"x": X, "y": self.y_series})
        return drop_mixed(s)

    def xi_eta_defect(self) -> TruncSeries:
        """local equation + xi*eta; zero (mod degree N) for a valid chart."""
        s = evaluate_poly(self.local_equation, {"x": self.x_series, "y": self.y_series})
        xi_eta = TruncSeries(BRANCH_VARS, self.order, {(1, 1): 1})
        return s + xi_eta


def drop_mixed(s: TruncSeries) -> TruncSeries:
    return TruncSeries(s.vars, s.order, {e: c for e, c in s.items() if e[0] == 0 or e[1] == 0})


def build_chart(fam: WeierstrassFamily, sing: FibreSingularity, order: int = 8) -> NodalChart:
    """Branch coordinates at a node, verified to satisfy xi*eta = 0 mod (curve, degree order)."""
    if sing.kind != "node":
        raise CuspError(f"singular point of type {sing.kind!r}: only nodes can be classified")
    if order < MIN_ORDER:
        raise ValueError(f"truncation order must be at least {MIN_ORDER}")
    t0 = sing.t0 if sing.t0 is not None else Fraction(0)
    x0 = sing.point[0] / sing.point[2]
    p = fam.fibre_cubic(t0)  # in "x"
    X = Poly.var(("x",), "x")
    shifted = substitute(p, {"x": X + x0}, vars=("x",))
    unit = shifted.exact_div(X ** 2)
    c = unit.coeff((0,))
    if c == 0:
        raise CuspError("local equation has a degenerate quadratic part (cusp)")
    root_c = _rational_sqrt(c)
    if root_c is None:
        raise NonSplitNode(
            f"u(0) = {format_scalar(c)} is not a square in the coefficient field; "
            "the branches are not rational"
        )
    # x~ = X sqrt(u) = sqrt(c) X sqrt(1 + (u/c - 1))
    s = TruncSeries.from_poly(unit / c - 1, order)
    xtilde = TruncSeries.variable(("x",), "x", order) * series_sqrt_one_plus(s, order) * root_c
    inverse = series_invert_map(xtilde, order)
    xi = TruncSeries.variable(BRANCH_VARS, "xi", order)
    eta = TruncSeries.variable(BRANCH_VARS, "eta", order)
    x_series = inverse.compose((xi + eta) * Fraction(1, 2))
    y_series = (eta - xi) * Fraction(1, 2)
    Y = Poly.var(("x", "y"), "y")
    local_eq = Y ** 2 - shifted.embed(("x", "y"))
    chart = NodalChart(fam, sing, order, x0, unit, xtilde, x_series, y_series, local_eq)
    if not chart.xi_eta_defect().is_zero():
        raise ArithmeticError("branch coordinates do not satisfy xi*eta = 0")
    return chart


def _basis(N: int) -> List[Tuple[int, int]]:
    """Monomials of k[[xi,eta]]/(xi*eta, m^N), highest degree first (so 1 is never a pivot)."""
    out = []
    for d in range(N - 1, 0, -1):
        out += [(d, 0), (0, d)]
    out.append((0, 0))
    return out


def _shift(v: Dict, e: Tuple[int, int], N: int) -> Dict:
    out = {}
    for f, c in v.items():
        g = (f[0] + e[0], f[1] + e[1])
        if g[0] and g[1]:
            continue
        if sum(g) < N:
            out[g] = c
    return out


@dataclass
class LocalQuotient:
    order: int
    echelon: Echelon

    @property
    def length(self) -> int:
        return len(self.echelon.free())

    @property
    def basis(self) -> List[Tuple[int, int]]:
        return list(reversed(self.echelon.free()))

    def coordinates(self, v: Dict) -> List[Scalar]:
        r = self.echelon.reduce(v)
        return [r.get(b, Fraction(0)) for b in self.basis]

    def operator(self, e: Tuple[int, int]) -> List[List[Scalar]]:
        """Matrix (columns = images of basis vectors) of multiplication by the monomial e."""
        cols = [self.coordinates(_shift({b: 1}, e, self.order)) for b in self.basis]
        n = len(cols)
        return [[cols[j][i] for j in range(n)] for i in range(n)]


def local_quotient(chart: NodalChart, gens: Sequence[Poly]) -> LocalQuotient:
    N = chart.order
    ech = Echelon(_basis(N))
    # sparse high-degree multiples first: less fill-in during elimination
    monos = [m for d in range(N - 1, 0, -1) for m in ((d, 0), (0, d))] + [(0, 0)]
    for g in gens:
        s = chart.pullback(g)
        v = dict(s.items())
        if not v:
            continue
        for m in monos:
            ech.insert(_shift(v, m, N))
    return LocalQuotient(N, ech)


def default_order(expected_length: int) -> int:
    return max(MIN_ORDER, 2 * expected_length + 4)


def _stable_quotient(chart: NodalChart, gens: Sequence[Poly]) -> LocalQuotient:
    if not gens:
        raise ValueError("empty generator list: the local ring itself is not Artinian")
    q = local_quotient(chart, gens)
    n2 = local_quotient(chart.with_order(chart.order + 2), gens).length
    if q.length != n2:
        raise TruncationTooSmall(f"local length {q.length} at order {chart.order} but {n2} at order {chart.order + 2}")
    return q


def local_length(chart: NodalChart, gens: Sequence[Poly]) -> int:
    """Length of R^/(gens) at the node; must agree at orders N and N+2."""
    return _stable_quotient(chart, gens).length


def classify_local_module(chart: NodalChart, gens: Sequence[Poly]) -> LocalModuleType:
    """Read the module type off the multiplication operators of xi and eta.

    Length two: xi e = lam * (eta e) with both nonzero gives Band lam;
    eta e = 0 gives the xi-string R^/(xi^2, eta); xi e = 0 the eta-string.
    """
    q = _stable_quotient(chart, gens)
    n = q.length
    if n == 0:
        raise UnclassifiedModule("the node is not in the support of the module", 0)
    xi_op, eta_op = q.operator((1, 0)), q.operator((0, 1))
    ops = {"xi": xi_op, "eta": eta_op}
    # cyclic iff the maximal ideal (spanned by xi- and eta-images) has codimension one
    images = []
    for M in (xi_op, eta_op):
        for j in range(n):
            images.append({i: M[i][j] for i in range(n) if M[i][j] != 0})
    ech = Echelon(list(range(n)))
    for v in images:
        ech.insert(v)
    if ech.rank != n - 1:
        raise UnclassifiedModule("quotient is not cyclic", n, ops)
    if n == 1:
        return LocalModuleType.simple()
    if n > 2:
        raise UnclassifiedModule(f"unclassified: length {n} is beyond the implemented normal forms", n, ops)
    # e = 1 is basis vector 0; its images under xi and eta
    xe = [xi_op[i][0] for i in range(n)]
    ee = [eta_op[i][0] for i in range(n)]
    if any(xe) and any(ee):
        lam = xe[1] / ee[1]
        if [lam * a for a in ee] != xe:
            raise UnclassifiedModule("xi and eta act non-proportionally", n, ops)
        return LocalModuleType.band(lam)
    if any(xe):
        return LocalModuleType.string("xi", 2)
    if any(ee):
        return LocalModuleType.string("eta", 2)
    raise UnclassifiedModule("maximal ideal acts by zero on a length-two module", n, ops)
