"""Weierstrass families y^2 z = x^3 + a2 x^2 z + a4 x z^2 + a6 z^3 over the t-line."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .exactalg.linalg import rank as matrix_rank
from .exactalg.parse import parse_poly
from .exactalg.poly import Poly, substitute
from .exactalg.roots import resultant_univ, squarefree_linear_roots
from .exactalg.scalar import Scalar, format_scalar, to_scalar
from .groebner.basis import Ideal, buchberger

T_VARS = ("t",)
AFFINE_VARS = ("x", "y", "t")
PROJ_VARS = ("x", "y", "z", "t")
SECTION = (Fraction(0), Fraction(1), Fraction(0))


class FamilyError(ValueError):
    pass


class CuspError(ValueError):
    """Raised when nodal machinery is asked to handle a cuspidal fibre."""


@dataclass(frozen=True)
class WeierstrassFamily:
    a2: Poly
    a4: Poly
    a6: Poly

    def __post_init__(self):
        for name in ("a2", "a4", "a6"):
            p = getattr(self, name)
            if not isinstance(p, Poly):
                p = Poly.const(T_VARS, to_scalar(p))
            if set(p.used_vars()) - {"t"}:
                raise FamilyError(f"{name} may only depend on t, got {p}")
            object.__setattr__(self, name, p.embed(T_VARS))
        # y^2 - p(x) factors only if p is a square, impossible for a cubic;
        # the section (0:1:0) lies on every fibre since F(0,1,0) = 0.
        if not substitute(self.projective_equation(), {"x": 0, "y": 1, "z": 0}).is_zero():
            raise FamilyError("section (0:1:0) does not lie on the family")

    @classmethod
    def from_text(cls, a2: str, a4: str, a6: str) -> "WeierstrassFamily":
        return cls(parse_poly(a2, T_VARS), parse_poly(a4, T_VARS), parse_poly(a6, T_VARS))

    @classmethod
    def from_json(cls, data) -> "WeierstrassFamily":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls.from_text(str(data["a2"]), str(data["a4"]), str(data["a6"]))
        except KeyError as exc:
            raise FamilyError(f"family JSON lacks key {exc}") from None

    def to_json(self) -> dict:
        return {"a2": str(self.a2), "a4": str(self.a4), "a6": str(self.a6)}

    def depends_on_t(self) -> bool:
        return any(p.used_vars() for p in (self.a2, self.a4, self.a6))

    def cubic(self, vars=("x", "t")) -> Poly:
        """p(x) = x^3 + a2 x^2 + a4 x + a6."""
        x = Poly.var(vars, "x")
        a2, a4, a6 = (c.embed(vars) for c in (self.a2, self.a4, self.a6))
        return x ** 3 + a2 * x ** 2 + a4 * x + a6

    def affine_equation(self, vars=AFFINE_VARS) -> Poly:
        """F in the chart z = 1: y^2 - p(x)."""
        y = Poly.var(vars, "y")
        return y ** 2 - self.cubic(vars)

    def projective_equation(self) -> Poly:
        x, y, z = (Poly.var(PROJ_VARS, v) for v in "xyz")
        a2, a4, a6 = (c.embed(PROJ_VARS) for c in (self.a2, self.a4, self.a6))
        return y ** 2 * z - x ** 3 - a2 * x ** 2 * z - a4 * x * z ** 2 - a6 * z ** 3

    def fibre_equation(self, t0) -> Poly:
        """Projective cubic in x, y, z at t = t0."""
        return substitute(self.projective_equation(), {"t": t0}, vars=("x", "y", "z"))

    def fibre_cubic(self, t0) -> Poly:
        return substitute(self.cubic(("x", "t")), {"t": t0}, vars=("x",))


@dataclass(frozen=True)
class FibreSingularity:
    """Singular point of a fibre.  ``t0`` is None for a t-independent family (every fibre)."""

    t0: Optional[Scalar]
    point: Tuple[Scalar, Scalar, Scalar]
    kind: str

    def to_json(self) -> dict:
        return {
            "t": None if self.t0 is None else format_scalar(self.t0),
            "point": [format_scalar(c) for c in self.point],
            "type": self.kind,
        }


@dataclass(frozen=True)
class SingularFibres:
    fibres: Tuple[FibreSingularity, ...]
    clusters: Tuple[Tuple[str, int], ...]


def discriminant(fam: WeierstrassFamily) -> Poly:
    """18 a2 a4 a6 - 4 a2^3 a6 + a2^2 a4^2 - 4 a4^3 - 27 a6^2 (the discriminant of the cubic in x)."""
    a2, a4, a6 = fam.a2, fam.a4, fam.a6
    return 18 * a2 * a4 * a6 - 4 * a2 ** 3 * a6 + a2 ** 2 * a4 ** 2 - 4 * a4 ** 3 - 27 * a6 ** 2


def discriminant_by_resultant(fam: WeierstrassFamily) -> Poly:
    """-Res_x(p, p'), which equals :func:`discriminant` for the monic cubic p."""
    p = fam.cubic(("x", "t"))
    return -resultant_univ(p, p.diff("x"), "x")


def _hessian_kind(fam: WeierstrassFamily, t0, x0) -> str:
    f = substitute(fam.affine_equation(), {"t": t0}, vars=("x", "y"))
    at = {"x": x0, "y": 0}
    rows = []
    for a in ("x", "y"):
        row = {}
        for j, b in enumerate(("x", "y")):
            c = substitute(f.diff(a).diff(b), at, vars=()).constant_value()
            if c != 0:
                row[j] = c
        rows.append(row)
    return "node" if matrix_rank(rows, [0, 1]) == 2 else "cusp"


def fibre_singularity(fam: WeierstrassFamily, t0) -> Optional[FibreSingularity]:
    """The singular point of the fibre at t0, or None if the fibre is smooth.

    Singular points of y^2 z = p lie in the chart z = 1 on y = 0 at a multiple
    root of p; the type is read off the rank of the Hessian there.
    """
    t0 = to_scalar(t0)
    p = fam.fibre_cubic(t0)
    for r, m in squarefree_linear_roots(p, "x").roots:
        if m >= 2:
            return FibreSingularity(t0, (r, Fraction(0), Fraction(1)), _hessian_kind(fam, t0, r))
    return None


def singular_fibres(fam: WeierstrassFamily) -> SingularFibres:
    """Singular fibres at field-rational roots of the discriminant; the rest as clusters."""
    delta = discriminant(fam)
    if delta.is_zero():
        if fam.depends_on_t():
            raise FamilyError("discriminant vanishes identically: every fibre is singular")
        sing = fibre_singularity(fam, 0)
        return SingularFibres((FibreSingularity(None, sing.point, sing.kind),), ())
    if delta.is_constant():
        return SingularFibres((), ())
    rep = squarefree_linear_roots(delta, "t")
    out = []
    for t0, _ in rep.roots:
        sing = fibre_singularity(fam, t0)
        if sing is None:
            raise ArithmeticError(f"discriminant vanishes at t={t0} but the fibre is smooth")
        out.append(sing)
    clusters = tuple((str(f), m) for f, m in rep.clusters)
    return SingularFibres(tuple(out), clusters)


def contains_curve(fam: WeierstrassFamily, cover: Ideal) -> bool:
    """True iff the affine family equation lies in the cover ideal (chart z = 1)."""
    if set(cover.vars) - set(AFFINE_VARS):
        raise FamilyError(f"cover variables {cover.vars} must be drawn from {AFFINE_VARS}")
    F = fam.affine_equation(AFFINE_VARS)
    plain = Ideal(tuple(g.embed(AFFINE_VARS) for g in cover.gens), AFFINE_VARS)
    return buchberger(plain).contains(F)


def _projective(point) -> Tuple[Scalar, Scalar, Scalar]:
    pt = tuple(to_scalar(c) for c in point)
    if len(pt) == 2:
        pt = pt + (Fraction(1),)
    if len(pt) != 3 or all(c == 0 for c in pt):
        raise ValueError(f"not a projective point: {point}")
    return pt


def on_fibre(fam: WeierstrassFamily, point, t0) -> bool:
    pt = _projective(point)
    F = fam.fibre_equation(t0)
    return substitute(F, dict(zip("xyz", pt)), vars=()).is_zero()


def smooth_locus_test(fam: WeierstrassFamily, point, t0) -> bool:
    """True iff ``point`` (on the fibre over t0) is a smooth point of that fibre."""
    pt = _projective(point)
    if not on_fibre(fam, pt, t0):
        raise ValueError(f"point {[format_scalar(c) for c in pt]} is not on the fibre t={format_scalar(to_scalar(t0))}")
    F = fam.fibre_equation(t0)
    at = dict(zip("xyz", pt))
    return any(not substitute(F.diff(v), at, vars=()).is_zero() for v in "xyz")


def normalize_projective(point) -> Tuple[Scalar, ...]:
    """Scale so the last nonzero coordinate is 1."""
    pt = _projective(point)
    for c in reversed(pt):
        if c != 0:
            return tuple(x / c for x in pt)
    raise ValueError("zero vector")


def projective_equal(p, q) -> bool:
    return normalize_projective(p) == normalize_projective(q)
