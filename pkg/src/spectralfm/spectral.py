"""Spectral covers: fibrewise torsion decomposition, FM images and the degeneration report."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .exactalg.parse import parse_poly, parse_scalar
from .exactalg.scalar import PARAM, Scalar, format_scalar, scalar_sort_key, specialize, to_scalar
from .fibration import (
    AFFINE_VARS,
    SECTION,
    CuspError,
    FamilyError,
    WeierstrassFamily,
    contains_curve,
    discriminant,
    fibre_singularity,
    singular_fibres,
    smooth_locus_test,
)
from .fmcat import (
    GENERIC,
    SCHEMA_VERSION,
    SheafDescriptor,
    TorsionModuleDescriptor,
    UnclassifiedTorsion,
    fm_torsion,
)
from .groebner import (
    INFINITE,
    FlatnessCertificate,
    Ideal,
    NotZeroDimensional,
    fibre_at,
    ideal_length,
    is_t_flat,
    is_t_regular,
    radical_length,
    support_points,
)
from .nodelocal import (
    NonSplitNode,
    TruncationTooSmall,
    UnclassifiedModule,
    build_chart,
    classify_local_module,
    default_order,
)

INFINITY_KINDS = ("section",)
STAMP = "S-flat FM family"
BAD_LAMBDAS = (Fraction(0), Fraction(-1))
FLAGGED_LAMBDAS = (Fraction(1),)

FibreValue = Union[Scalar, str]


class CoverError(ValueError):
    pass


class BadParameter(CoverError):
    pass


@dataclass(frozen=True)
class SpectralCover:
    """A curve in the total space given in the chart z = 1, plus declared components at infinity."""

    family: WeierstrassFamily
    ideal: Ideal
    infinity_components: Tuple[str, ...] = ()

    def __post_init__(self):
        extra = set(self.ideal.vars) - set(AFFINE_VARS)
        if extra:
            raise CoverError(f"cover variables must be drawn from {AFFINE_VARS}, got {sorted(extra)}")
        gens = tuple(g.embed(AFFINE_VARS) for g in self.ideal.gens)
        object.__setattr__(self, "ideal", Ideal(gens, AFFINE_VARS))
        for kind in self.infinity_components:
            if kind not in INFINITY_KINDS:
                raise CoverError(f"unsupported component at infinity {kind!r}")
        if not contains_curve(self.family, self.ideal):
            raise CoverError("the cover is not contained in the family (F is not in the ideal)")

    @classmethod
    def from_json(cls, family: WeierstrassFamily, data) -> "SpectralCover":
        if isinstance(data, str):
            data = json.loads(data)
        if "gens" not in data:
            raise CoverError("cover JSON lacks 'gens'")
        vars = tuple(data.get("vars", AFFINE_VARS))
        gens = tuple(parse_poly(g, vars) for g in data["gens"])
        inf = tuple(c["type"] for c in data.get("infinity_components", ()))
        return cls(family, Ideal(gens, vars), inf)

    def to_json(self) -> dict:
        return {
            "gens": [str(g) for g in self.ideal.gens],
            "infinity_components": [{"type": k} for k in self.infinity_components],
        }

    def has_parameter(self) -> bool:
        return any(g.has_parameter() for g in self.ideal.gens)

    def specialize_parameter(self, value) -> "SpectralCover":
        if not self.has_parameter():
            raise BadParameter(f"the cover does not involve {PARAM}; nothing to specialise")
        value = to_scalar(value)
        if value == 0:
            raise BadParameter(f"{PARAM} = 0 is excluded")
        gens = tuple(g.specialize_parameter(value) for g in self.ideal.gens)
        return SpectralCover(self.family, Ideal(gens, AFFINE_VARS), self.infinity_components)


def fibre_ideal(cover: SpectralCover, t0: FibreValue) -> Ideal:
    """Restriction to the fibre over t0; over Q(t) (t as a parameter) for ``"generic"``."""
    if t0 == GENERIC:
        return Ideal(cover.ideal.gens, AFFINE_VARS, ("t",))
    return fibre_at(cover.ideal, "t", to_scalar(t0))


def _section_descriptor(t0) -> TorsionModuleDescriptor:
    return TorsionModuleDescriptor(
        t0, 1, True, point=SECTION, at_section=True, component="section"
    )


def decompose_fibre(cover: SpectralCover, t0: FibreValue, trunc: Optional[int] = None) -> List[TorsionModuleDescriptor]:
    """Torsion summands of the cover's structure sheaf restricted to one fibre.

    Rational support points on the smooth locus become simple (or longer)
    summands; a point at the node of the fibre goes through the nodal
    classifier.  On the generic fibre the affine part is reported as one
    group of conjugate points.  Order: node summand, smooth points (by
    coordinates), clusters, components at infinity.
    """
    out: List[TorsionModuleDescriptor] = []
    ideal = fibre_ideal(cover, t0)
    if t0 == GENERIC:
        n = ideal_length(ideal)
        if n == INFINITE:
            raise NotZeroDimensional("generic fibre of the cover is not finite")
        if n:
            out.append(TorsionModuleDescriptor(GENERIC, int(n), True, cluster_degree=radical_length(ideal)))
    else:
        t0 = to_scalar(t0)
        sup = support_points(ideal)
        sing = fibre_singularity(cover.family, t0)
        node_xy = None if sing is None else (sing.point[0] / sing.point[2], sing.point[1] / sing.point[2])
        for p in sup.points:
            proj = (p.coords[0], p.coords[1], Fraction(1))
            if node_xy is not None and tuple(p.coords) == node_xy:
                N = trunc if trunc is not None else default_order(sup.total_length)
                chart = build_chart(cover.family, sing, N)
                lt = classify_local_module(chart, list(ideal.gens))
                if lt.length != p.length:
                    raise ArithmeticError(
                        f"node-local length {lt.length} disagrees with support length {p.length}"
                    )
                out.insert(0, TorsionModuleDescriptor(t0, p.length, False, point=proj, local_type=lt))
            else:
                if not smooth_locus_test(cover.family, proj, t0):
                    raise ArithmeticError("support point is singular but not the fibre's node")
                out.append(TorsionModuleDescriptor(t0, p.length, True, point=proj))
        for c in sup.clusters:
            out.append(TorsionModuleDescriptor(t0, c.length, True, cluster_degree=c.degree))
    for kind in cover.infinity_components:
        if kind == "section":
            out.append(_section_descriptor(t0))
    return out


@dataclass
class FibreEntry:
    t0: FibreValue
    torsion: List[TorsionModuleDescriptor] = field(default_factory=list)
    fm: List[SheafDescriptor] = field(default_factory=list)
    singular: bool = False
    error: Optional[str] = None

    @property
    def total_length(self) -> int:
        return sum(d.length for d in self.torsion)

    @property
    def total_rank(self) -> int:
        return sum(s.rank for s in self.fm)

    def to_json(self) -> dict:
        return {
            "t": self.t0 if isinstance(self.t0, str) else format_scalar(self.t0),
            "singular_fibre": self.singular,
            "total_length": self.total_length,
            "total_rank": self.total_rank,
            "torsion": [d.to_json() for d in self.torsion],
            "fm": [s.to_json() for s in self.fm],
            "error": self.error,
        }

    @classmethod
    def from_json(cls, d: dict) -> "FibreEntry":
        return cls(
            d["t"] if d["t"] == GENERIC else parse_scalar(d["t"]),
            [TorsionModuleDescriptor.from_json(x) for x in d["torsion"]],
            [SheafDescriptor.from_json(x) for x in d["fm"]],
            d["singular_fibre"],
            d["error"],
        )

    def specialize(self, value) -> "FibreEntry":
        return FibreEntry(
            self.t0 if isinstance(self.t0, str) else specialize(self.t0, value),
            [d.specialize(value) for d in self.torsion],
            [s.specialize(value) for s in self.fm],
            self.singular,
            self.error,
        )


@dataclass
class DegenerationReport:
    family: WeierstrassFamily
    cover: SpectralCover
    parameter: Optional[str]
    flatness: FlatnessCertificate
    t_regular: Optional[bool]
    generic: FibreEntry
    fibres: List[FibreEntry]
    warnings: List[str]
    stamp: Optional[str]
    coverage: str

    @property
    def undetermined(self) -> bool:
        if self.flatness.flat == "undetermined":
            return True
        for e in [self.generic] + self.fibres:
            if e.error or any(s.is_undetermined for s in e.fm):
                return True
        return False

    def specialize(self, value) -> "DegenerationReport":
        """Substitute lambda := value in every descriptor (t-values and points included)."""
        return DegenerationReport(
            self.family, self.cover, format_scalar(to_scalar(value)), self.flatness, self.t_regular,
            self.generic.specialize(value), [e.specialize(value) for e in self.fibres],
            list(self.warnings), self.stamp, self.coverage,
        )

    def fibre(self, t0) -> FibreEntry:
        t0 = to_scalar(t0)
        for e in self.fibres:
            if e.t0 == t0:
                return e
        raise KeyError(f"no analysed fibre at t={format_scalar(t0)}")

    def to_json(self) -> dict:
        return {
            "schema": f"spectralfm.report/{SCHEMA_VERSION}",
            "family": self.family.to_json(),
            "cover": self.cover.to_json(),
            "parameter": self.parameter,
            "flatness": dict(self.flatness.to_json(), t_regular_certificate=self.t_regular),
            "generic": self.generic.to_json(),
            "fibres": [e.to_json() for e in self.fibres],
            "stamp": self.stamp,
            "coverage": self.coverage,
            "undetermined": self.undetermined,
            "warnings": list(self.warnings),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False) + "\n"


_RECOVERABLE = (NotZeroDimensional, UnclassifiedModule, UnclassifiedTorsion, CuspError, NonSplitNode, TruncationTooSmall)


def _entry(cover, t0, trunc, warnings, singular=False) -> FibreEntry:
    e = FibreEntry(t0, singular=singular)
    try:
        e.torsion = decompose_fibre(cover, t0, trunc)
        e.fm = fm_torsion(e.torsion)
    except _RECOVERABLE as exc:
        where = "generic fibre" if t0 == GENERIC else f"t={format_scalar(t0)}"
        e.error = f"{type(exc).__name__}: {exc}"
        warnings.append(f"{where}: {e.error}")
    return e


def analyze(cover: SpectralCover, trunc: Optional[int] = None, lam=None) -> DegenerationReport:
    """Flatness, generic and special fibres, FM images, consistency checks.

    With ``lam`` the cover's parameter is specialised first; lambda = 0 is
    rejected and lambda = -1, 1 are flagged in the warnings.
    """
    warnings: List[str] = []
    parameter = None
    if lam is not None:
        lam = to_scalar(lam)
        cover = cover.specialize_parameter(lam)
        parameter = format_scalar(lam)
        if lam == -1 and "section" not in cover.infinity_components:
            warnings.append(
                f"{PARAM} = -1 is a bad value: part of the cover lies at infinity; "
                "declare the section component to account for it"
            )
        if lam in FLAGGED_LAMBDAS:
            warnings.append(f"{PARAM} = 1: the support points meet in a non-generic configuration")
    fam = cover.family
    if discriminant(fam).is_zero():
        raise FamilyError("every fibre of the family is singular; no generic smooth fibre to compare with")
    sing = singular_fibres(fam)
    sing_ts = [s.t0 for s in sing.fibres]
    for f, _ in sing.clusters:
        warnings.append(f"singular fibres at the roots of {f} are not field-rational and were not analysed")

    flat = is_t_flat(cover.ideal, "t", extra_values=sing_ts)
    for f in flat.unresolved:
        warnings.append(f"flatness jump candidates at the roots of {f} are not field-rational")
    t_regular = is_t_regular(cover.ideal, "t")
    if (flat.flat is True) != t_regular and flat.flat != "undetermined":
        warnings.append("length test and (I : t) = I certificate disagree")

    generic = _entry(cover, GENERIC, trunc, warnings)
    values = sorted(set(sing_ts) | set(flat.jump_candidates), key=scalar_sort_key)
    fibres = [_entry(cover, t0, trunc, warnings, singular=t0 in sing_ts) for t0 in values]

    if cover.has_parameter():
        warnings.append(
            f"symbolic {PARAM}: results hold for generic {PARAM}; values making a coefficient "
            f"denominator or the band parameter vanish (always including {PARAM} = 0) need a separate run"
        )

    for e in [generic] + fibres:
        if e.error:
            continue
        if e.total_rank != e.total_length:
            warnings.append(f"charge conservation failed at {e.t0}: length {e.total_length}, rank {e.total_rank}")
        if any(s.degree != 0 for s in e.fm):
            warnings.append(f"nonzero degree in the FM image at {e.t0}")
        if flat.flat is True and e.total_length != generic.total_length:
            warnings.append(f"flat cover but fibre length jumps at {e.t0}")

    ok = flat.flat is True and not any(e.error for e in [generic] + fibres)
    stamp = STAMP if ok else None
    checked = ", ".join(format_scalar(v) for v in values) or "none"
    coverage = (
        "fibre images verified to be sheaves at the generic fibre and at t in {" + checked + "}; "
        "other fibres are covered by the generic analysis"
    )
    return DegenerationReport(fam, cover, parameter, flat, t_regular, generic, fibres, warnings, stamp, coverage)


def load_report(data) -> dict:
    """Parse report JSON back into typed fibre entries (other fields are kept as plain JSON)."""
    if isinstance(data, str):
        data = json.loads(data)
    if data.get("schema") != f"spectralfm.report/{SCHEMA_VERSION}":
        raise ValueError(f"unsupported report schema {data.get('schema')!r}")
    out = dict(data)
    out["generic"] = FibreEntry.from_json(data["generic"])
    out["fibres"] = [FibreEntry.from_json(e) for e in data["fibres"]]
    return out
