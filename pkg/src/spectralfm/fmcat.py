"""Descriptor-level Fourier-Mukai dictionary for torsion sheaves on fibres.

Kernel: ideal sheaf of the relative diagonal twisted by the section divisor on
both factors.  On a fibre, the skyscraper at a smooth point x goes to
I_x(sigma), a degree-zero line bundle; at the section point that bundle is
trivial.  At the node the images of the length-two modules are recorded
through the known correspondences M((1,1),1,lam) <-> B((1,-1),1,lam) and
N(0()1) <-> S(0,-1).

Charges are (rank, degree) pairs with the bookkeeping rule (r, d) -> (d, -r):
torsion of length n has charge (0, n) and maps to (n, 0); applying the rule
twice gives -id, the charge action of i* composed with the shift [-1] (the
twisting line bundle is trivial over the affine line).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .exactalg.parse import parse_scalar
from .exactalg.scalar import RatFunc, Scalar, format_scalar, specialize
from .nodelocal import LocalModuleType

SCHEMA_VERSION = 1
GENERIC = "generic"


class UnclassifiedTorsion(ValueError):
    pass


@dataclass(frozen=True)
class TorsionModuleDescriptor:
    """One torsion summand supported on a single fibre.

    ``point`` holds projective coordinates (x:y:z); ``cluster_degree`` is set
    instead when the summand is a group of points not defined over the
    coefficient field (the generic fibre always reports this way).
    """

    t0: Union[Scalar, str]
    length: int
    on_smooth_locus: bool
    point: Optional[Tuple[Scalar, Scalar, Scalar]] = None
    cluster_degree: Optional[int] = None
    local_type: Optional[LocalModuleType] = None
    at_section: bool = False
    i_moved: bool = False
    component: str = "affine"

    def __post_init__(self):
        if self.length < 1:
            raise ValueError("torsion descriptors have length >= 1")
        if (self.local_type is not None) == self.on_smooth_locus:
            raise ValueError("local_type is present exactly for summands at the node")
        if (self.point is None) == (self.cluster_degree is None):
            raise ValueError("give either a point or a cluster degree")

    def to_json(self) -> dict:
        return {
            "t": self.t0 if isinstance(self.t0, str) else format_scalar(self.t0),
            "point": None if self.point is None else [format_scalar(c) for c in self.point],
            "cluster_degree": self.cluster_degree,
            "length": self.length,
            "on_smooth_locus": self.on_smooth_locus,
            "local_type": None if self.local_type is None else self.local_type.to_json(),
            "at_section": self.at_section,
            "i_moved": self.i_moved,
            "component": self.component,
        }

    @classmethod
    def from_json(cls, d: dict) -> "TorsionModuleDescriptor":
        return cls(
            t0=d["t"] if d["t"] == GENERIC else parse_scalar(d["t"]),
            length=d["length"],
            on_smooth_locus=d["on_smooth_locus"],
            point=None if d["point"] is None else tuple(parse_scalar(c) for c in d["point"]),
            cluster_degree=d["cluster_degree"],
            local_type=None if d["local_type"] is None else LocalModuleType.from_json(d["local_type"]),
            at_section=d["at_section"],
            i_moved=d["i_moved"],
            component=d["component"],
        )

    def specialize(self, value) -> "TorsionModuleDescriptor":
        return replace(
            self,
            t0=self.t0 if isinstance(self.t0, str) else specialize(self.t0, value),
            point=None if self.point is None else tuple(specialize(c, value) for c in self.point),
            local_type=None if self.local_type is None else self.local_type.specialize(value),
        )


VARIANTS = ("trivial", "line_bundle", "node_ideal", "band_bundle", "string_sheaf", "undetermined")


@dataclass(frozen=True)
class SheafDescriptor:
    """Summary of a torsion-free sheaf on a fibre.

    ``params`` carries variant data: for band bundles the word, multiplicity
    and parameter; for string sheaves the label "(0,-1)" or "undetermined".
    ``notes`` records qualifiers such as "conjugate cluster".
    """

    variant: str
    rank: int
    degree: int
    locally_free: Optional[bool]
    indecomposable: Optional[bool]
    semistable: bool
    params: Tuple[Tuple[str, str], ...] = ()
    notes: Tuple[str, ...] = ()
    dualized: bool = False

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown sheaf variant {self.variant!r}")
        if self.rank < 1:
            raise ValueError("sheaf descriptors describe torsion-free sheaves of positive rank")

    @property
    def param_dict(self) -> Dict[str, str]:
        return dict(self.params)

    def label(self) -> str:
        p = self.param_dict
        if self.variant == "trivial":
            return "O (trivial)"
        if self.variant == "line_bundle":
            return "line bundle, degree %d" % self.degree
        if self.variant == "node_ideal":
            return "I_node(sigma)"
        if self.variant == "band_bundle":
            return f"B((1,-1),1,{p['parameter']})"
        if self.variant == "string_sheaf":
            return f"S{p['string']}" if p["string"] != "undetermined" else "S(undetermined)"
        return "undetermined"

    @property
    def is_undetermined(self) -> bool:
        return self.variant == "undetermined" or self.param_dict.get("string") == "undetermined"

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "label": self.label(),
            "rank": self.rank,
            "degree": self.degree,
            "locally_free": self.locally_free,
            "indecomposable": self.indecomposable,
            "semistable": self.semistable,
            "params": dict(self.params),
            "notes": list(self.notes),
            "dualized": self.dualized,
        }

    @classmethod
    def from_json(cls, d: dict) -> "SheafDescriptor":
        return cls(
            variant=d["variant"],
            rank=d["rank"],
            degree=d["degree"],
            locally_free=d["locally_free"],
            indecomposable=d["indecomposable"],
            semistable=d["semistable"],
            params=tuple(sorted(d["params"].items())),
            notes=tuple(d["notes"]),
            dualized=d["dualized"],
        )

    def specialize(self, value) -> "SheafDescriptor":
        if self.variant != "band_bundle":
            return self
        p = self.param_dict
        lam = parse_scalar(p["parameter"])
        if isinstance(lam, RatFunc):
            p["parameter"] = format_scalar(lam.evaluate(value))
        return replace(self, params=tuple(sorted(p.items())))


def trivial_bundle() -> SheafDescriptor:
    return SheafDescriptor("trivial", 1, 0, True, True, True)


def line_bundle(notes=()) -> SheafDescriptor:
    return SheafDescriptor("line_bundle", 1, 0, True, True, True, notes=tuple(notes))


def band_bundle(parameter: Scalar) -> SheafDescriptor:
    params = (("multiplicity", "1"), ("parameter", format_scalar(parameter)), ("word", "(1,-1)"))
    return SheafDescriptor("band_bundle", 2, 0, True, True, True, params)


def string_sheaf(label: str = "(0,-1)") -> SheafDescriptor:
    return SheafDescriptor("string_sheaf", 2, 0, False, True, True, (("string", label),))


def fm_torsion(descs: Sequence[TorsionModuleDescriptor]) -> List[SheafDescriptor]:
    """FM images, summand by summand."""
    out: List[SheafDescriptor] = []
    for d in descs:
        if d.on_smooth_locus:
            if d.cluster_degree is not None:
                if d.cluster_degree == d.length:
                    out += [line_bundle(("conjugate cluster",)) for _ in range(d.cluster_degree)]
                else:
                    out.append(
                        SheafDescriptor(
                            "undetermined", d.length, 0, None, None, True,
                            notes=(f"non-reduced cluster: {d.cluster_degree} points, length {d.length}",),
                        )
                    )
            elif d.length == 1:
                out.append(trivial_bundle() if d.at_section else line_bundle())
            else:
                out.append(
                    SheafDescriptor(
                        "undetermined", d.length, 0, None, None, True,
                        notes=(f"length-{d.length} module at a smooth point",),
                    )
                )
            continue
        lt = d.local_type
        if lt.kind == "simple":
            # I_x(sigma) holds for every point x of the fibre, the node included
            out.append(SheafDescriptor("node_ideal", 1, 0, False, True, True))
        elif lt.kind == "band":
            out.append(band_bundle(lt.parameter))
        elif lt.kind == "string" and lt.orientation == "xi" and lt.length == 2:
            out.append(string_sheaf("(0,-1)"))
        elif lt.kind == "string":
            out.append(string_sheaf("undetermined"))
        else:
            raise UnclassifiedTorsion(f"no FM rule for local type {lt.label()}")
    return out


@dataclass(frozen=True)
class ChargeVector:
    rank: int
    degree: int

    def __neg__(self):
        return ChargeVector(-self.rank, -self.degree)

    def __add__(self, other):
        return ChargeVector(self.rank + other.rank, self.degree + other.degree)


def charge_of(desc: Union[TorsionModuleDescriptor, SheafDescriptor]) -> ChargeVector:
    if isinstance(desc, TorsionModuleDescriptor):
        return ChargeVector(0, desc.length)
    return ChargeVector(desc.rank, desc.degree)


def charge_fm(c: ChargeVector) -> ChargeVector:
    return ChargeVector(c.degree, -c.rank)


def fm_square_charge(c: ChargeVector) -> ChargeVector:
    return charge_fm(charge_fm(c))


def dualize(s: SheafDescriptor) -> SheafDescriptor:
    """E -> E^dual: degree negated, rank / local freeness / semistability kept.

    The effect on band parameters is not computed; a flag records that the
    descriptor stands for the dual.
    """
    if not isinstance(s, SheafDescriptor):
        raise TypeError("dualize applies to torsion-free sheaf descriptors only")
    return replace(s, degree=-s.degree, dualized=not s.dualized)


def matlis_dual(t: TorsionModuleDescriptor) -> TorsionModuleDescriptor:
    """Ext^1(F, O) of a torsion summand: same length and fibre, support moved by the involution.

    The involution is not computed, so coordinates stay and ``i_moved`` toggles.
    """
    if not isinstance(t, TorsionModuleDescriptor):
        raise TypeError("matlis_dual applies to torsion descriptors only")
    return replace(t, i_moved=not t.i_moved)
