"""Command-line interface: ``spectralfm <subcommand> --family f.json [--cover c.json] ...``.

Exit status: 0 success, 2 input error, 3 undetermined or unclassified result
(the partial output is still written).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, List, Optional

from .exactalg.parse import ParseError, parse_scalar
from .exactalg.roots import squarefree_linear_roots
from .exactalg.scalar import RatFunc, format_scalar
from .fibration import (
    CuspError,
    FamilyError,
    WeierstrassFamily,
    discriminant,
    discriminant_by_resultant,
    fibre_singularity,
    singular_fibres,
)
from .fmcat import GENERIC, UnclassifiedTorsion, fm_torsion
from .groebner import INFINITE, NotZeroDimensional, ideal_length, support_points
from .nodelocal import NonSplitNode, TruncationTooSmall, UnclassifiedModule, build_chart, classify_local_module, default_order
from .spectral import CoverError, SpectralCover, analyze, decompose_fibre, fibre_ideal

EXIT_OK, EXIT_INPUT, EXIT_UNDETERMINED = 0, 2, 3
UNDETERMINED_ERRORS = (UnclassifiedModule, UnclassifiedTorsion, NonSplitNode, CuspError, TruncationTooSmall, NotZeroDimensional)


class InputError(Exception):
    pass


def _rational(text: str, flag: str) -> Fraction:
    try:
        v = parse_scalar(text)
    except ParseError as exc:
        raise InputError(f"{flag}: {exc}") from None
    if isinstance(v, RatFunc):
        raise InputError(f"{flag} must be a rational number, got {text!r}")
    return v


def _load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def _family(args) -> WeierstrassFamily:
    return WeierstrassFamily.from_json(_load_json(args.family))


def _cover(args, fam) -> SpectralCover:
    if not args.cover:
        raise InputError(f"{args.command} needs --cover")
    return SpectralCover.from_json(fam, _load_json(args.cover))


def _specialised_cover(args, fam) -> SpectralCover:
    cover = _cover(args, fam)
    if args.lam is not None:
        cover = cover.specialize_parameter(_rational(args.lam, "--lambda"))
    return cover


def _t_value(args, allow_generic=True):
    if args.t is None or args.t == GENERIC:
        if not allow_generic:
            raise InputError(f"{args.command} needs --t")
        return GENERIC
    return _rational(args.t, "--t")


def _t_text(t0) -> str:
    return t0 if t0 == GENERIC else format_scalar(t0)


# -- subcommands: each returns (payload, undetermined?) ----------------------

def cmd_discriminant(args):
    fam = _family(args)
    delta = discriminant(fam)
    payload = {
        "discriminant": str(delta),
        "degree": None if delta.is_zero() else delta.total_degree(),
        "normalization": "18 a2 a4 a6 - 4 a2^3 a6 + a2^2 a4^2 - 4 a4^3 - 27 a6^2 = -Res_x(p, p')",
        "matches_resultant": delta == discriminant_by_resultant(fam),
    }
    if not delta.is_zero() and not delta.is_constant():
        rep = squarefree_linear_roots(delta, "t")
        payload["rational_roots"] = [{"t": format_scalar(r), "multiplicity": m} for r, m in rep.roots]
        payload["other_factors"] = [{"factor": str(f), "multiplicity": m} for f, m in rep.clusters]
    return payload, False


def cmd_singular_fibres(args):
    sing = singular_fibres(_family(args))
    return {
        "fibres": [s.to_json() for s in sing.fibres],
        "non_rational": [{"factor": f, "multiplicity": m} for f, m in sing.clusters],
    }, False


def cmd_fibre_length(args):
    fam = _family(args)
    t0 = _t_value(args)
    n = ideal_length(fibre_ideal(_specialised_cover(args, fam), t0))
    return {"t": _t_text(t0), "length": "infinite" if n == INFINITE else int(n)}, n == INFINITE


def cmd_support(args):
    fam = _family(args)
    t0 = _t_value(args, allow_generic=False)
    sup = support_points(fibre_ideal(_specialised_cover(args, fam), t0))
    return {
        "t": _t_text(t0),
        "total_length": sup.total_length,
        "points": [
            {"point": [format_scalar(c) for c in p.coords] + ["1"], "length": p.length} for p in sup.points
        ],
        "clusters": [{"degree": c.degree, "length": c.length} for c in sup.clusters],
    }, False


def cmd_localize(args):
    fam = _family(args)
    t0 = _t_value(args, allow_generic=False)
    sing = fibre_singularity(fam, t0)
    if sing is None:
        raise InputError(f"the fibre at t={format_scalar(t0)} is smooth: there is no node to localise at")
    payload = {"t": format_scalar(t0), "node": sing.to_json()}
    ideal = fibre_ideal(_specialised_cover(args, fam), t0)
    N = args.trunc if args.trunc is not None else default_order(int(ideal_length(ideal)))
    payload["truncation"] = N
    try:
        lt = classify_local_module(build_chart(fam, sing, N), list(ideal.gens))
    except UnclassifiedModule as exc:
        if exc.length == 0:
            payload.update(length=0, local_type=None, note="the node is not in the support")
            return payload, False
        payload.update(length=exc.length, local_type=None, error=str(exc))
        return payload, True
    payload.update(length=lt.length, local_type=lt.to_json())
    return payload, False


def cmd_fm(args):
    fam = _family(args)
    t0 = _t_value(args)
    descs = decompose_fibre(_specialised_cover(args, fam), t0, args.trunc)
    images = fm_torsion(descs)
    payload = {
        "t": _t_text(t0),
        "torsion": [d.to_json() for d in descs],
        "fm": [s.to_json() for s in images],
        "total_length": sum(d.length for d in descs),
        "total_rank": sum(s.rank for s in images),
    }
    return payload, any(s.is_undetermined for s in images)


def cmd_analyze(args):
    fam = _family(args)
    cover = _cover(args, fam)
    lam = None if args.lam is None else _rational(args.lam, "--lambda")
    report = analyze(cover, trunc=args.trunc, lam=lam)
    return report.to_json(), report.undetermined


COMMANDS = {
    "discriminant": (cmd_discriminant, "discriminant of the family and its roots"),
    "singular-fibres": (cmd_singular_fibres, "singular fibres with node/cusp type"),
    "fibre-length": (cmd_fibre_length, "length of the cover's fibre over t (default: generic)"),
    "support": (cmd_support, "support points of the cover on the fibre over t"),
    "localize": (cmd_localize, "local module type of the cover at the node of the fibre over t"),
    "fm": (cmd_fm, "torsion summands and FM images on the fibre over t (default: generic)"),
    "analyze": (cmd_analyze, "full degeneration report"),
}


# -- rendering ----------------------------------------------------------------

def flatten(obj, prefix="") -> List[tuple]:
    """Leaf paths of a JSON value, in document order."""
    if isinstance(obj, dict):
        rows = []
        for k, v in obj.items():
            rows += flatten(v, f"{prefix}.{k}" if prefix else k)
        return rows or [(prefix, "{}")]
    if isinstance(obj, list):
        rows = []
        for i, v in enumerate(obj):
            rows += flatten(v, f"{prefix}[{i}]")
        return rows or [(prefix, "[]")]
    return [(prefix, json.dumps(obj, ensure_ascii=False))]


def render(payload, fmt: str) -> str:
    if fmt == "table":
        rows = flatten(payload)
        width = max(len(k) for k, _ in rows)
        return "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows)
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spectralfm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--family", required=True, help="family JSON {a2, a4, a6}")
        if name not in ("discriminant", "singular-fibres"):
            p.add_argument("--cover", help="cover JSON {gens, infinity_components}")
            p.add_argument("--lambda", dest="lam", metavar="Q", help="specialise lambda to the rational Q")
            p.add_argument("--t", help="fibre value (rational, or 'generic')")
            p.add_argument("--trunc", type=int, metavar="N", help="truncation order for node-local work")
        p.add_argument("--out", help="write output here instead of standard output")
        p.add_argument("--format", choices=("json", "table"), default="json")
    return parser


def run(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    for name in ("lam", "t", "trunc", "cover"):
        args.__dict__.setdefault(name, None)
    if args.trunc is not None and args.trunc < 4:
        print("error: --trunc must be at least 4", file=stderr)
        return EXIT_INPUT
    handler = COMMANDS[args.command][0]
    try:
        payload, undetermined = handler(args)
    except (InputError, ParseError, FamilyError, CoverError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    except UNDETERMINED_ERRORS as exc:
        payload, undetermined = {"error": f"{type(exc).__name__}: {exc}"}, True
    text = render(payload, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    if undetermined:
        print("undetermined or unclassified result (see output)", file=stderr)
        return EXIT_UNDETERMINED
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
