import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import BAND_COVER
from spectralfm.exactalg import LAMBDA
from spectralfm.fibration import SECTION, WeierstrassFamily
from spectralfm.spectral import (
    STAMP,
    BadParameter,
    CoverError,
    FibreEntry,
    SpectralCover,
    analyze,
    decompose_fibre,
    fibre_ideal,
    load_report,
)
from spectralfm.groebner import ideal_length


def labels(entry):
    return sorted(s.label() for s in entry.fm)


def test_decompose_band_example(band_cover):
    node, smooth = decompose_fibre(band_cover, 0)
    assert node.local_type.label() == "Band((1,1),1,lambda)" and node.length == 2
    assert smooth.on_smooth_locus and smooth.length == 1
    x, y, z = smooth.point
    assert (x, y) == (-4 * LAMBDA / (1 + LAMBDA) ** 2, 4 * LAMBDA * (LAMBDA - 1) / (1 + LAMBDA) ** 3)


def test_decompose_string_example(string_cover):
    (d,) = decompose_fibre(string_cover, 0)
    assert d.local_type.label() == "String(xi)" and d.point == (0, 0, 1)


def test_generic_fibre_is_one_cluster(band_cover):
    (d,) = decompose_fibre(band_cover, "generic")
    assert (d.length, d.cluster_degree) == (3, 3)


def test_section_component_on_every_fibre(section_cover):
    for t0 in ("generic", 0, 1, Fraction(-7, 3)):
        descs = decompose_fibre(section_cover, t0)
        section = [d for d in descs if d.at_section]
        assert len(section) == 1 and section[0].point == SECTION


def test_analyze_band_family(band_cover):
    r = analyze(band_cover)
    assert r.flatness.flat is True and r.stamp == STAMP
    assert labels(r.generic) == ["line bundle, degree 0"] * 3
    assert labels(r.fibre(0)) == ["B((1,-1),1,lambda)", "line bundle, degree 0"]


def test_analyze_string_family(string_cover):
    r = analyze(string_cover)
    assert r.stamp == STAMP and r.t_regular is True
    assert labels(r.generic) == ["line bundle, degree 0"] * 2
    (s,) = r.fibre(0).fm
    assert s.label() == "S(0,-1)" and not s.locally_free


def test_analyze_minus_one(section_cover):
    r = analyze(section_cover)
    assert labels(r.generic) == ["O (trivial)", "line bundle, degree 0", "line bundle, degree 0"]
    assert labels(r.fibre(0)) == ["B((1,-1),1,-1)", "O (trivial)"]


def test_flat_reports_conserve_length(band_cover, string_cover, section_cover):
    for cover in (band_cover, string_cover, section_cover):
        r = analyze(cover)
        for e in [r.generic] + r.fibres:
            assert e.total_length == r.generic.total_length == e.total_rank
            assert all(s.degree == 0 for s in e.fm)
        assert not any("failed" in w or "jumps" in w for w in r.warnings)


def test_report_is_deterministic(family):
    a = analyze(SpectralCover.from_json(family, BAND_COVER)).dumps()
    b = analyze(SpectralCover.from_json(family, json.loads(json.dumps(BAND_COVER)))).dumps()
    assert a == b


def test_report_round_trips(band_cover):
    data = json.loads(analyze(band_cover).dumps())
    parsed = load_report(data)
    assert parsed["generic"].to_json() == data["generic"]
    assert [e.to_json() for e in parsed["fibres"]] == data["fibres"]


def canon(entry: FibreEntry):
    return json.dumps(entry.to_json(), sort_keys=True)


@pytest.fixture(scope="module")
def symbolic_report(family):
    return analyze(SpectralCover.from_json(family, BAND_COVER))


@settings(max_examples=8, deadline=None)
@given(st.fractions(min_value=-6, max_value=6, max_denominator=3).filter(lambda v: v not in (0, 1, -1)))
def test_specialization_commutes(family, symbolic_report, lam):
    cover = SpectralCover.from_json(family, BAND_COVER)
    direct = analyze(cover, lam=lam)
    via = symbolic_report.specialize(lam)
    assert canon(via.generic) == canon(direct.generic)
    assert [canon(e) for e in via.fibres] == [canon(e) for e in direct.fibres]


def test_lambda_guards(band_cover, string_cover):
    with pytest.raises(BadParameter):
        analyze(band_cover, lam=0)
    with pytest.raises(BadParameter):
        analyze(string_cover, lam=2)
    r = analyze(band_cover, lam=-1)
    assert any("bad value" in w for w in r.warnings)
    assert any("lambda = 1" in w for w in analyze(band_cover, lam=1).warnings)


def test_cover_must_lie_on_family(family):
    with pytest.raises(CoverError):
        SpectralCover.from_json(family, {"gens": ["x", "y"]})
    with pytest.raises(CoverError):
        SpectralCover.from_json(family, {"gens": ["x + y", "x^2 + t*x + t"], "infinity_components": [{"type": "fibre"}]})


def test_non_flat_cover_gets_no_stamp(family):
    # x = 1/t runs off to infinity as t -> 0
    F = "y^2 - x^3 - x^2 - t*(1-t)*x + t^2"
    cover = SpectralCover.from_json(family, {"gens": ["t*x - 1", F]})
    r = analyze(cover)
    assert r.flatness.flat is False and r.stamp is None
    assert r.fibre(0).torsion == []
    assert ideal_length(fibre_ideal(cover, "generic")) == 2


def test_cusp_is_reported_not_dropped():
    fam = WeierstrassFamily.from_text("0", "0", "t")
    r = analyze(SpectralCover.from_json(fam, {"gens": ["x", "y^2 - t"]}))
    assert r.stamp is None and r.undetermined
    assert "CuspError" in r.fibre(0).error
    assert any("CuspError" in w for w in r.warnings)


def test_non_split_node_is_reported():
    fam = WeierstrassFamily.from_text("2", "0", "t")
    r = analyze(SpectralCover.from_json(fam, {"gens": ["x", "y^2 - t"]}))
    assert "NonSplitNode" in r.fibre(0).error
    assert [e.t0 for e in r.fibres] == [Fraction(-32, 27), Fraction(0)]
