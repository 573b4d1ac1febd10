from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectralfm.exactalg import parse_poly
from spectralfm.fibration import CuspError, WeierstrassFamily, fibre_singularity
from spectralfm.nodelocal import (
    LocalModuleType,
    NonSplitNode,
    UnclassifiedModule,
    build_chart,
    classify_local_module,
    local_length,
)

XY = ("x", "y")


def P(text):
    return parse_poly(text, XY)


@pytest.fixture(scope="module")
def chart(family):
    return build_chart(family, fibre_singularity(family, 0), 8)


def test_chart_satisfies_branch_equation(chart):
    assert chart.xi_eta_defect().is_zero()
    assert chart.with_order(12).xi_eta_defect().is_zero()


def test_chart_pulls_back_the_curve_to_zero(chart, family):
    from spectralfm.exactalg import substitute

    F = substitute(family.affine_equation(), {"t": 0}, vars=XY)
    assert chart.pullback(F).is_zero()


def test_reference_local_types(chart):
    band = classify_local_module(chart, [P("(1+lambda)*y - (1-lambda)*x"), P("y^2 - x^3 - x^2")])
    assert band.label() == "Band((1,1),1,lambda)"
    assert classify_local_module(chart, [P("x"), P("y^2")]).label() == "Band((1,1),1,-1)"
    assert classify_local_module(chart, [P("x + y"), P("x^2")]).label() == "String(xi)"


def test_other_types(chart):
    assert classify_local_module(chart, [P("x - y"), P("x^2")]).label() == "String(eta)"
    assert classify_local_module(chart, [P("x"), P("y")]) == LocalModuleType.simple()
    with pytest.raises(UnclassifiedModule, match="length 3"):
        classify_local_module(chart, [P("y - x"), P("x^3")])
    with pytest.raises(UnclassifiedModule):
        classify_local_module(chart, [P("x - 1"), P("y")])


def test_band_parameter_tracks_slope(chart):
    # the line (1+l) y = (1-l) x through the node gives Band l
    for lam in (Fraction(2), Fraction(-1, 2), Fraction(5, 3)):
        m = (1 - lam) / (1 + lam)
        lt = classify_local_module(chart, [P(f"y - ({m})*x"), P("x^2")])
        assert lt.parameter == lam


def test_non_split_and_cusp():
    fam = WeierstrassFamily.from_text("2", "0", "0")
    with pytest.raises(NonSplitNode):
        build_chart(fam, fibre_singularity(fam, 0), 6)
    square = WeierstrassFamily.from_text("1/4", "0", "0")
    assert build_chart(square, fibre_singularity(square, 0), 6).xi_eta_defect().is_zero()
    cusp = WeierstrassFamily.from_text("0", "0", "0")
    with pytest.raises(CuspError):
        build_chart(cusp, fibre_singularity(cusp, 0), 6)


def test_descriptor_json_round_trip():
    for lt in (LocalModuleType.simple(), LocalModuleType.band(Fraction(-3, 2)), LocalModuleType.string("eta")):
        assert LocalModuleType.from_json(lt.to_json()) == lt


# -- invariance properties ----------------------------------------------------

BASE = [
    ["(1+lambda)*y - (1-lambda)*x", "y^2 - x^3 - x^2"],
    ["x", "y^2"],
    ["x + y", "x^2"],
]
units = st.sampled_from(["2", "-1/3", "1 + x", "3 - y + x^2", "1 + x*y"])
multipliers = st.sampled_from(["0", "1", "x", "y^2 - 3", "x*y + 2"])


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(BASE), units, units, multipliers)
def test_type_invariant_under_units_and_mixing(chart, base, u1, u2, h):
    gens = [P(g) for g in base]
    expected = classify_local_module(chart, gens)
    scaled = [gens[0] * P(u1), gens[1] * P(u2)]
    mixed = [gens[0], gens[1] + P(h) * gens[0]]
    assert classify_local_module(chart, scaled) == expected
    assert classify_local_module(chart, mixed) == expected


@pytest.mark.parametrize("base", BASE)
def test_type_invariant_under_truncation(chart, base):
    gens = [P(g) for g in base]
    assert classify_local_module(chart, gens) == classify_local_module(chart.with_order(10), gens)
    assert local_length(chart, gens) == 2


@settings(max_examples=20, deadline=None)
@given(
    st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(lambda v: v not in (0, 1, -1)),
    st.integers(-3, 3),
    st.integers(-3, 3),
)
def test_higher_order_perturbations_keep_type(chart, lam, a, b):
    m = (1 - lam) / (1 + lam)
    band = classify_local_module(chart, [P(f"y - ({m})*x + ({a})*x^2"), P(f"x^2 + ({b})*y^3")])
    assert band == LocalModuleType.band(lam)
    string = classify_local_module(chart, [P(f"x + y + ({a})*x^2"), P(f"x^2 + ({b})*x^3")])
    assert string == LocalModuleType.string("xi")
