import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import macaulay_length, random_ideal, to_text
from spectralfm.exactalg import Poly, lex, parse_poly
from spectralfm.groebner import (
    INFINITE,
    Ideal,
    NotZeroDimensional,
    buchberger,
    eliminate,
    ideal_length,
    ideal_quotient,
    is_reduced,
    is_t_flat,
    is_t_regular,
    jump_locus,
    local_length_at,
    quotient_length,
    radical_length,
    same_ideal,
    spoly_criterion_holds,
    support_points,
)

XY = ("x", "y")


def finite_random_ideals(count, seed0=0):
    """Random 2-variable ideals the oracle itself certifies as zero-dimensional."""
    out = []
    seed = seed0
    while len(out) < count:
        rng = random.Random(seed)
        seed += 1
        gens = random_ideal(rng, n_gens=rng.choice([2, 2, 3]))
        a, b = macaulay_length(gens), macaulay_length(gens, 11, 8)
        if a == b:
            out.append((gens, a))
    return out


ORACLE_CASES = finite_random_ideals(24)


@pytest.mark.parametrize("gens,expected", ORACLE_CASES)
def test_quotient_length_matches_macaulay_oracle(gens, expected):
    ideal = Ideal.from_text([to_text(g) for g in gens], XY)
    assert ideal_length(ideal) == expected


@st.composite
def small_ideals(draw):
    gens = []
    for _ in range(draw(st.integers(1, 3))):
        terms = {}
        for _ in range(draw(st.integers(1, 4))):
            e = (draw(st.integers(0, 3)), draw(st.integers(0, 3)))
            terms[e] = Fraction(draw(st.integers(-4, 4)))
        gens.append(Poly(XY, terms))
    return Ideal(tuple(gens), XY)


@settings(max_examples=40, deadline=None)
@given(small_ideals())
def test_basis_is_reduced_and_generates(ideal):
    gb = buchberger(ideal)
    assert is_reduced(gb)
    assert spoly_criterion_holds(gb)
    assert all(gb.contains(g) for g in ideal.gens)
    for g in gb.polys:
        assert buchberger(Ideal(ideal.gens, XY)).contains(g)


@settings(max_examples=30, deadline=None)
@given(small_ideals(), st.randoms(use_true_random=False))
def test_basis_independent_of_generator_order(ideal, rnd):
    gens = list(ideal.gens)
    rnd.shuffle(gens)
    assert buchberger(Ideal(tuple(gens), XY)).polys == buchberger(ideal).polys


@settings(max_examples=30, deadline=None)
@given(small_ideals())
def test_lex_and_grevlex_agree_on_length(ideal):
    assert quotient_length(buchberger(ideal)) == quotient_length(buchberger(ideal, lex("x", "y")))


def test_positive_dimensional_is_infinite():
    assert ideal_length(Ideal.from_text(["x*y"], XY)) == INFINITE
    with pytest.raises(NotZeroDimensional):
        radical_length(Ideal.from_text(["x*y"], XY))


def test_unit_ideal_has_length_zero():
    assert ideal_length(Ideal.from_text(["x", "x - 1"], XY)) == 0


def test_lengths_and_radical():
    ideal = Ideal.from_text(["x^2", "y^3"], XY)
    assert ideal_length(ideal) == 6
    assert radical_length(ideal) == 1
    assert ideal_length(Ideal.from_text(["x^2 - 2", "y"], XY)) == 2


def test_local_length_sums_to_global():
    ideal = Ideal.from_text(["y - x^2", "x^3*(x-1)"], XY)
    gens = list(ideal.gens)
    assert local_length_at(gens, {"x": 0, "y": 0}, 6) == 3
    assert local_length_at(gens, {"x": 1, "y": 1}, 6) == 1
    assert ideal_length(ideal) == 4


def test_support_points_with_cluster():
    ideal = Ideal.from_text(["y", "x^2*(x^2 - 3)"], XY)
    sup = support_points(ideal)
    assert [(p.coords, p.length) for p in sup.points] == [((Fraction(0), Fraction(0)), 2)]
    assert [(c.degree, c.length) for c in sup.clusters] == [(2, 2)]
    assert sup.total_length == 4


def test_eliminate():
    ideal = Ideal.from_text(["x - y^2", "y^2 - 2*y"], XY)
    g = eliminate(ideal, "x")
    assert g.embed(("x",)) == parse_poly("x^2 - 4*x", ("x",))


def test_ideal_quotient():
    ideal = Ideal.from_text(["x*y", "y^2"], XY)
    q = ideal_quotient(ideal, parse_poly("y", XY))
    assert same_ideal(q, Ideal.from_text(["x", "y"], XY))


def test_flatness_examples():
    xyt = ("x", "y", "t")
    flat = Ideal.from_text(["x + y", "x^2 + t*x + t"], xyt)
    cert = is_t_flat(flat, extra_values=[Fraction(0)])
    assert cert.flat is True and cert.generic_length == 2
    assert is_t_regular(flat)
    jumping = Ideal.from_text(["t*x - 1", "y"], xyt)
    cert = is_t_flat(jumping)
    assert cert.flat is False
    assert Fraction(0) in cert.jump_candidates
    torsion = Ideal.from_text(["t*x", "t*y", "x^2 - 1", "y"], xyt)
    assert not is_t_regular(torsion)


def test_jump_locus_reports_leading_coefficients():
    xyt = ("x", "y", "t")
    gb, roots, unresolved, lcs = jump_locus(Ideal.from_text(["(t^2 - 2)*(t - 3)*x - 1", "y"], xyt))
    assert roots == (Fraction(3),)
    assert unresolved
