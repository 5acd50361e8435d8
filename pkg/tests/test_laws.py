import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from difflaws import expr as E
from difflaws import laws as L
from difflaws import prolong as P
from difflaws.errors import (
    DomainMismatchError, LawConstructionError, NotInvertibleError, UnsupportedOperationError,
)
from difflaws.rings import Integers, MatrixRing, ModN, Rationals
from oracles import Dual, directional_derivative, poly_eval, poly_text, random_poly

Z, Q, Z5 = Integers(), Rationals(), ModN(5)


def arrow(law, x, v, t):
    return law.domain.arrow1(x, v, t)


# constructors

def test_constant_law():
    law = L.constant_law(Q, 5)
    assert law.F((Fraction(3),), (Fraction(7),), Fraction(2)) == (0,)
    assert L.check_law_axioms(law).passed


def test_identity_law():
    law = L.identity_law(P.LinearSet(Z))
    a = arrow(law, 3, 4, 5)
    assert L.apply1(law, a) == law.codomain.arrow1(3, 4, 5)


def test_affine_law():
    law = L.affine_law(Z, [[2]], [1])
    assert E.to_text(law.base[0]) == "2*x + 1" and E.to_text(law.factorizer[0]) == "2*v"
    assert L.apply1(law, arrow(law, 4, 3, 7)) == law.codomain.arrow1(9, 6, 7)


def test_linear_law_dimension_mismatch():
    with pytest.raises(DomainMismatchError):
        L.linear_law(P.LinearSet(Q, 2), [[1, 2, 3]])


def test_bilinear_multiplication():
    m = L.multiplication_law(Z)
    assert m.F((2, 3), (1, 1), 2) == (7,)
    assert (2 + 2 * 1) * (3 + 2 * 1) - 2 * 3 == 7 * 2
    assert m.F((2, 3), (0, 0), 2) == (0,)
    assert m.tangent((2, 3), (5, 7)) == ((6,), (2 * 7 + 5 * 3,))


def test_bilinear_refuses_noncommutative():
    with pytest.raises(UnsupportedOperationError):
        L.multiplication_law(MatrixRing(ModN(2), 2))
    with pytest.raises(UnsupportedOperationError):
        L.polynomial_law(P.LinearSet(MatrixRing(ModN(2), 2)), ["x^2"])


def test_polynomial_law_factorizers():
    assert E.to_text(L.polynomial_law(Q, ["x^3"]).factorizer[0]) == "3*x^2*v + 3*x*T*v^2 + T^2*v^3"
    assert E.to_text(L.polynomial_law(Q, ["x"]).factorizer[0]) == "v"


def test_rational_law_on_punctured_line():
    law = L.rational_law(Q, ["1/x"])
    assert E.to_text(law.factorizer[0]) == "-v/(x*(x+T*v))"
    assert not law.domain.contains((Fraction(0),))
    assert L.check_law_axioms(law, L.Sampler(law.domain, seed=3, n=300)).passed


def test_rational_law_on_whole_line_is_rejected():
    with pytest.raises(LawConstructionError):
        L.rational_law(P.LinearSet(Q), ["1/x"])


def test_supplied_factorizer_is_verified():
    U = P.LinearSet(Q)
    with pytest.raises(LawConstructionError):
        L.law_with_factorizer(U, P.LinearSet(Q), ["x"], ["v + 1"])
    ok = L.law_with_factorizer(U, P.LinearSet(Q), ["x^2"], ["2*x*v + T*v^2"])
    assert ok.same_law(L.polynomial_law(U, ["x^2"]))


# application

def test_apply_square_law():
    sq = L.polynomial_law(Z, ["x^2"])
    assert L.apply1(sq, arrow(sq, 1, 1, 1)) == sq.codomain.arrow1(1, 3, 1)
    z = P.z_pi(sq.domain.base1(4, 3))
    assert L.apply1(sq, z) == P.z_pi(sq.codomain.base1(16, 3))
    assert L.apply2(sq, sq.domain.arrow2(1, 1, 1, 0)) == sq.codomain.arrow2(1, 2, 1, 0)


# composition and tangent maps

def test_chain_rule_example():
    sq, cube = L.polynomial_law(Q, ["x^2"]), L.polynomial_law(Q, ["x^3"])
    comp = L.compose_laws(cube, sq)
    value = comp.F((Fraction(1),), (Fraction(1),), Fraction(0))[0]
    assert value == 6 == (Dual(1, 1) ** 6).b


def test_compose_with_identity_and_constant():
    f = L.polynomial_law(Q, ["x^3 - x"])
    ident = L.identity_law(f.codomain)
    assert L.compose_laws(ident, f).same_law(f)
    assert L.compose_laws(f, L.identity_law(f.domain)).same_law(f)
    c = L.compose_laws(L.constant_law(f.codomain, 4), f)
    assert E.fractions_equal(c.factorizer[0], E.Const(Fraction(0)))


def test_compose_domain_mismatch():
    with pytest.raises(DomainMismatchError):
        L.compose_laws(L.multiplication_law(Q), L.polynomial_law(Q, ["x^2"]))


def test_composition_restricts_domain():
    inv = L.rational_law(Q, ["1/x"])
    shift = L.polynomial_law(Q, ["x - 1"])
    comp = L.compose_laws(inv, shift)
    assert not comp.domain.contains((Fraction(1),)) and comp.domain.contains((Fraction(2),))


def test_tangent_examples():
    cube = L.polynomial_law(Q, ["x^3"])
    assert cube.tangent((Fraction(2),), (Fraction(1),)) == ((8,), (12,))
    assert cube.tangent((Fraction(5),), (Fraction(0),)) == ((125,), (0,))


# axiom suite

def test_square_law_exhaustive_z5():
    rep = L.check_law_axioms(L.polynomial_law(Z5, ["x^2"]))
    assert rep.mode == "exhaustive" and rep.passed
    assert rep.checks["defining identity"] == 125


def test_corrupted_factorizer_fails_at_t1():
    U = P.LinearSet(Z5)
    bad = L.law_with_factorizer(U, P.LinearSet(Z5), ["x"], ["v + 1"], verify=False)
    rep = L.check_law_axioms(bad)
    assert not rep.check_passed("defining identity")
    for v in range(5):
        # f(x + v) - f(x) = v, but F(x, v, 1) * 1 = v + 1
        assert bad.F((0,), (v,), 1) != ((v) % 5,)


def test_sampler_modes():
    assert L.Sampler(P.LinearSet(Z5)).mode == "exhaustive"
    assert L.Sampler(P.LinearSet(ModN(7), 2)).mode == "exhaustive"  # 7^7 < 10^6
    assert L.Sampler(P.LinearSet(ModN(11), 2)).mode == "sampled"
    s = L.Sampler(P.LinearSet(Q), seed=4, n=50)
    assert s.mode == "sampled" and len(s.triples()) == 50
    assert s.triples() == L.Sampler(P.LinearSet(Q), seed=4, n=50).triples()


# laws versus maps

def test_laws_are_finer_than_maps():
    U = P.LinearSet(Z5)
    fermat = L.polynomial_law(U, ["x^5"])
    ident = L.polynomial_law(U, ["x"])
    assert all(fermat.f((x,)) == ident.f((x,)) for x in range(5))
    assert not fermat.same_law(ident)
    assert not L.maps_agree(fermat, ident)  # the factorizers already differ as maps on U<1>


# JSON

def test_law_json_round_trip():
    law = L.rational_law(Q, ["(x+1)/(x-1)"])
    data = json.loads(json.dumps(law.to_json()))
    back = L.law_from_json(data)
    assert back.same_law(law) and back.domain.contains((Fraction(2),)) and not back.domain.contains((Fraction(1),))


def test_law_json_ring_override():
    data = {"ring": "Q", "variables": ["x"], "base": ["x^2"]}
    law = L.law_from_json(data, Z5)
    assert law.ring == Z5 and law.F((2,), (1,), 3) == (2,)


# twisted morphisms

def test_identity_twist_reduces_to_law_axioms():
    U = P.LinearSet(Z5)
    idt = L.TwistDescriptor.identity(Z5)
    rep = L.check_twisted_morphism(U, P.LinearSet(Z5), ["x^2"], ["2*x*v + T*v^2"], idt, idt)
    assert rep.passed


def test_identity_table_twist_on_z5():
    U = P.LinearSet(Z5)
    table = L.TwistDescriptor.from_table(Z5, {a: a for a in range(5)})
    assert table.check_endomorphism().passed
    assert L.check_twisted_morphism(U, P.LinearSet(Z5), ["x"], ["v"], table, table).passed


def test_scaling_twist_on_the_t_slot_passes():
    U = P.LinearSet(Z5)
    lam_inv = Z5.inverse(3)
    rep = L.check_twisted_morphism(U, P.LinearSet(Z5), ["x"], [f"{lam_inv}*v"],
                                   L.TwistDescriptor.identity(Z5), L.TwistDescriptor.scaling(Z5, 3))
    assert rep.passed


def test_scaling_twist_on_the_s_slot_fails():
    # phi = 3*, psi = id: the product phi(s) psi(t) is not multiplicative in the right way
    U = P.LinearSet(Z5)
    rep = L.check_twisted_morphism(U, P.LinearSet(Z5), ["x"], ["2*v"],
                                   L.TwistDescriptor.scaling(Z5, 3), L.TwistDescriptor.identity(Z5))
    assert not rep.check_passed("(3) psi(st) = phi(s) psi(t)")
    assert not rep.check_passed("(5) twisted homogeneity")


def test_scaling_twist_groupoid_level():
    U = P.LinearSet(Q)
    rep = L.check_twisted_groupoid_morphism(U, P.LinearSet(Q), ["x"], ["v/3"], L.TwistDescriptor.scaling(Q, 3))
    assert rep.passed


def test_scaling_twist_is_not_a_ring_endomorphism():
    assert not L.TwistDescriptor.scaling(Z5, 3).check_endomorphism().passed
    with pytest.raises(NotInvertibleError):
        L.TwistDescriptor.scaling(ModN(6), 2)


# level sets and the pullback theorem

def test_level_set_examples():
    sq_q = L.polynomial_law(Q, ["x^2"])
    member = L.level_set(sq_q, (0,))
    for v in (1, 5, Fraction(-2, 3)):
        assert member(sq_q.domain.arrow2(0, v, 7, 0))
    assert not member(sq_q.domain.arrow2(0, 1, 1, 1))

    sq = L.polynomial_law(Z5, ["x^2"])
    no_root = L.level_set(sq, (2,))  # 2 is not a square mod 5
    assert not any(no_root(a) for a in sq.domain.arrows2())
    on_root = L.level_set(sq, (4,))
    for x in (2, 3):
        for s in range(5):
            for t in range(5):
                assert on_root(P.z_pi(sq.domain.base2(x, s, t)))


def test_level_set_is_closed_z5():
    sq = L.polynomial_law(Z5, ["x^2"])
    assert L.check_level_set(sq, (4,), sq.domain.arrows2()).passed


def test_pullback_algebra_z3():
    rep = L.check_pullback_algebra(L.multiplication_law(ModN(3)))
    assert rep.passed and rep.checks["alpha preserves product"] > 0


# properties

@st.composite
def poly_pairs(draw):
    rng = random.Random(draw(st.integers(0, 10**6)))
    return random_poly(rng, 1, 3), random_poly(rng, 1, 3)


@given(poly_pairs(), st.sampled_from([Fraction(0), Fraction(1), Fraction(2), Fraction(1, 2)]),
       st.fractions(max_denominator=5), st.fractions(max_denominator=5))
def test_chain_rule_property(pair, t, x, v):
    cf, cg = pair
    f = L.polynomial_law(Q, [poly_text(cf, ["x"])], verify=False)
    g = L.polynomial_law(Q, [poly_text(cg, ["x"])], verify=False)
    gf = L.compose_laws(g, f)
    fx, Fv = f.fiber_t(t, (x,), (v,))
    assert gf.fiber_t(t, (x,), (v,)) == g.fiber_t(t, fx, Fv)
    if t == 0:
        expected = directional_derivative({k: c for k, c in cg.items()}, [poly_eval(cf, [x])],
                                          [directional_derivative(cf, [x], [v])])
        assert gf.F((x,), (v,), 0)[0] == expected


@given(st.integers(0, 10**6), st.fractions(max_denominator=5), st.fractions(max_denominator=5),
       st.fractions(max_denominator=5), st.fractions(max_denominator=5))
def test_tangent_linearity(seed, x, v, w, s):
    coeffs = random_poly(random.Random(seed), 1, 4)
    f = L.polynomial_law(Q, [poly_text(coeffs, ["x"])], verify=False)
    df = lambda u: f.tangent((x,), (u,))[1][0]  # noqa: E731
    assert df(v + w) == df(v) + df(w)
    assert df(v * s) == df(v) * s
