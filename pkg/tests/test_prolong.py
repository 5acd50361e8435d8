import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from difflaws import prolong as P
from difflaws.errors import CompositionError, DomainMismatchError, MembershipError, NotInvertibleError
from difflaws.rings import Integers, ModN, Rationals

Z, Q = Integers(), Rationals()
UZ = P.LinearSet(Z)
UQ = P.LinearSet(Q)


def a1(x, v, t, space=UZ):
    return space.arrow1(x, v, t)


def a2(x, v, s, t, space=UZ):
    return space.arrow2(x, v, s, t)


# projections and sections

def test_projection_examples():
    assert P.pi1(a1(0, 1, 2)) == UZ.base1(2, 2)
    b = UZ.base1(5, 3)
    assert P.pi0(P.z_pi(b)) == b == P.pi1(P.z_pi(b))
    assert P.pi1(a1(4, 0, 7)) == UZ.base1(4, 7)


def test_partial_examples():
    a = a2(1, 2, 3, 4)
    assert P.partial1(a) == a1(1, 6, 4)
    assert P.partial0(a) == a1(1, 2, 12)
    b = a1(3, 5, 7)
    assert P.partial0(P.z_partial(b)) == b


# star

def test_star_examples():
    assert P.compose_star(a1(2, 3, 2), a1(0, 1, 2)) == a1(0, 4, 2)
    a = a1(3, 2, 5)
    assert P.compose_star(a, P.z_pi(P.pi0(a))) == a


def test_star_on_double_arrows():
    assert P.compose_star(a2(6, 7, 2, 3), a2(0, 1, 2, 3)) == a2(0, 8, 2, 3)


def test_star_pair_listed_with_other_scalars_is_not_composable():
    with pytest.raises(CompositionError) as info:
        P.compose_star(a2(6, 7, 1, 6), a2(0, 1, 2, 3))
    assert info.value.left is not None and info.value.right is not None


def test_star_mismatch_reports_endpoints():
    with pytest.raises(CompositionError) as info:
        P.compose_star(a1(5, 1, 2), a1(0, 1, 2))
    assert "(2;2)" in str(info.value) or info.value.right == a1(0, 1, 2)


def test_star_never_mixes_t():
    with pytest.raises(CompositionError):
        P.compose_star(a1(2, 1, 3), a1(0, 1, 2))


def test_inverse_examples():
    assert P.invert_star(a1(0, 1, 2)) == a1(2, -1, 2)
    z = P.z_pi(UZ.base1(4, 3))
    assert P.invert_star(z) == z
    a = a1(3, -2, 5)
    assert P.invert_star(P.invert_star(a)) == a


# bullet

def test_bullet_examples():
    assert P.compose_bullet(a2(1, 6, 2, 2), a2(1, 2, 3, 4)) == a2(1, 2, 6, 2)
    a = a2(1, 2, 3, 4)
    assert P.compose_bullet(a, P.z_partial(P.partial0(a))) == a
    U5 = P.LinearSet(ModN(5))
    u = U5.arrow2(0, 2, 1, 1)
    assert P.compose_bullet(u, u) == u


def test_bullet_mismatch():
    with pytest.raises(CompositionError):
        P.compose_bullet(a2(1, 2, 3, 4), a2(1, 2, 3, 4))


def test_bullet_on_bases():
    assert P.compose_bullet(UZ.base2(1, 2, 3), UZ.base2(1, 5, 6)) == UZ.base2(1, 10, 3)


# scaling and the sign automorphism

def test_scaling_examples():
    assert P.scaling_phi(3, 2, a1(1, 2, 6)) == a1(1, 6, 2)
    a = a1(4, 5, 7)
    assert P.scaling_phi(1, 7, a) == a
    assert P.sign_automorphism(a1(1, 2, 3)) == a1(1, -2, -3)
    assert P.scaling_phi(-1, -3, a1(1, 2, 3)) == a1(1, -2, -3)


def test_scaling_requires_product():
    with pytest.raises(DomainMismatchError):
        P.scaling_phi(3, 2, a1(1, 2, 5))


def test_scaling_is_star_functor_over_z5():
    U = P.LinearSet(ModN(5))
    for s, t in itertools.product(range(5), repeat=2):
        st_ = s * t % 5
        arrows = U.arrows1(ts=[st_])
        for g, f in P.iter_pairs(arrows, P.pi0, P.pi1):
            lhs = P.scaling_phi(s, t, P.compose_star(g, f))
            assert lhs == P.compose_star(P.scaling_phi(s, t, g), P.scaling_phi(s, t, f))


def test_scaling_composition_consistency():
    # phi_{s,t} o phi_{s',st} = phi_{s's,t}
    U = P.LinearSet(ModN(5))
    for s, s2, t in itertools.product(range(5), repeat=3):
        outer_t = s2 * s * t % 5
        for x, v in itertools.product(range(5), repeat=2):
            a = U.arrow1(x, v, outer_t)
            assert P.scaling_phi(s, t, P.scaling_phi(s2, s * t, a)) == P.scaling_phi(s2 * s, t, a)


# trivializations

def test_phi_trivialize_examples():
    assert P.phi_trivialize(a1(0, 1, 2, UQ)) == ((Fraction(2),), (Fraction(0),))
    assert P.phi_trivialize(a1(3, 0, 2, UQ)) == ((Fraction(3),), (Fraction(3),))
    U5 = P.LinearSet(ModN(5))
    assert P.phi_untrivialize(U5, 3, ((4,), (1,))) == U5.arrow1(1, 1, 3)


def test_phi_trivialize_needs_unit():
    with pytest.raises(NotInvertibleError):
        P.phi_trivialize(a1(0, 1, 2))
    with pytest.raises(NotInvertibleError):
        P.phi_untrivialize(P.LinearSet(ModN(5)), 0, ((1,), (1,)))


def test_nonsingular_examples():
    q = P.nonsingular_trivialize(a2(0, 1, 2, 3, UQ))
    assert q == ((Fraction(6),), (Fraction(0),), Fraction(6), Fraction(3))
    assert P.nonsingular_untrivialize(UQ, q) == a2(0, 1, 2, 3, UQ)
    assert P.nonsingular_trivialize(a2(5, 0, 1, 1, UQ)) == ((Fraction(5),), (Fraction(5),), 1, 1)
    with pytest.raises(NotInvertibleError):
        P.nonsingular_trivialize(a2(0, 1, 0, 3, UQ))


def test_phi_t_is_isomorphism_onto_pair_groupoid_z5():
    U = P.LinearSet(ModN(5))
    pairs = set(itertools.product([(y,) for y in range(5)], repeat=2))
    for t in range(1, 5):
        arrows = U.arrows1(ts=[t])
        image = {P.phi_trivialize(a) for a in arrows}
        assert image == pairs and len(arrows) == 25
        for a in arrows:
            assert P.phi_untrivialize(U, t, P.phi_trivialize(a)) == a
        for g, f in P.iter_pairs(arrows, P.pi0, P.pi1):
            lhs = P.phi_trivialize(P.compose_star(g, f))
            assert lhs == P.pair_compose(P.phi_trivialize(g), P.phi_trivialize(f))


def test_t0_fiber_is_additive_bundle_z5():
    U = P.LinearSet(ModN(5))
    for x, v, w in itertools.product(range(5), repeat=3):
        g, f = U.arrow1(x, w, 0), U.arrow1(x, v, 0)
        assert P.pi0(f) == P.pi1(f)
        assert P.compose_star(g, f) == U.arrow1(x, (v + w) % 5, 0)


def test_nonsingular_trivialization_is_bijective_z5():
    U = P.LinearSet(ModN(5))
    units = [1, 2, 3, 4]
    arrows = [U.arrow2(x, v, s, t) for x in range(5) for v in range(5) for s in units for t in units]
    images = {P.nonsingular_trivialize(a) for a in arrows}
    assert len(images) == len(arrows)
    for a in arrows:
        assert P.nonsingular_untrivialize(U, P.nonsingular_trivialize(a)) == a


# anchor, j-map, pregroupoid ternary, products

def test_anchor_examples():
    assert P.anchor(a1(0, 1, 2)) == (UZ.base1(2, 2), UZ.base1(0, 2))
    b = UZ.base1(3, 1)
    assert P.anchor(P.z_pi(b)) == (b, b)
    g, f = a1(2, 3, 2), a1(0, 1, 2)
    (c, b1), (b2, a) = P.anchor(g), P.anchor(f)
    assert b1 == b2 and P.anchor(P.compose_star(g, f)) == (c, a)


def test_j_map_is_involutive_and_swaps_projections_z3():
    U = P.LinearSet(ModN(3))
    for a in U.arrows2():
        j = P.j_map(a)
        assert P.j_map(j) == a
        assert (P.pi0(j).x, P.pi1(j).x) == (P.pi1(a).x, P.pi0(a).x)


def test_j_map_reverses_star_and_preserves_bullet_z3():
    U = P.LinearSet(ModN(3))
    arrows = U.arrows2()
    for g, f in P.iter_pairs(arrows, P.pi0, P.pi1):
        assert P.j_map(P.compose_star(g, f)) == P.compose_star(P.j_map(f), P.j_map(g))


def test_ternary_examples():
    a, a_mid, a_top = a1(0, 1, 2), a1(2, 0, 2), a1(2, 5, 2)
    assert P.pregroupoid_ternary(a_top, a_mid, a) == a1(0, 6, 2)
    b, c = a1(0, 3, 2), a1(4, 1, 2)  # both end at (6;2)
    assert P.pregroupoid_ternary(b, b, c) == c
    d = a1(0, 5, 2)  # starts where b starts
    assert P.pregroupoid_ternary(d, b, b) == d


def test_ternary_is_star_of_inverse():
    U = P.LinearSet(ModN(3))
    arrows = U.arrows1()
    for x, y, z in itertools.product(arrows, repeat=3):
        if P.pi0(x) == P.pi0(y) and P.pi1(y) == P.pi1(z):
            via = P.compose_star(x, P.compose_star(P.invert_star(y), z))
            assert P.pregroupoid_ternary(x, y, z) == via


def test_ternary_endpoint_mismatch():
    with pytest.raises(CompositionError):
        P.pregroupoid_ternary(a1(0, 1, 2), a1(5, 1, 2), a1(0, 1, 2))


def test_product_split_join_z3():
    R = ModN(3)
    A, B = P.LinearSet(R), P.LinearSet(R)
    AB = P.LinearSet.product(A, B)
    arrows = AB.arrows1()
    for a in arrows:
        left, right = P.product_split(a)
        assert left.t == right.t == a.t
        assert P.product_join(AB, left, right) == a
    for g, f in P.iter_pairs(arrows, P.pi0, P.pi1):
        gl, gr = P.product_split(g)
        fl, fr = P.product_split(f)
        assert P.product_split(P.compose_star(g, f)) == (P.compose_star(gl, fl), P.compose_star(gr, fr))


def test_product_split_requires_product():
    with pytest.raises(DomainMismatchError):
        P.product_split(a1(0, 1, 1))


# linear sets

def test_restricted_linear_set():
    U = P.LinearSet(Q, 1, ["x"])
    assert not U.contains((Fraction(0),))
    with pytest.raises(MembershipError):
        U.arrow1(1, -1, 1)
    assert U.arrow1(1, 1, 1).v == (Fraction(1),)


def test_arrow_counts():
    assert len(P.LinearSet(ModN(5)).arrows1()) == 125
    assert len(P.LinearSet(ModN(3)).arrows2()) == 81


def test_arrow_json_round_trip():
    a = a2(1, 2, 3, 4, UQ)
    data = a.to_json()
    assert data == {"x": ["1"], "v": ["2"], "s": "3", "t": "4"}
    assert P.arrow_from_json(UQ, data) == a
    assert P.arrow_from_json(UQ, {"x": ["1/2"], "v": ["0"], "t": "0"}) == a1(Fraction(1, 2), 0, 0, UQ)


def test_arrows_from_different_sets_do_not_compose():
    other = P.LinearSet(Z)
    with pytest.raises(CompositionError):
        P.compose_star(other.arrow1(2, 1, 2), a1(0, 1, 2))


# properties

small = st.integers(-20, 20)


@given(small, small, small, small, small)
def test_groupoid_laws_over_z(x, v, w, u, t):
    f = a1(x, v, t)
    g = a1(x + v * t, w, t)
    h = a1(x + v * t + w * t, u, t)
    assert P.compose_star(h, P.compose_star(g, f)) == P.compose_star(P.compose_star(h, g), f)
    assert P.compose_star(P.invert_star(f), f) == P.z_pi(P.pi0(f))
    assert P.compose_star(f, P.invert_star(f)) == P.z_pi(P.pi1(f))


@given(small, small, small, small, small)
def test_partial_commutes_with_pi(x, v, s, t, _):
    a = a2(x, v, s, t)
    for d in (P.partial0, P.partial1):
        assert P.pi0(d(a)) == d(P.pi0(a))
        assert P.pi1(d(a)) == d(P.pi1(a))


@given(st.integers(0, 10_000))
def test_sample_chain_composes(seed):
    rng = random.Random(seed)
    chain = P.sample_chain1(UQ, rng, 4)
    acc = chain[0]
    for nxt in chain[1:]:
        acc = P.compose_star(nxt, acc)
    assert P.pi0(acc) == P.pi0(chain[0]) and P.pi1(acc) == P.pi1(chain[-1])
