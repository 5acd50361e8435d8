import dataclasses
import itertools
import json

from difflaws import prolong as P
from difflaws.checker import (
    MAX_COUNTEREXAMPLES, SuiteReport, difference_groupoid, difference_pregroupoid, double_prolongation,
    pair_groupoid, product_pregroupoid, run_category_suite, run_doublecat_suite, run_groupoid_suite,
    run_kt_suite, run_pregroupoid_suite, run_ring_suite, run_scaled_action_suite,
)
from difflaws.rings import MatrixRing, ModN

Z3, Z4, Z5 = ModN(3), ModN(4), ModN(5)


def failing(rep):
    return {n for n, k in rep.failures.items() if k}


# the real structures pass

def test_groupoid_suite_z5():
    rep = run_groupoid_suite(difference_groupoid(P.LinearSet(Z5)))
    assert rep.passed and rep.checks["associativity"] > 0 and rep.checks["inverse laws"] == 250


def test_groupoid_suite_dim2_z3():
    assert run_groupoid_suite(difference_groupoid(P.LinearSet(Z3, 2))).passed


def test_groupoid_suite_noncommutative_ring():
    # the star structure needs no commutativity of K
    M = MatrixRing(ModN(2), 2)
    U = P.LinearSet(M)
    nonunit = next(m for m in M.elements() if m != M.zero and not M.is_unit(m))
    # directions restricted to the subgroup {0, e}: still closed under *
    e = M.canonical(((1, 0), (0, 0)))
    arrows = [a for a in U.arrows1(ts=[M.one, nonunit]) if a.v[0] in (M.zero, e)]
    assert len(arrows) == 64
    assert run_groupoid_suite(difference_groupoid(U, arrows)).passed


def test_doublecat_and_transpose_z3():
    d = double_prolongation(P.LinearSet(Z3))
    rep = run_doublecat_suite(d, seed=0)
    assert rep.passed and len(rep.checks) == 9
    assert rep.checks["(9) interchange law"] > 0
    assert run_doublecat_suite(d.transposed(), seed=0).passed


def test_pair_groupoid():
    assert run_groupoid_suite(pair_groupoid(range(4))).passed


def test_pregroupoids():
    assert run_pregroupoid_suite(difference_pregroupoid(P.LinearSet(Z3))).passed
    assert run_pregroupoid_suite(product_pregroupoid(range(3), "ab")).passed


def test_scaled_action_category_z4():
    R = Z4
    U = P.LinearSet(R)
    rep = run_scaled_action_suite(R.elements(), R.mul, R.one, U.vectors(), U.scale, is_unit=R.is_unit, seed=1)
    assert rep.passed and rep.checks["invertible iff s is a unit"] == 64


def test_scaled_action_is_fixed_x_part_of_bullet_z3():
    # for fixed x, (x, v; s, t) • composes exactly as (v; s, t) in the scaled action category
    U = P.LinearSet(Z3)
    for x in U.vectors():
        arrows = [a for a in U.arrows2() if a.x == x]
        for g, f in itertools.product(arrows, repeat=2):
            scaled_ok = (U.scale(f.v, f.s), f.t) == (g.v, Z3.mul(g.s, g.t))
            assert scaled_ok == P.bullet_composable(g, f)
            if scaled_ok:
                assert P.compose_bullet(g, f) == U.arrow2(x, f.v, Z3.mul(f.s, g.s), g.t)


def test_kt_and_ring_suites():
    assert run_kt_suite(Z3, 2).passed
    assert run_ring_suite(MatrixRing(ModN(2), 2)).passed


# planted defects are caught

def test_groupoid_suite_catches_bad_composition():
    cat = difference_groupoid(P.LinearSet(Z3))

    def bad(g, f):
        c = P.compose_star(g, f)
        return c.space.arrow1(c.x, ((c.v[0] + 1) % 3,), c.t)

    rep = run_groupoid_suite(dataclasses.replace(cat, compose=bad))
    assert not rep.passed
    assert {"left unit", "right unit"} <= failing(rep)


def test_doublecat_suite_catches_bad_bullet():
    d = double_prolongation(P.LinearSet(Z3))

    def bad(g, f):
        c = P.compose_bullet(g, f)
        return c.space.arrow2(c.x, c.v, g.s, c.t) if isinstance(c, P.Arrow2) else c

    broken = dataclasses.replace(d, bullet_left=dataclasses.replace(d.bullet_left, compose=bad))
    rep = run_doublecat_suite(broken)
    assert not rep.passed


def test_pregroupoid_suite_catches_bad_ternary():
    p = difference_pregroupoid(P.LinearSet(Z3))

    def bad(x, y, z):
        r = P.pregroupoid_ternary(x, y, z)
        return r.space.arrow1(r.x, ((x.v[0] + y.v[0] - z.v[0]) % 3,), r.t) if r.x == z.x else r

    rep = run_pregroupoid_suite(dataclasses.replace(p, ternary=bad))
    assert any(n.startswith("(IP)") for n in failing(rep))


def test_category_suite_catches_non_unit():
    cat = pair_groupoid(range(3))
    rep = run_category_suite(dataclasses.replace(cat, unit=lambda o: (o, (o + 1) % 3)))
    assert "unit bisection" in failing(rep)


# reports

def test_report_json_is_stable_and_capped():
    rep = SuiteReport("demo", seed=7, mode="sampled")
    for i in range(25):
        rep.compare("c", i, 0, [i])
    d = rep.to_dict()
    assert list(d) == ["suite", "passed", "mode", "seed", "checks", "counterexamples"]
    assert d["checks"] == [{"name": "c", "instances": 25, "failures": 24}]
    assert len(d["counterexamples"]) == MAX_COUNTEREXAMPLES
    assert rep.to_json() == SuiteReport(**{**dataclasses.asdict(rep)}).to_json()
    assert json.loads(rep.to_json())["passed"] is False


def test_report_merge():
    a, b = SuiteReport("a"), SuiteReport("b")
    a.compare("x", 1, 1)
    b.compare("x", 1, 2)
    b.compare("y", 0, 0)
    m = a.merge(b)
    assert m.checks == {"x": 2, "y": 1} and m.failures == {"x": 1, "y": 0} and not m.passed
