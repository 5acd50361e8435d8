"""Axiom suites for small categories, groupoids, double categories and pregroupoids.

A structure is described by plain callables (source, target, unit,
composition) over an explicit list of arrows.  Composable tuples are found
by joining fibers of the endpoint maps, so only composable tuples are ever
visited.  Every suite returns a :class:`SuiteReport`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

from . import prolong as P
from .errors import CompositionError, DiffLawsError

MAX_COUNTEREXAMPLES = 10


def _show(value) -> Any:
    """JSON-friendly rendering used in counterexample payloads."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, (tuple, list)):
        return [_show(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _show(v) for k, v in value.items()}
    return str(value)


@dataclass
class SuiteReport:
    """Outcome of a suite.  It passes iff no counterexample was recorded."""

    suite: str
    seed: int | None = None
    mode: str = "exhaustive"
    checks: dict = field(default_factory=dict)  # name -> number of instances checked
    failures: dict = field(default_factory=dict)  # name -> number of failing instances
    counterexamples: dict = field(default_factory=dict)  # name -> list of payloads (capped)
    meta: dict = field(default_factory=dict)  # extra provenance, e.g. a sample hash

    def declare(self, check: str) -> None:
        self.checks.setdefault(check, 0)
        self.failures.setdefault(check, 0)

    def record(self, check: str, ok: bool, inputs=None, lhs=None, rhs=None) -> bool:
        self.declare(check)
        self.checks[check] += 1
        if not ok:
            self.failures[check] += 1
            bucket = self.counterexamples.setdefault(check, [])
            if len(bucket) < MAX_COUNTEREXAMPLES:
                bucket.append({"check": check, "inputs": _show(inputs), "lhs": _show(lhs), "rhs": _show(rhs)})
        return ok

    def compare(self, check: str, lhs, rhs, inputs=None) -> bool:
        return self.record(check, lhs == rhs, inputs, lhs, rhs)

    @property
    def passed(self) -> bool:
        return not any(self.failures.values())

    def check_passed(self, check: str) -> bool:
        return self.failures.get(check, 0) == 0

    def merge(self, other: "SuiteReport") -> "SuiteReport":
        """Combine two reports; the result keeps the first name and seed."""
        out = SuiteReport(self.suite, self.seed, self.mode, meta={**other.meta, **self.meta})
        for rep in (self, other):
            for name, n in rep.checks.items():
                out.declare(name)
                out.checks[name] += n
                out.failures[name] += rep.failures.get(name, 0)
                bucket = out.counterexamples.setdefault(name, []) if rep.counterexamples.get(name) else None
                if bucket is not None:
                    room = MAX_COUNTEREXAMPLES - len(bucket)
                    bucket.extend(rep.counterexamples[name][:room])
        return out

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "mode": self.mode,
            "seed": self.seed,
            "checks": [
                {"name": name, "instances": n, "failures": self.failures.get(name, 0)}
                for name, n in self.checks.items()
            ],
            "counterexamples": [ce for name in self.checks for ce in self.counterexamples.get(name, [])],
            **({"meta": dict(self.meta)} if self.meta else {}),
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def summary(self) -> str:
        lines = [f"{self.suite}: {'PASS' if self.passed else 'FAIL'}"]
        for name, n in self.checks.items():
            bad = self.failures.get(name, 0)
            lines.append(f"  {name}: {n - bad}/{n}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# Descriptors


@dataclass
class CategoryDescriptor:
    """A small category given by its arrows and structure maps.

    ``compose(g, f)`` is the composite "g after f", defined when
    ``target(f) == source(g)``; it may raise :class:`CompositionError`.
    """

    name: str
    arrows: Sequence
    objects: Sequence
    source: Callable
    target: Callable
    unit: Callable
    compose: Callable
    inverse: Callable | None = None
    key: Callable = staticmethod(lambda o: o)

    def composable_pairs(self) -> Iterable[tuple]:
        index: dict = {}
        for g in self.arrows:
            index.setdefault(self.key(self.source(g)), []).append(g)
        for f in self.arrows:
            for g in index.get(self.key(self.target(f)), ()):
                yield g, f

    def source_index(self) -> dict:
        index: dict = {}
        for g in self.arrows:
            index.setdefault(self.key(self.source(g)), []).append(g)
        return index


@dataclass
class DoubleDescriptor:
    """Four edge categories of a double category.

    ``star_top``   : arrows C11 over objects C01 (the * structure, maps pi)
    ``star_bottom``: arrows C10 over objects C00
    ``bullet_left``: arrows C11 over objects C10 (the • structure, maps partial)
    ``bullet_right``: arrows C01 over objects C00
    """

    name: str
    star_top: CategoryDescriptor
    star_bottom: CategoryDescriptor
    bullet_left: CategoryDescriptor
    bullet_right: CategoryDescriptor

    def transposed(self) -> "DoubleDescriptor":
        """Swap the roles of * and • (and of C01 and C10)."""
        return DoubleDescriptor(
            f"{self.name}^T",
            star_top=self.bullet_left,
            star_bottom=self.bullet_right,
            bullet_left=self.star_top,
            bullet_right=self.star_bottom,
        )


@dataclass
class PregroupoidDescriptor:
    """A set with two endpoint maps and a partial ternary product.

    ``[x y z]`` is defined when a(x) = a(y) and b(y) = b(z).
    """

    name: str
    elements: Sequence
    a: Callable
    b: Callable
    ternary: Callable


# ---------------------------------------------------------------------------
# Category and groupoid suites


def _safe(fn, *args):
    try:
        return fn(*args), None
    except DiffLawsError as exc:
        return None, exc


def run_category_suite(cat: CategoryDescriptor, report: SuiteReport | None = None, prefix: str = "") -> SuiteReport:
    """Endpoints of composites, unit bisection, unit laws and associativity."""
    rep = report if report is not None else SuiteReport(cat.name)
    p = prefix
    for name in ("composite endpoints", "unit bisection", "left unit", "right unit", "associativity"):
        rep.declare(p + name)
    src, tgt, key = cat.source, cat.target, cat.key

    for o in cat.objects:
        z = cat.unit(o)
        rep.compare(p + "unit bisection", (key(src(z)), key(tgt(z))), (key(o), key(o)), [o])

    for a in cat.arrows:
        left, err = _safe(cat.compose, cat.unit(tgt(a)), a)
        rep.record(p + "left unit", err is None and left == a, [a], left if err is None else str(err), a)
        right, err = _safe(cat.compose, a, cat.unit(src(a)))
        rep.record(p + "right unit", err is None and right == a, [a], right if err is None else str(err), a)

    index = cat.source_index()
    composites: dict = {}
    for g, f in cat.composable_pairs():
        gf, err = _safe(cat.compose, g, f)
        if err is not None:
            rep.record(p + "composite endpoints", False, [g, f], str(err), "defined")
            continue
        composites[(g, f)] = gf
        rep.compare(p + "composite endpoints", (key(src(gf)), key(tgt(gf))), (key(src(f)), key(tgt(g))), [g, f])

    for (g, f), gf in composites.items():
        for h in index.get(key(tgt(g)), ()):
            hg = composites.get((h, g))
            if hg is None:
                hg, err = _safe(cat.compose, h, g)
                if err is not None:
                    continue
            lhs, e1 = _safe(cat.compose, hg, f)
            rhs, e2 = _safe(cat.compose, h, gf)
            if e1 or e2:
                rep.record(p + "associativity", False, [h, g, f], str(e1 or lhs), str(e2 or rhs))
            else:
                rep.compare(p + "associativity", lhs, rhs, [h, g, f])
    return rep


def run_groupoid_suite(cat: CategoryDescriptor, report: SuiteReport | None = None, prefix: str = "") -> SuiteReport:
    """Category axioms plus two-sided inverses."""
    rep = run_category_suite(cat, report, prefix)
    if cat.inverse is None:
        rep.record(prefix + "inverse laws", False, [], "no inverse map", "inverse map")
        return rep
    rep.declare(prefix + "inverse laws")
    for a in cat.arrows:
        inv = cat.inverse(a)
        lhs, err = _safe(cat.compose, inv, a)
        rep.record(prefix + "inverse laws", err is None and lhs == cat.unit(cat.source(a)),
                   [a], lhs if err is None else str(err), cat.unit(cat.source(a)))
        rhs, err = _safe(cat.compose, a, inv)
        rep.record(prefix + "inverse laws", err is None and rhs == cat.unit(cat.target(a)),
                   [a], rhs if err is None else str(err), cat.unit(cat.target(a)))
    return rep


# ---------------------------------------------------------------------------
# Double category suite


def run_doublecat_suite(d: DoubleDescriptor, seed: int | None = None) -> SuiteReport:
    """The eight structural properties and the interchange law, each reported separately."""
    rep = SuiteReport(d.name, seed)
    T, B, L, R = d.star_top, d.star_bottom, d.bullet_left, d.bullet_right
    names = [
        "(1) partial/pi commute",
        "(2) z_pi z_partial = z_partial z_pi",
        "(3) sections",
        "(4) projections commute with sections",
        "(5) associativity",
        "(6) units",
        "(7) projections are functors",
        "(8) sections are functors",
        "(9) interchange law",
    ]
    for n in names:
        rep.declare(n)

    c11 = T.arrows
    # (1) d_i pi_j = pi_j d_i : C11 -> C00
    for a in c11:
        for pi_top, pi_bot in ((T.source, B.source), (T.target, B.target)):
            for d_left, d_right in ((L.source, R.source), (L.target, R.target)):
                rep.compare(names[0], d_right(pi_top(a)), pi_bot(d_left(a)), [a])
    # (2)
    for o in B.objects:
        rep.compare(names[1], T.unit(R.unit(o)), L.unit(B.unit(o)), [o])
    # (3) sections of every edge category
    for cat in (T, B, L, R):
        for o in cat.objects:
            z = cat.unit(o)
            rep.compare(names[2], (cat.source(z), cat.target(z)), (o, o), [cat.name, o])
    # (4)
    for b in T.objects:  # C01
        for d_left, d_right in ((L.source, R.source), (L.target, R.target)):
            rep.compare(names[3], d_left(T.unit(b)), B.unit(d_right(b)), [b])
    for e in L.objects:  # C10
        for p_top, p_bot in ((T.source, B.source), (T.target, B.target)):
            rep.compare(names[3], p_top(L.unit(e)), R.unit(p_bot(e)), [e])
    # (5) and (6): category axioms of the four edges
    for cat, tag in ((T, "*"), (B, "* base"), (L, "•"), (R, "• base")):
        sub = run_category_suite(cat, prefix="")
        for check, n in sub.checks.items():
            target = names[4] if check in ("associativity", "composite endpoints") else names[5] \
                if check in ("left unit", "right unit") else names[2]
            rep.checks[target] += n
            rep.failures[target] += sub.failures[check]
            for ce in sub.counterexamples.get(check, []):
                bucket = rep.counterexamples.setdefault(target, [])
                if len(bucket) < MAX_COUNTEREXAMPLES:
                    bucket.append(dict(ce, check=f"{target} [{tag}: {check}]"))
    # (7) partial_s(a'*a) = partial_s(a')*partial_s(a); pi_s(b'•b) = pi_s(b')•pi_s(b)
    star_pairs = list(T.composable_pairs())
    for g, f in star_pairs:
        gf, err = _safe(T.compose, g, f)
        if err:
            continue
        for dmap in (L.source, L.target):
            rhs, err = _safe(B.compose, dmap(g), dmap(f))
            rep.record(names[6], err is None and dmap(gf) == rhs, [g, f], dmap(gf), rhs if err is None else str(err))
    bullet_pairs = list(L.composable_pairs())
    for g, f in bullet_pairs:
        gf, err = _safe(L.compose, g, f)
        if err:
            continue
        for pmap in (T.source, T.target):
            rhs, err = _safe(R.compose, pmap(g), pmap(f))
            rep.record(names[6], err is None and pmap(gf) == rhs, [g, f], pmap(gf), rhs if err is None else str(err))
    # (8) z_partial(a'*a) = z_partial(a')*z_partial(a); z_pi(b'•b) = z_pi(b')•z_pi(b)
    for g, f in B.composable_pairs():
        gf, err = _safe(B.compose, g, f)
        if err:
            continue
        rhs, err = _safe(T.compose, L.unit(g), L.unit(f))
        rep.record(names[7], err is None and L.unit(gf) == rhs, [g, f], L.unit(gf), rhs if err is None else str(err))
    for g, f in R.composable_pairs():
        gf, err = _safe(R.compose, g, f)
        if err:
            continue
        rhs, err = _safe(L.compose, T.unit(g), T.unit(f))
        rep.record(names[7], err is None and T.unit(gf) == rhs, [g, f], T.unit(gf), rhs if err is None else str(err))
    # (9) (a*b)•(c*d) = (a•c)*(b•d): enumerate b with pi1(b)=pi0(a), c with d1(c)=d0(a),
    # then d with pi1(d)=pi0(c) and d1(d)=d0(b).
    by_pi_target: dict = {}
    by_d_target: dict = {}
    by_both: dict = {}
    for x in c11:
        by_pi_target.setdefault(T.target(x), []).append(x)
        by_d_target.setdefault(L.target(x), []).append(x)
        by_both.setdefault((T.target(x), L.target(x)), []).append(x)
    for a in c11:
        for b in by_pi_target.get(T.source(a), ()):
            ab, err = _safe(T.compose, a, b)
            if err:
                continue
            for c in by_d_target.get(L.source(a), ()):
                ac, err = _safe(L.compose, a, c)
                if err:
                    continue
                for dd in by_both.get((T.source(c), L.source(b)), ()):
                    cd, e1 = _safe(T.compose, c, dd)
                    bd, e2 = _safe(L.compose, b, dd)
                    if e1 or e2:
                        continue
                    lhs, e3 = _safe(L.compose, ab, cd)
                    rhs, e4 = _safe(T.compose, ac, bd)
                    if e3 and e4:
                        continue
                    if e3 or e4:
                        rep.record(names[8], False, [a, b, c, dd],
                                   str(e3) if e3 else lhs, str(e4) if e4 else rhs)
                    else:
                        rep.compare(names[8], lhs, rhs, [a, b, c, dd])
    return rep


# ---------------------------------------------------------------------------
# Pregroupoid suite


def run_pregroupoid_suite(p: PregroupoidDescriptor, seed: int | None = None) -> SuiteReport:
    """Endpoint conditions, para-associativity (PA) in its three forms, idempotence (IP).

    Endpoints are checked as a([xyz]) = a(z) and b([xyz]) = b(x), the form
    satisfied by [a'', a', a] = a'' * a'^-1 * a in a groupoid.
    """
    rep = SuiteReport(p.name, seed)
    names = ["endpoints", "(PA) [x[uvw]z] = [[xwv]uz]", "(PA) [[xwv]uz] = [xw[vuz]]",
             "(PA) [x[uvw]z] = [xw[vuz]]", "(IP) [xxz] = z", "(IP) [zxx] = z"]
    for n in names:
        rep.declare(n)
    a_of = {e: p.a(e) for e in p.elements}
    b_of = {e: p.b(e) for e in p.elements}
    by_a: dict = {}
    by_b: dict = {}
    for e in p.elements:
        by_a.setdefault(a_of[e], []).append(e)
        by_b.setdefault(b_of[e], []).append(e)
    memo: dict = {}

    def tern(x, y, z):
        key = (x, y, z)
        if key not in memo:
            memo[key] = _safe(p.ternary, x, y, z)
        return memo[key]

    def a_(e):
        return a_of[e] if e in a_of else p.a(e)

    def b_(e):
        return b_of[e] if e in b_of else p.b(e)

    for y in p.elements:
        for x in by_a[a_of[y]]:
            for z in by_b[b_of[y]]:
                r, err = tern(x, y, z)
                ok = err is None and a_(r) == a_of[z] and b_(r) == b_of[x]
                rep.record(names[0], ok, [x, y, z], r if err is None else str(err), "a(z), b(x)")
    for x in p.elements:
        for z in by_b[b_of[x]]:
            r, err = tern(x, x, z)
            rep.record(names[4], err is None and r == z, [x, z], r if err is None else str(err), z)
        for z in by_a[a_of[x]]:
            r, err = tern(z, x, x)
            rep.record(names[5], err is None and r == z, [z, x], r if err is None else str(err), z)
    # (PA): defined when a(x)=a(w), b(w)=b(v), a(v)=a(u), b(u)=b(z)
    for v in p.elements:
        for u in by_a[a_of[v]]:
            zs = [(z, tern(v, u, z)[0]) for z in by_b[b_of[u]]]
            for w in by_b[b_of[v]]:
                uvw = tern(u, v, w)[0]
                for x in by_a[a_of[w]]:
                    xwv = tern(x, w, v)[0]
                    for z, vuz in zs:
                        f1 = tern(x, uvw, z)[0] if uvw is not None else None
                        f2 = tern(xwv, u, z)[0] if xwv is not None else None
                        f3 = tern(x, w, vuz)[0] if vuz is not None else None
                        args = [x, u, v, w, z]
                        rep.record(names[1], f1 is not None and f1 == f2, args, f1, f2)
                        rep.record(names[2], f2 is not None and f2 == f3, args, f2, f3)
                        rep.record(names[3], f1 is not None and f1 == f3, args, f1, f3)
    return rep


# ---------------------------------------------------------------------------
# Scaled action category


def run_scaled_action_suite(
    monoid: Sequence,
    mul: Callable,
    one,
    vectors: Sequence,
    act: Callable,
    scales: Sequence | None = None,
    left_act: Callable | None = None,
    is_unit: Callable | None = None,
    seed: int | None = None,
    name: str = "scaled action category",
) -> SuiteReport:
    """Category axioms for (v; s, t) with d0 = (v; st), d1 = (vs; t), (v'; s', t') • (v; s, t) = (v; ss', t').

    ``act(v, s)`` is the right action on V and ``left_act(s, t)`` the left
    action on the scale set (default: the monoid product).  Also checks the
    functor to the left action category (s, t) with d0 = st, d1 = t, and that
    (v; s, t) is invertible exactly when s is a unit (when ``is_unit`` is given).
    """
    scales = list(monoid) if scales is None else list(scales)
    lact = left_act or mul
    arrows = [(v, s, t) for v in vectors for s in monoid for t in scales]
    objects = [(v, t) for v in vectors for t in scales]

    def compose(g, f):
        v2, s2, t2 = g
        v1, s1, t1 = f
        if (act(v1, s1), t1) != (v2, lact(s2, t2)):
            raise CompositionError("not composable", left=g, right=f)
        return (v1, mul(s1, s2), t2)

    cat = CategoryDescriptor(
        name,
        arrows,
        objects,
        source=lambda a: (a[0], lact(a[1], a[2])),
        target=lambda a: (act(a[0], a[1]), a[2]),
        unit=lambda o: (o[0], one, o[1]),
        compose=compose,
    )
    rep = run_category_suite(cat, SuiteReport(name, seed))

    # forgetful functor to the left action category of S on the scales
    def fcompose(g, f):
        s2, t2 = g
        s1, t1 = f
        if t1 != lact(s2, t2):
            raise CompositionError("not composable", left=g, right=f)
        return (mul(s1, s2), t2)

    rep.declare("functor: endpoints")
    rep.declare("functor: composition")
    rep.declare("functor: units")
    for a in arrows:
        fa = (a[1], a[2])
        rep.compare("functor: endpoints", (lact(fa[0], fa[1]), fa[1]), (cat.source(a)[1], cat.target(a)[1]), [a])
    for g, f in cat.composable_pairs():
        gf = compose(g, f)
        rhs, err = _safe(fcompose, (g[1], g[2]), (f[1], f[2]))
        rep.record("functor: composition", err is None and (gf[1], gf[2]) == rhs, [g, f], (gf[1], gf[2]),
                   rhs if err is None else str(err))
    for o in objects:
        z = cat.unit(o)
        rep.compare("functor: units", (z[1], z[2]), (one, o[1]), [o])

    if is_unit is not None:
        rep.declare("invertible iff s is a unit")
        index = cat.source_index()
        for a in arrows:
            invertible = any(
                compose(b, a) == cat.unit(cat.source(a)) and compose(a, b) == cat.unit(cat.target(a))
                for b in index.get(cat.target(a), ())
                if cat.target(b) == cat.source(a)
            )
            rep.compare("invertible iff s is a unit", invertible, bool(is_unit(a[1])), [a])
    return rep


def inverse_scaled(a: tuple, act: Callable, mul: Callable, inv: Callable) -> tuple:
    """Inverse of (v; s, t) for a unit s: (vs; s^-1, st)."""
    v, s, t = a
    return (act(v, s), inv(s), mul(s, t))


# ---------------------------------------------------------------------------
# Built-in descriptors


def difference_groupoid(space: "P.LinearSet", arrows: Sequence | None = None) -> CategoryDescriptor:
    """(U<1>, *) over U x K; exhaustive over a finite ring unless ``arrows`` is given."""
    arrows = space.arrows1() if arrows is None else list(arrows)
    objects = sorted({P.pi0(a) for a in arrows} | {P.pi1(a) for a in arrows}, key=str)
    return CategoryDescriptor(
        f"U<1> over {space}",
        arrows,
        objects,
        source=P.pi0,
        target=P.pi1,
        unit=P.z_pi,
        compose=P.compose_star,
        inverse=P.invert_star,
    )


def double_prolongation(space: "P.LinearSet") -> DoubleDescriptor:
    """The double category U<<1>> with its four edge categories (finite rings)."""
    c11 = space.arrows2()
    c10 = space.arrows1()
    c01 = space.bases2()
    c00 = space.bases1()
    star_top = CategoryDescriptor("(U<<1>>, *)", c11, c01, P.pi0, P.pi1, P.z_pi, P.compose_star, P.invert_star)
    star_bottom = CategoryDescriptor("(U<1>, *)", c10, c00, P.pi0, P.pi1, P.z_pi, P.compose_star, P.invert_star)
    bullet_left = CategoryDescriptor("(U<<1>>, •)", c11, c10, P.partial0, P.partial1, P.z_partial, P.compose_bullet)
    bullet_right = CategoryDescriptor("(UxKxK, •)", c01, c00, P.partial0, P.partial1, P.z_partial, P.compose_bullet)
    return DoubleDescriptor(f"U<<1>> over {space}", star_top, star_bottom, bullet_left, bullet_right)


def pair_groupoid(points: Sequence, name: str = "pair groupoid") -> CategoryDescriptor:
    """A x A with (x, y) o (y, z) = (x, z); the pair (x, y) goes from y to x."""
    pts = list(points)
    return CategoryDescriptor(
        name,
        [(x, y) for x in pts for y in pts],
        pts,
        source=lambda a: a[1],
        target=lambda a: a[0],
        unit=lambda o: (o, o),
        compose=P.pair_compose,
        inverse=lambda a: (a[1], a[0]),
    )


def difference_pregroupoid(space: "P.LinearSet", arrows: Sequence | None = None) -> PregroupoidDescriptor:
    """U<1> with [a'', a', a] = (x, v'' - v' + v; t); a = pi0, b = pi1."""
    arrows = space.arrows1() if arrows is None else list(arrows)
    return PregroupoidDescriptor(f"pregroupoid U<1> over {space}", arrows, P.pi0, P.pi1, P.pregroupoid_ternary)


def product_pregroupoid(left: Sequence, right: Sequence) -> PregroupoidDescriptor:
    """A x A' with [(x, y), (u, y), (u, v)] = (x, v)."""

    def ternary(p, q, r):
        if p[1] != q[1] or q[0] != r[0]:
            raise CompositionError("not composable", left=p, right=r)
        return (p[0], r[1])

    elems = [(x, y) for x in left for y in right]
    return PregroupoidDescriptor("pregroupoid A x A'", elems, a=lambda e: e[1], b=lambda e: e[0], ternary=ternary)




# ---------------------------------------------------------------------------
# Rings


def run_ring_suite(ring, elements: Sequence | None = None, seed: int | None = None) -> SuiteReport:
    """Commutative-ring axioms, exhaustively over ``elements`` (default: all of a finite ring)."""
    els = list(elements if elements is not None else ring.elements())
    rep = SuiteReport(f"ring axioms {ring}", seed)
    add, mul, neg, zero, one = ring.add, ring.mul, ring.neg, ring.zero, ring.one
    for a in els:
        rep.compare("additive identity", add(a, zero), a, [a])
        rep.compare("additive inverse", add(a, neg(a)), zero, [a])
        rep.compare("multiplicative identity", (mul(one, a), mul(a, one)), (a, a), [a])
        for b in els:
            rep.compare("+ commutative", add(a, b), add(b, a), [a, b])
            if ring.commutative:
                rep.compare("* commutative", mul(a, b), mul(b, a), [a, b])
            ab = add(a, b)
            for c in els:
                rep.compare("+ associative", add(ab, c), add(a, add(b, c)), [a, b, c])
                rep.compare("* associative", mul(mul(a, b), c), mul(a, mul(b, c)), [a, b, c])
                rep.compare("distributive", (mul(a, add(b, c)), mul(add(b, c), a)),
                            (add(mul(a, b), mul(a, c)), add(mul(b, a), mul(c, a))), [a, b, c])
    return rep


def run_kt_suite(base, t, seed: int | None = None) -> SuiteReport:
    """K_t: kt_mul against the X^2 -> tX rewriting oracle, ring axioms, and (1, 0) neutral."""
    from .rings import QuotientRingOracle, Truncated, kt_mul

    ring = Truncated(base, t)
    oracle = QuotientRingOracle(base, t)
    pairs = list(ring.elements())
    rep = SuiteReport(f"K_t over {base} at t = {base.format(ring.t)}", seed)
    for a in pairs:
        rep.compare("(1, 0) neutral", kt_mul((base.one, base.zero), a, ring.t, base), a, [a])
        for b in pairs:
            rep.compare("kt_mul = oracle", kt_mul(a, b, ring.t, base), oracle.mul(a, b), [a, b])
    return rep.merge(run_ring_suite(ring, pairs, seed))


__all__ = [
    "SuiteReport", "CategoryDescriptor", "DoubleDescriptor", "PregroupoidDescriptor",
    "run_category_suite", "run_groupoid_suite", "run_doublecat_suite",
    "run_pregroupoid_suite", "run_scaled_action_suite", "inverse_scaled", "MAX_COUNTEREXAMPLES",
    "difference_groupoid", "double_prolongation", "pair_groupoid", "difference_pregroupoid",
    "product_pregroupoid", "run_ring_suite", "run_kt_suite",
]
