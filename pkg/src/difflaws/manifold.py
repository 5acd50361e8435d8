"""Primitive manifolds glued from chart data, and the groupoid M<1>.

Conventions.  ``overlaps[(i, j)]`` is V_ij, the part of chart i that meets
chart j, and ``transitions[(i, j)]`` is the law phi_ij : V_ji -> V_ij.  A
point (i, x) is identified with (j, y) iff y lies in V_ji and phi_ij(y) = x.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import expr as E
from . import prolong as P
from .checker import SuiteReport
from .errors import CompositionError, DiffLawsError, DomainMismatchError, HandinessError, MembershipError
from .laws import Law, Sampler, apply1, check_law_axioms, law_from_json, rational_law, space_from_json, identity_law
from .rings import Ring, parse_ring, ring_from_json

DEFAULT_SAMPLES = 200


@dataclass(frozen=True)
class ManifoldPoint:
    chart: int
    x: tuple


@dataclass(frozen=True)
class ManifoldArrow:
    chart: int
    arrow: P.Arrow1

    @property
    def t(self):
        return self.arrow.t

    def source(self) -> ManifoldPoint:
        return ManifoldPoint(self.chart, self.arrow.x)

    def target(self) -> ManifoldPoint:
        return ManifoldPoint(self.chart, P.target_point(self.arrow))

    def __str__(self):
        return f"[chart {self.chart}] {self.arrow}"


@dataclass
class GluingData:
    """Charts V_ii of a model space, overlaps V_ij and transition laws phi_ij : V_ji -> V_ij."""

    model: P.LinearSet
    charts: tuple
    overlaps: dict = field(default_factory=dict)
    transitions: dict = field(default_factory=dict)
    name: str = "manifold"

    def __post_init__(self):
        self.charts = tuple(sorted(self.charts))
        for i in self.charts:
            self.overlaps.setdefault((i, i), self.model)
            if (i, i) not in self.transitions:
                self.transitions[(i, i)] = identity_law(self.overlaps[(i, i)])
        for (i, j) in self.transitions:
            if i not in self.charts or j not in self.charts:
                raise DomainMismatchError(f"transition ({i}, {j}) names an undeclared chart")
            if (j, i) not in self.overlaps or (i, j) not in self.overlaps:
                raise DomainMismatchError(f"transition ({i}, {j}) without overlaps V_{i}{j} and V_{j}{i}")

    @property
    def ring(self) -> Ring:
        return self.model.ring

    def chart(self, i) -> P.LinearSet:
        return self.overlaps[(i, i)]

    def point(self, i, x) -> ManifoldPoint:
        x = self.chart(i).vector(x)
        self.chart(i).require(x)
        return ManifoldPoint(i, x)

    def arrow(self, i, x, v, t) -> ManifoldArrow:
        return ManifoldArrow(i, self.chart(i).arrow1(x, v, t))

    def meets(self, i, j) -> bool:
        return (i, j) in self.transitions

    def in_overlap(self, i, j, x) -> bool:
        """Whether chart-i coordinate x also lies in chart j."""
        return self.meets(j, i) and self.overlaps[(i, j)].contains(x)

    def coordinate_in(self, p: ManifoldPoint, j):
        """The chart-j coordinate of p, or None when p is not in chart j."""
        if not self.in_overlap(p.chart, j, p.x):
            return None
        return self.transitions[(j, p.chart)].f(p.x)


# ---------------------------------------------------------------------------
# Points and arrows


def same_point(g: GluingData, p: ManifoldPoint, q: ManifoldPoint) -> bool:
    if p.chart == q.chart:
        return p.x == q.x
    return g.coordinate_in(q, p.chart) == p.x


def canonical_point(g: GluingData, p: ManifoldPoint) -> ManifoldPoint:
    """Representative in the lowest-index chart containing p."""
    for i in g.charts:
        y = g.coordinate_in(p, i)
        if y is not None:
            return ManifoldPoint(i, y)
    raise MembershipError(f"{p} lies in no chart")


def footprint(a: ManifoldArrow) -> tuple:
    return (a.arrow.x, P.target_point(a.arrow))


def admits(g: GluingData, a: ManifoldArrow, j) -> bool:
    """Whether both footprint points of a lie in chart j."""
    return all(g.in_overlap(a.chart, j, p) for p in footprint(a))


def transport_arrow(g: GluingData, a: ManifoldArrow, j) -> ManifoldArrow:
    """The representative of a in chart j: apply phi_ji to (x, v; t)."""
    if j == a.chart:
        return a
    if not admits(g, a, j):
        raise MembershipError(f"footprint of {a} is not in the overlap with chart {j}")
    image = apply1(g.transitions[(j, a.chart)], a.arrow)
    return ManifoldArrow(j, g.chart(j).arrow1(image.x, image.v, image.t))


def admissible_charts(g: GluingData, arrows: Sequence[ManifoldArrow]) -> list:
    return [j for j in g.charts if all(admits(g, a, j) for a in arrows)]


def same_arrow(g: GluingData, a: ManifoldArrow, b: ManifoldArrow) -> bool:
    if a.t != b.t or not admits(g, a, b.chart):
        return False
    return transport_arrow(g, a, b.chart).arrow == b.arrow


def canonical_arrow(g: GluingData, a: ManifoldArrow) -> ManifoldArrow:
    charts = admissible_charts(g, [a])
    return transport_arrow(g, a, charts[0])


def m1_compose_all(g: GluingData, a: ManifoldArrow, b: ManifoldArrow) -> dict:
    """b * a computed in every chart that holds the footprints of both arrows."""
    if a.t != b.t:
        raise CompositionError("arrows live over different values of t", left=b, right=a)
    if not same_point(g, a.target(), b.source()) and not same_point(g, b.source(), a.target()):
        raise CompositionError(f"target of {a} is not the source of {b}", left=b, right=a)
    charts = admissible_charts(g, [a, b])
    if not charts:
        raise HandinessError(f"no declared chart contains the footprints of {a} and {b}")
    out = {}
    for k in charts:
        ak, bk = transport_arrow(g, a, k), transport_arrow(g, b, k)
        out[k] = ManifoldArrow(k, P.compose_star(bk.arrow, ak.arrow))
    return out


def m1_compose(g: GluingData, a: ManifoldArrow, b: ManifoldArrow, verify: bool = True) -> ManifoldArrow:
    """b * a (a first), in the lowest admissible chart.

    With ``verify`` the composite is computed in every admissible chart and
    the results must represent the same arrow.
    """
    results = m1_compose_all(g, a, b) if verify else None
    if results is None:
        charts = admissible_charts(g, [a, b])
        if not charts:
            raise HandinessError(f"no declared chart contains the footprints of {a} and {b}")
        k = charts[0]
        return ManifoldArrow(k, P.compose_star(transport_arrow(g, b, k).arrow, transport_arrow(g, a, k).arrow))
    first = next(iter(results.values()))
    for r in results.values():
        if not same_arrow(g, r, first):
            raise DiffLawsError(f"composite depends on the chart: {first} vs {r}")
    return first


def m1_unit(g: GluingData, p: ManifoldPoint, t) -> ManifoldArrow:
    return ManifoldArrow(p.chart, g.chart(p.chart).arrow1(p.x, g.chart(p.chart).zero(), t))


def m1_inverse(a: ManifoldArrow) -> ManifoldArrow:
    return ManifoldArrow(a.chart, P.invert_star(a.arrow))


# ---------------------------------------------------------------------------
# Sampling


_SEEDS = (1, 2, -1, Fraction(1, 2), 3, -2, Fraction(-1, 3), 5)


def sample_points(space: P.LinearSet, n: int, rng: random.Random) -> list:
    """Members of ``space``: all of them when enumerable, else seeded values then random draws."""
    if space.is_enumerable():
        pts = list(space.points())
        return pts if len(pts) <= n else rng.sample(pts, n)
    out: list = []
    ring = space.ring
    for combo in itertools.product(_SEEDS[:4], repeat=space.dim):
        try:
            p = tuple(ring.canonical(c) for c in combo)
        except DiffLawsError:
            continue
        if space.contains(p) and p not in out:
            out.append(p)
    while len(out) < n:
        out.append(space.random_point(rng))
    return out[:n]


def sample_arrows(g: GluingData, i, n: int, rng: random.Random, ts: Sequence | None = None) -> list:
    """Arrows in chart i, both of whose endpoints stay in the chart."""
    space = g.chart(i)
    ring = g.ring
    ts = list(ts) if ts is not None else None
    out = []
    for x in sample_points(space, n, rng):
        for _ in range(50):
            v = space.random_vector(rng)
            t = ring.canonical(rng.choice(ts)) if ts else ring.random_element(rng)
            a = space.arrow1(x, v, t) if space.contains(space.add(x, space.scale(v, t))) else None
            if a is not None:
                out.append(ManifoldArrow(i, a))
                break
    return out


# ---------------------------------------------------------------------------
# Validation


def validate_gluing(g: GluingData, seed: int = 0, n: int = DEFAULT_SAMPLES, laws: bool = True) -> SuiteReport:
    """phi_ii = id, the cocycle relation phi_ij o phi_jk = phi_ik on triple overlaps, and law axioms."""
    rng = random.Random(seed)
    rep = SuiteReport(f"gluing {g.name}", seed, "exhaustive" if g.model.is_enumerable() else "sampled")
    for name in ("phi_ii = id", "transition lands in overlap", "cocycle", "transition law axioms"):
        rep.declare(name)
    pts = {}
    for (k, j), space in g.overlaps.items():
        if k == j or g.meets(j, k):
            pts[(k, j)] = sample_points(space, n, rng)
    for i in g.charts:
        phi = g.transitions[(i, i)]
        for x in pts[(i, i)]:
            rep.compare("phi_ii = id", phi.f(x), x, [i, x])
    for (i, j), phi in sorted(g.transitions.items()):
        if i == j:
            continue
        for y in pts[(j, i)]:
            img = phi.f(y)
            rep.record("transition lands in overlap", g.overlaps[(i, j)].contains(img), [f"phi_{i}{j}", y], img)
        if laws:
            sub = check_law_axioms(phi, Sampler(phi.domain, seed, min(n, 200)), functoriality=False)
            ok = sub.passed
            detail = "pass" if ok else next(iter(ce for ces in sub.counterexamples.values() for ce in ces))
            rep.record("transition law axioms", ok, [f"phi_{i}{j}"], detail)
    for i, j, k in itertools.product(g.charts, repeat=3):
        if not (g.meets(i, j) and g.meets(j, k) and g.meets(i, k)) or j == k:
            continue
        # z in chart k, inside both V_kj and V_ki; y = phi_jk(z) must lie in V_ji
        for z in pts[(k, j)]:
            if not g.overlaps[(k, i)].contains(z):
                continue
            y = g.transitions[(j, k)].f(z)
            if not g.overlaps[(j, i)].contains(y):
                continue
            lhs = g.transitions[(i, j)].f(y)
            rhs = g.transitions[(i, k)].f(z)
            rep.compare("cocycle", lhs, rhs, {"i": i, "j": j, "k": k, "z": z})
    return rep


# ---------------------------------------------------------------------------
# Laws between manifolds


@dataclass
class ManifoldLaw:
    """A family of laws f_ij from chart j of the source to chart i of the target."""

    source: GluingData
    target: GluingData
    pieces: dict
    report: SuiteReport | None = None

    def apply1(self, a: ManifoldArrow) -> ManifoldArrow:
        for (i, j), f in sorted(self.pieces.items()):
            if j != a.chart:
                continue
            if all(f.domain.contains(p) for p in footprint(a)):
                img = apply1(f, a.arrow)
                return ManifoldArrow(i, self.target.chart(i).arrow1(img.x, img.v, img.t))
        for j in self.source.charts:
            if j != a.chart and admits(self.source, a, j):
                try:
                    return self.apply1(transport_arrow(self.source, a, j))
                except MembershipError:
                    continue
        raise MembershipError(f"no piece is defined on {a}")


def _try_apply(law: Law, a: P.Arrow1, space: P.LinearSet):
    try:
        img = apply1(law, a)
    except DiffLawsError:
        return None
    return space.arrow1(img.x, img.v, img.t) if space.contains(img.x) and space.contains(P.target_point(img)) else None


def manifold_law(source: GluingData, target: GluingData, pieces: dict, seed: int = 0,
                 n: int = DEFAULT_SAMPLES) -> ManifoldLaw:
    """Check f_kl = phi'_ki o f_ij o phi_jl on sampled points and arrows of chart l.

    Both sides are compared wherever every map involved is defined.  The
    report is attached to the result; failures do not raise.
    """
    rng = random.Random(seed)
    rep = SuiteReport("manifold law compatibility", seed)
    rep.declare("points")
    rep.declare("arrows")
    samples = {l: sample_arrows(source, l, n, rng) for l in source.charts}
    for (k, l), f_kl in sorted(pieces.items()):
        for (i, j), f_ij in sorted(pieces.items()):
            if not (source.meets(j, l) and target.meets(k, i)):
                continue
            phi, psi = source.transitions[(j, l)], target.transitions[(k, i)]
            for a in samples[l]:
                y = a.arrow.x
                if not (f_kl.domain.contains(y) and source.overlaps[(l, j)].contains(y)):
                    continue
                x = phi.f(y)
                if not f_ij.domain.contains(x):
                    continue
                u = f_ij.f(x)
                if not target.overlaps[(i, k)].contains(u):
                    continue
                rep.compare("points", f_kl.f(y), psi.f(u), {"pieces": f"f_{k}{l} vs f_{i}{j}", "x": y})
                lhs = _try_apply(f_kl, a.arrow, target.chart(k))
                step = _try_apply(phi, a.arrow, source.chart(j))
                step = step and _try_apply(f_ij, step, target.chart(i))
                rhs = step and _try_apply(psi, step, target.chart(k))
                if lhs is not None and rhs is not None:
                    rep.compare("arrows", lhs, rhs, {"pieces": f"f_{k}{l} vs f_{i}{j}", "a": a.arrow})
    return ManifoldLaw(source, target, dict(pieces), rep)


def induced_pieces(source: GluingData, target: GluingData, diagonal: dict, seed: int = 0) -> dict:
    """Complete {(i, i): f_ii} with cross pieces f_ij = f_ii o phi_ij (chart j to chart i).

    The cross piece is defined on V_ji.
    """
    pieces = dict(diagonal)
    for (i, j), phi in source.transitions.items():
        if i == j or (i, i) not in diagonal:
            continue
        f = diagonal[(i, i)]
        sub = {c: b for c, b in zip(f.domain.coords, phi.base)}
        sub_fac = dict(sub)
        sub_fac.update({d: e for d, e in zip(f.directions, phi.factorizer)})
        base = [E.substitute(e, sub) for e in f.base]
        fac = [E.substitute(e, sub_fac) for e in f.factorizer]
        pieces[(i, j)] = Law(phi.domain, target.chart(i), base, fac, "induced", phi.directions)
    return pieces


# ---------------------------------------------------------------------------
# Built-ins and files


def projective_line(ring: Ring | None = None, phi12: str = "1/x", phi21: str = "1/x") -> GluingData:
    """Two copies of K glued along K* by x -> 1/x."""
    ring = ring or parse_ring("Q")
    model = P.LinearSet(ring, 1, name="K")
    v12 = P.LinearSet(ring, 1, ["x"], name="V12")
    v21 = P.LinearSet(ring, 1, ["x"], name="V21")
    t12 = rational_law(v21, [phi12], codomain=v12, verify=False)
    t21 = rational_law(v12, [phi21], codomain=v21, verify=False)
    return GluingData(model, (1, 2), {(1, 2): v12, (2, 1): v21}, {(1, 2): t12, (2, 1): t21}, "projective line")


def single_chart(space: P.LinearSet) -> GluingData:
    return GluingData(space, (1,), name=f"chart {space}")


def gluing_from_json(data: dict, ring: Ring | None = None, verify_laws: bool = False) -> GluingData:
    """{"model": {"ring", "dim"}, "charts": [...], "overlaps": [{"i", "j", "domain", "law"}]}.

    An overlap entry (i, j) declares V_ij and, optionally, the law phi_ij
    whose domain is V_ji (taken from the entry (j, i), or the whole model).
    """
    model_data = data.get("model") or {}
    if ring is None:
        spec = model_data.get("ring", data.get("ring"))
        if spec is None:
            raise DomainMismatchError("gluing file names no ring")
        ring = ring_from_json(spec) if not isinstance(spec, str) else parse_ring(spec)
    model = space_from_json(model_data, ring)
    charts = []
    chart_domains = {}
    for c in data.get("charts", [1]):
        if isinstance(c, dict):
            charts.append(c["index"])
            if "domain" in c:
                chart_domains[(c["index"], c["index"])] = space_from_json(c["domain"], ring, model.dim)
        else:
            charts.append(c)
    overlaps = dict(chart_domains)
    entries = data.get("overlaps", [])
    for e in entries:
        dom = e.get("domain")
        overlaps[(e["i"], e["j"])] = space_from_json(dom, ring, model.dim) if dom else model
    transitions = {}
    for e in entries:
        if "law" not in e:
            continue
        i, j = e["i"], e["j"]
        src = overlaps.get((j, i), model)
        tmp = law_from_json(e["law"], ring, verify=verify_laws)
        dirs = tuple(E.direction_names(src.coords))
        rename = {a: E.Var(b) for a, b in zip(tmp.variables + tmp.directions, src.coords + dirs)}
        transitions[(i, j)] = Law(src, overlaps[(i, j)], [E.substitute(b, rename) for b in tmp.base],
                                  [E.substitute(f, rename) for f in tmp.factorizer], tmp.kind, dirs)
    return GluingData(model, tuple(charts), overlaps, transitions, data.get("name", "manifold"))


def load_gluing(path: str, ring: Ring | None = None) -> GluingData:
    with open(path, encoding="utf-8") as fh:
        return gluing_from_json(json.load(fh), ring)


__all__ = [
    "ManifoldPoint", "ManifoldArrow", "GluingData", "ManifoldLaw",
    "same_point", "canonical_point", "footprint", "admits", "transport_arrow", "admissible_charts",
    "same_arrow", "canonical_arrow", "m1_compose", "m1_compose_all", "m1_unit", "m1_inverse",
    "sample_points", "sample_arrows", "validate_gluing", "manifold_law", "induced_pieces",
    "projective_line", "single_chart", "gluing_from_json", "load_gluing",
]
