"""C^1 laws: a base map together with an explicit difference factorizer.

A :class:`Law` stores ``base`` (expressions in the domain coordinates) and
``factorizer`` (expressions in the coordinates, the direction variables and
``T``) with

    f(x + vt) - f(x) = F(x, v, t) * t.

From these two pieces it acts on U<1> by (x, v; t) -> (f(x), F(x, v, t); t)
and on U<<1>> by (x, v; s, t) -> (f(x), F(x, v, st); s, t).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

from . import expr as E
from . import prolong as P
from .checker import SuiteReport
from .errors import (
    DiffLawsError,
    DomainMismatchError,
    LawConstructionError,
    NotInvertibleError,
    UnsupportedOperationError,
)
from .rings import Ring, kt_mul

EXHAUSTIVE_LIMIT = 10**6
DEFAULT_SAMPLES = 1000


# ---------------------------------------------------------------------------
# Samplers


class Sampler:
    """Enumerates or draws the tuples the law checks quantify over.

    Exhaustive when the ring is finite and |K|^(3*dim + 1) <= ``limit``,
    otherwise ``n`` pseudo-random draws from ``random.Random(seed)``.
    """

    def __init__(self, space: P.LinearSet, seed: int = 0, n: int = DEFAULT_SAMPLES, limit: int = EXHAUSTIVE_LIMIT):
        self.space = space
        self.seed = seed
        self.n = n
        size = space.ring.size if space.ring.is_finite else None
        self.exhaustive = size is not None and size ** (3 * space.dim + 1) <= limit

    @property
    def mode(self) -> str:
        return "exhaustive" if self.exhaustive else "sampled"

    def _rng(self, salt: int) -> random.Random:
        return random.Random(self.seed * 1_000_003 + salt)

    def _draw(self, rng: random.Random, build: Callable, tries: int = 50):
        for _ in range(tries):
            try:
                return build(rng)
            except DiffLawsError:
                continue
        return None

    def triples(self) -> list[tuple]:
        """(x, v, t) with x, x + vt in U."""
        sp = self.space
        if self.exhaustive:
            return [(a.x, a.v, a.t) for a in sp.arrows1()]
        rng = self._rng(1)

        def build(r):
            x, v, t = sp.random_point(r), sp.random_vector(r), sp.ring.random_element(r)
            sp.require(sp.add(x, sp.scale(v, t)))
            return (x, v, t)

        return [s for s in (self._draw(rng, build) for _ in range(self.n)) if s is not None]

    def additive(self) -> list[tuple]:
        """(x, v, v', t) with x, x + vt, x + (v + v')t in U."""
        sp = self.space
        if self.exhaustive:
            vecs = sp.vectors()
            out = []
            for x, v, t in self.triples():
                y = sp.add(x, sp.scale(v, t))
                for w in vecs:
                    if sp.contains(sp.add(y, sp.scale(w, t))):
                        out.append((x, v, w, t))
            return out
        rng = self._rng(2)

        def build(r):
            x, v, w, t = sp.random_point(r), sp.random_vector(r), sp.random_vector(r), sp.ring.random_element(r)
            y = sp.add(x, sp.scale(v, t))
            sp.require(y)
            sp.require(sp.add(y, sp.scale(w, t)))
            return (x, v, w, t)

        return [s for s in (self._draw(rng, build) for _ in range(self.n)) if s is not None]

    def quads(self) -> list[tuple]:
        """(x, v, s, t) with x, x + vst in U."""
        sp = self.space
        ring = sp.ring
        if self.exhaustive:
            return [(a.x, a.v, a.s, a.t) for a in sp.arrows2()]
        rng = self._rng(3)

        def build(r):
            x, v = sp.random_point(r), sp.random_vector(r)
            s, t = ring.random_element(r), ring.random_element(r)
            sp.require(sp.add(x, sp.scale(v, ring.mul(s, t))))
            return (x, v, s, t)

        return [q for q in (self._draw(rng, build) for _ in range(self.n)) if q is not None]


# ---------------------------------------------------------------------------
# Laws


class Law:
    """A C^1 law U -> W given by base and factorizer expression vectors."""

    def __init__(
        self,
        domain: P.LinearSet,
        codomain: P.LinearSet,
        base: Sequence,
        factorizer: Sequence,
        kind: str = "explicit",
        directions: Sequence[str] | None = None,
        name: str | None = None,
    ):
        if domain.ring != codomain.ring:
            raise DomainMismatchError("domain and codomain must share the base ring")
        self.domain = domain
        self.codomain = codomain
        self.base = tuple(E.as_expr(b) for b in base)
        self.factorizer = tuple(E.as_expr(f) for f in factorizer)
        if len(self.base) != codomain.dim or len(self.factorizer) != codomain.dim:
            raise DomainMismatchError(
                f"law has {len(self.base)} base and {len(self.factorizer)} factorizer components "
                f"for a codomain of dimension {codomain.dim}"
            )
        self.kind = kind
        self.directions = tuple(directions) if directions is not None else tuple(E.direction_names(domain.coords))
        if len(self.directions) != domain.dim:
            raise DomainMismatchError("one direction name per domain coordinate")
        self.name = name
        ring = domain.ring
        self._f = [E.compile_expr(b, ring) for b in self.base]
        self._F = [E.compile_expr(f, ring) for f in self.factorizer]

    @property
    def ring(self) -> Ring:
        return self.domain.ring

    @property
    def variables(self) -> tuple[str, ...]:
        return self.domain.coords

    def __repr__(self):
        return f"Law({self.kind}: {self.describe()})"

    def describe(self) -> str:
        base = ", ".join(str(b) for b in self.base)
        fac = ", ".join(str(f) for f in self.factorizer)
        return f"f = [{base}], F = [{fac}]"

    # -- evaluation -----------------------------------------------------------

    def f(self, x) -> tuple:
        x = self.domain.vector(x)
        env = dict(zip(self.domain.coords, x))
        return tuple(fn(env) for fn in self._f)

    def F(self, x, v, t) -> tuple:
        x, v = self.domain.vector(x), self.domain.vector(v)
        env = dict(zip(self.domain.coords, x))
        env.update(zip(self.directions, v))
        env[E.T_VAR] = self.ring.canonical(t)
        return tuple(fn(env) for fn in self._F)

    def tangent(self, x, v) -> tuple:
        """(f(x), df(x)v): the t = 0 fiber."""
        return (self.f(x), self.F(x, v, self.ring.zero))

    def fiber_t(self, t, x, v) -> tuple:
        """(f(x), F(x, v, t)): the map f_t on V_t = V x V."""
        return (self.f(x), self.F(x, v, t))

    # -- equality ---------------------------------------------------------------

    def same_law(self, other: "Law") -> bool:
        """Normal-form equality of base and factorizer (coordinates matched by position)."""
        if self.domain.dim != other.domain.dim or self.codomain.dim != other.codomain.dim:
            return False
        rename = {o: E.Var(s) for o, s in zip(other.domain.coords + other.directions,
                                             self.domain.coords + self.directions)}
        pairs = zip(self.base + self.factorizer, other.base + other.factorizer)
        return all(E.fractions_equal(a, E.substitute(b, rename)) for a, b in pairs)

    def to_json(self) -> dict:
        from .rings import ring_to_json

        return {
            "ring": ring_to_json(self.ring),
            "domain": space_to_json(self.domain),
            "codomain": space_to_json(self.codomain),
            "variables": list(self.domain.coords),
            "directions": list(self.directions),
            "base": [str(b) for b in self.base],
            "factorizer": [str(f) for f in self.factorizer],
            "kind": self.kind,
        }


def space_to_json(space: P.LinearSet) -> dict:
    out: dict = {"dim": space.dim, "coords": list(space.coords)}
    if space.kind == "denominators":
        out["denominators"] = [str(d) for d in space.denominators]
    elif space.kind == "finite":
        out["points"] = [[space.ring.format(c) for c in p] for p in space.points()]
    elif space.kind == "predicate":
        out["predicate"] = "opaque"
    return out


def space_from_json(data: dict | None, ring: Ring, default_dim: int = 1) -> P.LinearSet:
    data = data or {}
    dim = int(data.get("dim", default_dim))
    coords = data.get("coords")
    if "denominators" in data:
        return P.LinearSet(ring, dim, list(data["denominators"]), coords=coords)
    if "points" in data:
        pts = [[ring.parse(str(c)) for c in (p if isinstance(p, list) else [p])] for p in data["points"]]
        return P.LinearSet(ring, dim, pts, coords=coords)
    return P.LinearSet(ring, dim, coords=coords)


def law_from_json(data: dict, ring: Ring | None = None, verify: bool = True, seed: int = 0) -> Law:
    """Build a law from its JSON description; ``ring`` overrides the file's ring."""
    from .rings import parse_ring, ring_from_json

    if ring is None:
        if "ring" not in data:
            raise DomainMismatchError("law file names no ring; pass one explicitly")
        spec = data["ring"]
        ring = parse_ring(spec) if isinstance(spec, str) else ring_from_json(spec)
    base = [E.parse(b) for b in data["base"]]
    variables = data.get("variables")
    dom_data = dict(data.get("domain") or {})
    if variables and "coords" not in dom_data:
        dom_data["coords"] = variables
        dom_data.setdefault("dim", len(variables))
    domain = space_from_json(dom_data, ring)
    cod_data = data.get("codomain") or {"dim": len(base)}
    codomain = space_from_json(cod_data, ring, len(base))
    directions = data.get("directions")
    kind = data.get("kind", "explicit")
    if "factorizer" in data:
        fac = [E.parse(f) for f in data["factorizer"]]
        law = Law(domain, codomain, base, fac, kind, directions)
        if verify:
            verify_on_samples(law, seed=seed)
        return law
    if kind == "rational":
        return rational_law(domain, base, codomain=codomain, seed=seed, verify=verify)
    return polynomial_law(domain, base, codomain=codomain, seed=seed, verify=verify)


# ---------------------------------------------------------------------------
# Constructors


def _space(domain: P.LinearSet | Ring, dim: int = 1) -> P.LinearSet:
    return domain if isinstance(domain, P.LinearSet) else P.LinearSet(domain, dim)


def constant_law(domain: P.LinearSet | Ring, c, codomain: P.LinearSet | None = None) -> Law:
    """f(x) = c with factorizer 0."""
    dom = _space(domain)
    c = list(c) if isinstance(c, (list, tuple)) else [c]
    cod = codomain or P.LinearSet(dom.ring, len(c))
    return Law(dom, cod, [E.as_expr(Fraction(v)) for v in c], [E.Const(0)] * len(c), "constant")


def _linear_exprs(matrix: Sequence[Sequence], names: Sequence[str]) -> list[E.Expr]:
    out = []
    for row in matrix:
        if len(row) != len(names):
            raise DomainMismatchError(f"matrix row of length {len(row)} for {len(names)} coordinates")
        acc: E.Expr | None = None
        for a, n in zip(row, names):
            a = Fraction(a)
            if a == 0:
                continue
            term: E.Expr = E.Var(n) if a == 1 else E.Mul(E.Const(abs(a)), E.Var(n))
            if acc is None:
                acc = E.Neg(term) if a < 0 else term
            else:
                acc = E.Sub(acc, term) if a < 0 else E.Add(acc, term)
        out.append(acc if acc is not None else E.Const(0))
    return out


def linear_law(domain: P.LinearSet | Ring, matrix: Sequence[Sequence], codomain: P.LinearSet | None = None) -> Law:
    """f(x) = A x with factorizer A v."""
    matrix = [list(r) for r in matrix]
    dom = _space(domain, len(matrix[0]) if matrix else 0)
    cod = codomain or P.LinearSet(dom.ring, len(matrix))
    dirs = E.direction_names(dom.coords)
    return Law(dom, cod, _linear_exprs(matrix, dom.coords), _linear_exprs(matrix, dirs), "linear", dirs)


def identity_law(domain: P.LinearSet) -> Law:
    n = domain.dim
    law = linear_law(domain, [[1 if i == j else 0 for j in range(n)] for i in range(n)], codomain=domain)
    law.kind = "linear"
    return law


def affine_law(domain: P.LinearSet | Ring, matrix: Sequence[Sequence], b: Sequence,
               codomain: P.LinearSet | None = None) -> Law:
    """f(x) = A x + b with factorizer A v."""
    lin = linear_law(domain, matrix, codomain)
    if len(b) != len(lin.base):
        raise DomainMismatchError("offset has the wrong dimension")
    base = []
    for e, c in zip(lin.base, b):
        c = Fraction(c)
        if c == 0:
            base.append(e)
        elif e == E.Const(0):
            base.append(E.as_expr(c))
        else:
            base.append(E.Add(e, E.Const(c)) if c > 0 else E.Sub(e, E.Const(-c)))
    return Law(lin.domain, lin.codomain, base, lin.factorizer, "affine", lin.directions)


def _require_commutative(ring: Ring, what: str) -> None:
    if not ring.commutative:
        raise UnsupportedOperationError(f"{what} needs a commutative base ring; {ring} is not")


def bilinear_law(ring: Ring, tensor: Sequence, left_coords: Sequence[str] | None = None,
                 right_coords: Sequence[str] | None = None) -> Law:
    """Law of the bilinear map B(x, y)_k = sum_ij tensor[k][i][j] x_i y_j.

    At the point (x, y) with direction (u, v) the factorizer is
    B(x, v) + B(u, y) + T B(u, v).
    """
    _require_commutative(ring, "a bilinear law")
    p, q = len(tensor[0]), len(tensor[0][0])
    lc = tuple(left_coords) if left_coords else (("x",) if p == 1 else tuple(f"x{i + 1}" for i in range(p)))
    rc = tuple(right_coords) if right_coords else (("y",) if q == 1 else tuple(f"y{j + 1}" for j in range(q)))
    left = P.LinearSet(ring, p, coords=lc)
    right = P.LinearSet(ring, q, coords=rc)
    dom = P.LinearSet.product(left, right)
    dirs = E.direction_names(dom.coords)
    lx, ly = [E.Var(n) for n in lc], [E.Var(n) for n in rc]
    lu, lv = [E.Var(n) for n in dirs[:p]], [E.Var(n) for n in dirs[p:]]

    def B(k, xs, ys):
        acc: E.Expr | None = None
        for i in range(p):
            for j in range(q):
                c = Fraction(tensor[k][i][j])
                if c == 0:
                    continue
                term: E.Expr = E.Mul(xs[i], ys[j])
                if c != 1:
                    term = E.Mul(E.Const(abs(c)), term)
                if acc is None:
                    acc = E.Neg(term) if c < 0 else term
                else:
                    acc = E.Sub(acc, term) if c < 0 else E.Add(acc, term)
        return acc if acc is not None else E.Const(0)

    r = len(tensor)
    base = [B(k, lx, ly) for k in range(r)]
    fac = [E.Add(E.Add(B(k, lx, lv), B(k, lu, ly)), E.Mul(E.Var(E.T_VAR), B(k, lu, lv))) for k in range(r)]
    return Law(dom, P.LinearSet(ring, r), base, fac, "bilinear", dirs)


def multiplication_law(ring: Ring) -> Law:
    """The algebra law of the ring product K x K -> K."""
    return bilinear_law(ring, [[[1]]])


def polynomial_law(domain: P.LinearSet | Ring, exprs: Sequence, codomain: P.LinearSet | None = None,
                   seed: int = 0, verify: bool = True) -> Law:
    """Law of a polynomial map; the factorizer is computed symbolically."""
    exprs = [E.as_expr(e) for e in exprs]
    if isinstance(domain, P.LinearSet):
        dom = domain
    else:
        coords = _coords_for(exprs)
        dom = P.LinearSet(domain, len(coords), coords=coords)
    _require_commutative(dom.ring, "a polynomial law")
    for e in exprs:
        if not E.is_polynomial(e):
            raise LawConstructionError(f"{e} is not polynomial; use rational_law")
    return _symbolic_law(dom, exprs, codomain, "polynomial", seed, verify)


def rational_law(domain: P.LinearSet | Ring, exprs: Sequence, denominators: Sequence | None = None,
                 codomain: P.LinearSet | None = None, seed: int = 0, verify: bool = True) -> Law:
    """Law of a rational map on the set where the declared denominators are units.

    With ``domain`` a ring, the domain is cut out by ``denominators``
    (default: every denominator occurring in ``exprs``).
    """
    exprs = [E.as_expr(e) for e in exprs]
    if isinstance(domain, P.LinearSet):
        dom = domain
    else:
        dens = denominators
        if dens is None:
            dens = [d for e in exprs for d in E.denominators(e) if E.variables(d)]
        coords = _coords_for(exprs)
        dom = P.LinearSet(domain, len(coords), [E.as_expr(d) for d in dens] or None, coords=coords)
    _require_commutative(dom.ring, "a rational law")
    return _symbolic_law(dom, exprs, codomain, "rational", seed, verify)


def _coords_for(exprs: Sequence[E.Expr]) -> tuple[str, ...]:
    """Coordinates of an implicit domain: x, y, z when they cover the variables, else first appearance."""
    seen: dict = {}
    for e in exprs:
        for n in E.variables(e):
            seen.setdefault(n)
    names = [n for n in seen if n != E.T_VAR]
    if not names:
        return ("x",)
    for k in range(1, 4):
        if set(names) <= set(P.default_coords(k)):
            return P.default_coords(k)
    return tuple(names)


def _symbolic_law(dom: P.LinearSet, exprs, codomain, kind, seed, verify) -> Law:
    extra = {n for e in exprs for n in E.variables(e)} - set(dom.coords)
    if extra:
        raise LawConstructionError(f"unknown variables {sorted(extra)}; domain coordinates are {list(dom.coords)}")
    dirs = E.direction_names(dom.coords)
    fac = [E.factorizer_expr(e, dom.coords, dirs) for e in exprs]
    cod = codomain or P.LinearSet(dom.ring, len(exprs))
    law = Law(dom, cod, exprs, fac, kind, dirs)
    if verify:
        verify_on_samples(law, seed=seed)
    return law


def law_with_factorizer(domain: P.LinearSet, codomain: P.LinearSet, base: Sequence, factorizer: Sequence,
                        verify: bool = True, seed: int = 0, directions: Sequence[str] | None = None) -> Law:
    """A law from a user-supplied factorizer; rejected if its identities fail on samples."""
    law = Law(domain, codomain, base, factorizer, "explicit", directions)
    if verify:
        verify_on_samples(law, seed=seed)
    return law


def verify_on_samples(law: Law, seed: int = 0, n: int = 200) -> None:
    rep = check_law_axioms(law, Sampler(law.domain, seed, n), functoriality=False)
    if not rep.passed:
        first = next(ce for ces in rep.counterexamples.values() for ce in ces)
        raise LawConstructionError(f"law fails {first['check']} at {first['inputs']}: {first['lhs']} != {first['rhs']}")


# ---------------------------------------------------------------------------
# Action on prolongations


def apply1(law: Law, a: P.Arrow1) -> P.Arrow1:
    """(x, v; t) -> (f(x), F(x, v, t); t)."""
    _check_domain(law, a)
    return law.codomain.arrow1(law.f(a.x), law.F(a.x, a.v, a.t), a.t)


def apply2(law: Law, a: P.Arrow2) -> P.Arrow2:
    """(x, v; s, t) -> (f(x), F(x, v, st); s, t)."""
    _check_domain(law, a)
    st = law.ring.mul(a.s, a.t)
    return law.codomain.arrow2(law.f(a.x), law.F(a.x, a.v, st), a.s, a.t)


def apply_base(law: Law, b: P.Base1 | P.Base2) -> P.Base1 | P.Base2:
    if isinstance(b, P.Base2):
        return law.codomain.base2(law.f(b.x), b.s, b.t)
    return law.codomain.base1(law.f(b.x), b.t)


def _check_domain(law: Law, a) -> None:
    if a.space is not law.domain:
        if a.space.ring != law.ring or a.space.dim != law.domain.dim:
            raise DomainMismatchError(f"arrow over {a.space} does not match law domain {law.domain}")
        law.domain.require(a.x, "source")
        law.domain.require(P.target_point(a), "target")


def compose_laws(g: Law, f: Law) -> Law:
    """g o f with (g o f)^[1](x, v, t) = g^[1](f(x), f^[1](x, v, t), t)."""
    if g.ring != f.ring or g.domain.dim != f.codomain.dim:
        raise DomainMismatchError(f"cannot compose: codomain {f.codomain} vs domain {g.domain}")
    sub_base = {n: e for n, e in zip(g.domain.coords, f.base)}
    sub_fac = dict(sub_base)
    sub_fac.update({n: e for n, e in zip(g.directions, f.factorizer)})
    base = [E.substitute(e, sub_base) for e in g.base]
    fac = [E.substitute(e, sub_fac) for e in g.factorizer]
    dom = f.domain
    if g.domain is not f.codomain and g.domain.kind != "whole":
        inner, outer = f, g.domain
        dom = P.LinearSet(
            f.ring, f.domain.dim,
            lambda x: f.domain.contains(x) and outer.contains(inner.f(x)),
            coords=f.domain.coords,
        )
    return Law(dom, g.codomain, base, fac, "composed", f.directions)


def level_set(law: Law, c) -> Callable[[P.Arrow2], bool]:
    """Membership in {(x, v; s, t) : f(x) = c, F(x, v, st) = 0}."""
    c = law.codomain.vector(c)
    zero = law.codomain.zero()

    def member(a: P.Arrow2) -> bool:
        if law.f(a.x) != c:
            return False
        return law.F(a.x, a.v, law.ring.mul(a.s, a.t)) == zero

    return member


def check_level_set(law: Law, c, arrows: Iterable[P.Arrow2]) -> SuiteReport:
    """Closure of a level set under * and • on the given arrows."""
    member = level_set(law, c)
    inside = [a for a in arrows if member(a)]
    rep = SuiteReport(f"level set f = {c}")
    rep.declare("closed under *")
    rep.declare("closed under •")
    rep.declare("closed under inverse")
    for a in inside:
        rep.record("closed under inverse", member(P.invert_star(a)), [a])
        for b in inside:
            if P.star_composable(b, a):
                ab = P.compose_star(b, a)
                rep.record("closed under *", member(ab), [b, a], ab)
            if P.bullet_composable(b, a):
                ab = P.compose_bullet(b, a)
                rep.record("closed under •", member(ab), [b, a], ab)
    return rep


# ---------------------------------------------------------------------------
# Axiom verification


def _attempt(fn, *args):
    try:
        return fn(*args), None
    except DiffLawsError as exc:
        return None, exc


def check_law_axioms(law: Law, sampler: Sampler | None = None, seed: int = 0, functoriality: bool = True) -> SuiteReport:
    """Defining identity, (a), (b), (c), functoriality of apply1/apply2 and scaling commutation."""
    sampler = sampler or Sampler(law.domain, seed)
    ring, dom, cod = law.ring, law.domain, law.codomain
    rep = SuiteReport(f"law axioms: {law.describe()}", sampler.seed, sampler.mode)
    zero_w = cod.zero()

    triples = sampler.triples()
    for check in ("defining identity", "(a) F(x,0,t) = 0", "(b) additivity", "(c) homogeneity", "codomain membership"):
        rep.declare(check)
    for x, v, t in triples:
        y = dom.add(x, dom.scale(v, t))
        inputs = {"x": x, "v": v, "t": t}
        fx, e1 = _attempt(law.f, x)
        fy, e2 = _attempt(law.f, y)
        Fv, e3 = _attempt(law.F, x, v, t)
        err = e1 or e2 or e3
        if err:
            rep.record("defining identity", False, inputs, str(err), "defined")
            continue
        rep.record("codomain membership", cod.contains(fx) and cod.contains(fy), inputs, [fx, fy], str(cod))
        rep.compare("defining identity", cod.sub(fy, fx), cod.scale(Fv, t), inputs)
        F0, err = _attempt(law.F, x, dom.zero(), t)
        rep.record("(a) F(x,0,t) = 0", err is None and F0 == zero_w, inputs, F0 if err is None else str(err), zero_w)

    for x, v, w, t in sampler.additive():
        y = dom.add(x, dom.scale(v, t))
        inputs = {"x": x, "v": v, "v'": w, "t": t}
        a, e1 = _attempt(law.F, y, w, t)
        b, e2 = _attempt(law.F, x, v, t)
        c, e3 = _attempt(law.F, x, dom.add(w, v), t)
        if e1 or e2 or e3:
            rep.record("(b) additivity", False, inputs, str(e1 or e2 or e3), "defined")
        else:
            rep.compare("(b) additivity", cod.add(a, b), c, inputs)

    quads = sampler.quads()
    for x, v, s, t in quads:
        inputs = {"x": x, "v": v, "s": s, "t": t}
        st = ring.mul(s, t)
        lhs, e1 = _attempt(law.F, x, dom.scale(v, s), t)
        rhs, e2 = _attempt(law.F, x, v, st)
        if e1 or e2:
            rep.record("(c) homogeneity", False, inputs, str(e1 or e2), "defined")
        else:
            rep.compare("(c) homogeneity", lhs, cod.scale(rhs, s), inputs)

    if functoriality:
        _check_functoriality(law, sampler, rep, triples, quads)
    return rep


def _check_functoriality(law: Law, sampler: Sampler, rep: SuiteReport, triples, quads) -> None:
    ring, dom = law.ring, law.domain
    for check in ("apply1 preserves *", "apply1 preserves units", "apply2 preserves *", "apply2 preserves •",
                  "apply2 commutes with partial", "scaling commutation"):
        rep.declare(check)

    arrows1 = []
    for x, v, t in triples:
        a = P.Arrow1(dom, x, v, t, _checked=True)
        arrows1.append(a)
        img, err = _attempt(apply1, law, a)
        if err:
            rep.record("apply1 preserves units", False, [a], str(err))
            continue
        z = P.z_pi(P.pi0(a))
        rep.compare("apply1 preserves units", apply1(law, z), P.z_pi(apply_base(law, P.pi0(a))), [z])

    for g, f in _composable(arrows1, sampler, rng_salt=11):
        lhs, e1 = _attempt(lambda: apply1(law, P.compose_star(g, f)))
        rhs, e2 = _attempt(lambda: P.compose_star(apply1(law, g), apply1(law, f)))
        if e1 or e2:
            rep.record("apply1 preserves *", False, [g, f], str(e1 or lhs), str(e2 or rhs))
        else:
            rep.compare("apply1 preserves *", lhs, rhs, [g, f])

    arrows2 = [P.Arrow2(dom, x, v, s, t, _checked=True) for x, v, s, t in quads]
    for a in arrows2:
        img, err = _attempt(apply2, law, a)
        if err:
            rep.record("apply2 commutes with partial", False, [a], str(err))
            continue
        for d in (P.partial0, P.partial1):
            rep.compare("apply2 commutes with partial", d(img), apply1(law, d(a)), [a])
    for g, f in _composable(arrows2, sampler, rng_salt=12):
        lhs, e1 = _attempt(lambda: apply2(law, P.compose_star(g, f)))
        rhs, e2 = _attempt(lambda: P.compose_star(apply2(law, g), apply2(law, f)))
        if e1 or e2:
            rep.record("apply2 preserves *", False, [g, f], str(e1 or lhs), str(e2 or rhs))
        else:
            rep.compare("apply2 preserves *", lhs, rhs, [g, f])
    for g, f in _bullet_composable(arrows2, sampler):
        lhs, e1 = _attempt(lambda: apply2(law, P.compose_bullet(g, f)))
        rhs, e2 = _attempt(lambda: P.compose_bullet(apply2(law, g), apply2(law, f)))
        if e1 or e2:
            rep.record("apply2 preserves •", False, [g, f], str(e1 or lhs), str(e2 or rhs))
        else:
            rep.compare("apply2 preserves •", lhs, rhs, [g, f])

    # phi_{s,t}(x, v; st) = (x, vs; t)
    for x, v, s, t in quads:
        a = P.Arrow1(dom, x, v, ring.mul(s, t), _checked=True)
        lhs, e1 = _attempt(lambda: apply1(law, P.scaling_phi(s, t, a)))
        rhs, e2 = _attempt(lambda: P.scaling_phi(s, t, apply1(law, a)))
        if e1 or e2:
            rep.record("scaling commutation", False, [a, s, t], str(e1 or lhs), str(e2 or rhs))
        else:
            rep.compare("scaling commutation", lhs, rhs, [a, s, t])


def _composable(arrows: list, sampler: Sampler, rng_salt: int) -> list[tuple]:
    """*-composable pairs: fiber join in exhaustive mode, extended chains otherwise."""
    if sampler.exhaustive:
        return list(P.iter_pairs(arrows, P.pi0, P.pi1))
    rng = random.Random(sampler.seed * 7919 + rng_salt)
    sp = sampler.space
    out = []
    for a in arrows:
        try:
            if isinstance(a, P.Arrow2):
                nxt = P.Arrow2(sp, P.target_point(a), sp.random_vector(rng), a.s, a.t)
            else:
                nxt = P.Arrow1(sp, P.target_point(a), sp.random_vector(rng), a.t)
        except DiffLawsError:
            continue
        out.append((nxt, a))
    return out


def _bullet_composable(arrows: list, sampler: Sampler) -> list[tuple]:
    if sampler.exhaustive:
        return list(P.iter_pairs(arrows, P.partial0, P.partial1))
    rng = random.Random(sampler.seed * 7919 + 13)
    ring, sp = sampler.space.ring, sampler.space
    out = []
    for a in arrows:
        # a' = (x, vs; s', t') with s' t' = t: pick t' at random and s' = t t'^-1 when t' is a unit
        t2 = ring.random_element(rng)
        inv = ring.inverse(t2)
        if inv is None:
            continue
        s2 = ring.mul(a.t, inv)
        try:
            nxt = P.Arrow2(sp, a.x, sp.scale(a.v, a.s), s2, t2)
        except DiffLawsError:
            continue
        out.append((nxt, a))
    return out


def maps_agree(a: Law, b: Law, sampler: Sampler | None = None) -> bool:
    """Sample-based equality of the base maps and factorizers (laws are finer than maps)."""
    sampler = sampler or Sampler(a.domain)
    for x, v, t in sampler.triples():
        if a.f(x) != b.f(x) or a.F(x, v, t) != b.F(x, v, t):
            return False
    return True


# ---------------------------------------------------------------------------
# Twisted morphisms


@dataclass(frozen=True)
class TwistDescriptor:
    """A map K -> K used to twist the scalar slots of a morphism.

    Kinds: ``identity``; ``scaling`` (t -> lam * t, lam a unit; not a ring
    endomorphism); ``table`` (explicit values on a finite ring).
    """

    kind: str
    ring: Ring
    lam: Any = None
    table: tuple = ()

    @classmethod
    def identity(cls, ring: Ring) -> "TwistDescriptor":
        return cls("identity", ring)

    @classmethod
    def scaling(cls, ring: Ring, lam) -> "TwistDescriptor":
        lam = ring.canonical(lam)
        if ring.inverse(lam) is None:
            raise NotInvertibleError(f"scaling factor {ring.format(lam)} is not a unit")
        return cls("scaling", ring, lam)

    @classmethod
    def from_table(cls, ring: Ring, mapping: dict) -> "TwistDescriptor":
        items = tuple(sorted((ring.canonical(k), ring.canonical(v)) for k, v in mapping.items()))
        if ring.is_finite and len(items) != ring.size:
            raise DomainMismatchError("a twist table must list every ring element")
        return cls("table", ring, table=items)

    def __call__(self, a):
        if self.kind == "identity":
            return a
        if self.kind == "scaling":
            return self.ring.mul(self.lam, a)
        return dict(self.table)[a]

    def check_endomorphism(self, samples: Iterable | None = None, seed: int = 0) -> SuiteReport:
        """phi(1) = 1, phi(a + b) = phi(a) + phi(b), phi(ab) = phi(a) phi(b)."""
        ring = self.ring
        rep = SuiteReport(f"ring endomorphism ({self.kind})", seed)
        if samples is None:
            if ring.is_finite:
                samples = ring.elements()
            else:
                rng = random.Random(seed)
                samples = [ring.random_element(rng) for _ in range(30)]
        samples = list(samples)
        rep.compare("phi(1) = 1", self(ring.one), ring.one)
        for a, b in itertools.product(samples, repeat=2):
            rep.compare("additive", self(ring.add(a, b)), ring.add(self(a), self(b)), [a, b])
            rep.compare("multiplicative", self(ring.mul(a, b)), ring.mul(self(a), self(b)), [a, b])
        return rep


def check_twisted_morphism(domain: P.LinearSet, codomain: P.LinearSet, f: Sequence, F: Sequence,
                           phi: TwistDescriptor, psi: TwistDescriptor, sampler: Sampler | None = None,
                           directions: Sequence[str] | None = None) -> SuiteReport:
    """Conditions for (x, v; s, t) -> (f(x), F(x, v; st); phi(s), psi(t)) to be a double-category morphism.

    ``phi`` twists the s-slot and ``psi`` the t-slot:

    * (2) f(x + vst) = f(x) + F(x, v; st) phi(s) psi(t)
    * (3) psi(st) = phi(s) psi(t)
    * (4) F(x + vt, v', t) + F(x, v, t) = F(x, v' + v, t)
    * (5) F(x, vs; t) = F(x, v; st) phi(s)
    """
    law = Law(domain, codomain, f, F, "twisted", directions)
    sampler = sampler or Sampler(domain)
    ring, dom, cod = domain.ring, domain, codomain
    rep = SuiteReport("twisted morphism", sampler.seed, sampler.mode)
    names = ["(2) twisted defining identity", "(3) psi(st) = phi(s) psi(t)", "(4) additivity",
             "(5) twisted homogeneity"]
    for n in names:
        rep.declare(n)
    for x, v, s, t in sampler.quads():
        st = ring.mul(s, t)
        inputs = {"x": x, "v": v, "s": s, "t": t}
        y = dom.add(x, dom.scale(v, st))
        twist = ring.mul(phi(s), psi(t))
        rep.compare(names[0], law.f(y), cod.add(law.f(x), cod.scale(law.F(x, v, st), twist)), inputs)
        rep.compare(names[1], psi(st), twist, {"s": s, "t": t})
        rep.compare(names[3], law.F(x, dom.scale(v, s), t), cod.scale(law.F(x, v, st), phi(s)), inputs)
    for x, v, w, t in sampler.additive():
        y = dom.add(x, dom.scale(v, t))
        rep.compare(names[2], cod.add(law.F(y, w, t), law.F(x, v, t)), law.F(x, dom.add(w, v), t),
                    {"x": x, "v": v, "v'": w, "t": t})
    return rep


def check_twisted_groupoid_morphism(domain: P.LinearSet, codomain: P.LinearSet, f: Sequence, F: Sequence,
                                    phi: TwistDescriptor, sampler: Sampler | None = None,
                                    directions: Sequence[str] | None = None) -> SuiteReport:
    """(x, v; t) -> (f(x), F(x, v; t); phi(t)) is a groupoid morphism iff
    f(x) + F(x, v; t) phi(t) = f(x + vt) and F is additive."""
    law = Law(domain, codomain, f, F, "twisted", directions)
    sampler = sampler or Sampler(domain)
    dom, cod = domain, codomain
    rep = SuiteReport("twisted groupoid morphism", sampler.seed, sampler.mode)
    rep.declare("twisted defining identity")
    rep.declare("additivity")
    for x, v, t in sampler.triples():
        y = dom.add(x, dom.scale(v, t))
        rep.compare("twisted defining identity", cod.add(law.f(x), cod.scale(law.F(x, v, t), phi(t))), law.f(y),
                    {"x": x, "v": v, "t": t})
    for x, v, w, t in sampler.additive():
        y = dom.add(x, dom.scale(v, t))
        rep.compare("additivity", cod.add(law.F(y, w, t), law.F(x, v, t)), law.F(x, dom.add(w, v), t),
                    {"x": x, "v": v, "v'": w, "t": t})
    return rep


# ---------------------------------------------------------------------------
# The pullback theorem for an algebra law


def check_pullback_algebra(law: Law, ts: Iterable | None = None) -> SuiteReport:
    """For the algebra law of K: on composable pairs ((x', v'), (x, v)) with x' = x + tv,
    the * law (x', v') * (x, v) = (x, v' + v) is a morphism of K-algebras into K_t.

    Products in K_t are computed through the law's fiber map f_t and
    cross-checked against ``kt_mul``.  Exhaustive over a finite ring.
    """
    ring = law.ring
    if law.domain.dim != 2 or law.codomain.dim != 1:
        raise DomainMismatchError("expected the law of a product K x K -> K")
    ts = ring.elements() if ts is None else [ring.canonical(t) for t in ts]
    rep = SuiteReport(f"pullback algebra morphism over {ring}")
    for n in ("f_t agrees with kt_mul", "subalgebra: closed under +", "subalgebra: closed under product",
              "alpha preserves +", "alpha preserves product", "alpha preserves unit", "alpha preserves scalars"):
        rep.declare(n)
    elems = ring.elements()

    for t in ts:
        def prod(a, b, t=t):
            fx, Fv = law.fiber_t(t, (a[0], b[0]), (a[1], b[1]))
            return (fx[0], Fv[0])

        def add(a, b):
            return (ring.add(a[0], b[0]), ring.add(a[1], b[1]))

        pairs = [((ring.add(x, ring.mul(t, v)), vp), (x, v)) for x in elems for v in elems for vp in elems]

        def composable(p):
            return p[0][0] == ring.add(p[1][0], ring.mul(t, p[1][1]))

        def alpha(p):
            return (p[1][0], ring.add(p[0][1], p[1][1]))

        for a in itertools.product(elems, repeat=2):
            for b in itertools.product(elems, repeat=2):
                rep.compare("f_t agrees with kt_mul", prod(a, b), kt_mul(a, b, t, ring), [a, b, t])
        one = (ring.one, ring.zero)
        rep.compare("alpha preserves unit", alpha((one, one)), one, [t])
        for p in pairs:
            for lam in elems:
                scaled = ((ring.mul(lam, p[0][0]), ring.mul(lam, p[0][1])), (ring.mul(lam, p[1][0]), ring.mul(lam, p[1][1])))
                a = alpha(p)
                rep.compare("alpha preserves scalars", alpha(scaled), (ring.mul(lam, a[0]), ring.mul(lam, a[1])), [p, lam, t])
            for q in pairs:
                s = (add(p[0], q[0]), add(p[1], q[1]))
                m = (prod(p[0], q[0]), prod(p[1], q[1]))
                rep.record("subalgebra: closed under +", composable(s), [p, q, t])
                rep.record("subalgebra: closed under product", composable(m), [p, q, t])
                rep.compare("alpha preserves +", alpha(s), add(alpha(p), alpha(q)), [p, q, t])
                rep.compare("alpha preserves product", alpha(m), prod(alpha(p), alpha(q)), [p, q, t])
    return rep


__all__ = [
    "Sampler", "Law", "constant_law", "linear_law", "identity_law", "affine_law", "bilinear_law",
    "multiplication_law", "polynomial_law", "rational_law", "law_with_factorizer", "verify_on_samples",
    "apply1", "apply2", "apply_base", "compose_laws", "level_set", "check_level_set",
    "check_law_axioms", "maps_agree", "TwistDescriptor", "check_twisted_morphism",
    "check_twisted_groupoid_morphism", "check_pullback_algebra", "law_from_json", "space_from_json",
    "space_to_json",
]
