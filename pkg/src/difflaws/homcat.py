"""Pointwise structure on sets of morphisms U<1> -> W<1>.

Two morphisms F, G are *-composable when pi1(G(a)) = pi0(F(a)) for every
arrow a, and then (F * G)(a) = F(a) * G(a).  The same recipe with • gives the
second composition on morphisms of double prolongations.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from . import expr as E
from . import prolong as P
from .checker import SuiteReport
from .errors import CompositionError, DiffLawsError
from .laws import Law, Sampler, apply1, apply2, check_law_axioms


@dataclass(frozen=True)
class HomElement:
    """A morphism of prolongations, evaluated pointwise.

    ``act1`` maps Arrow1 to Arrow1 and ``act2`` (optional) Arrow2 to Arrow2.
    ``law`` is set when the element is backed by a C^1 law; ``fiber``
    restricts the element to arrows with that value of t (e.g. t = 0 for
    vector fields).
    """

    act1: Callable
    act2: Callable | None = None
    law: Law | None = None
    fiber: object = None
    name: str = ""

    def __call__(self, a):
        if self.fiber is not None and a.t != self.fiber:
            raise CompositionError(f"{self.name or 'element'} is only defined on the t = {self.fiber} fiber", left=a)
        if isinstance(a, P.Arrow2):
            if self.act2 is None:
                raise CompositionError("element has no action on double prolongations", left=a)
            return self.act2(a)
        return self.act1(a)

    def accepts(self, a) -> bool:
        return self.fiber is None or a.t == self.fiber


def from_law(law: Law, fiber=None, name: str = "") -> HomElement:
    return HomElement(lambda a: apply1(law, a), lambda a: apply2(law, a), law, fiber, name or law.describe())


def vector_field(space: P.LinearSet, components: Sequence, name: str = "") -> HomElement:
    """The section x -> (x, X(x); 0) of the tangent fiber, as a t = 0 element over the identity."""
    exprs = [E.as_expr(c) for c in components]
    fns = [E.compile_expr(e, space.ring) for e in exprs]

    def act(a: P.Arrow1) -> P.Arrow1:
        env = dict(zip(space.coords, a.x))
        return space.arrow1(a.x, tuple(fn(env) for fn in fns), a.t)

    return HomElement(act, None, None, space.ring.zero, name or f"X = {[str(e) for e in exprs]}")


def sample_hash(arrows: Iterable) -> str:
    """Short digest identifying a sample set (order-insensitive)."""
    text = "\n".join(sorted(str(a) for a in arrows))
    return hashlib.sha256(text.encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# Compositions


def hom_composable_star(F: HomElement, G: HomElement, arrows: Iterable) -> bool:
    """True iff pi1(G(a)) = pi0(F(a)) on every sample arrow both accept."""
    for a in arrows:
        if F.accepts(a) and G.accepts(a) and P.pi1(G(a)) != P.pi0(F(a)):
            return False
    return True


def hom_composable_bullet(F: HomElement, G: HomElement, arrows: Iterable) -> bool:
    for a in arrows:
        if F.accepts(a) and G.accepts(a) and P.partial1(G(a)) != P.partial0(F(a)):
            return False
    return True


def _star_law(F: HomElement, G: HomElement) -> Law | None:
    """F * G as a law: base of G, factorizer F^[1] + G^[1] (only meaningful when composable)."""
    if F.law is None or G.law is None:
        return None
    f, g = F.law, G.law
    if f.domain is not g.domain or f.codomain.dim != g.codomain.dim:
        return None
    rename = {o: E.Var(n) for o, n in zip(f.directions, g.directions)}
    fac = [E.Add(E.substitute(a, rename), b) for a, b in zip(f.factorizer, g.factorizer)]
    return Law(g.domain, g.codomain, g.base, fac, "pointwise sum", g.directions)


def hom_star(F: HomElement, G: HomElement, samples: Iterable | None = None) -> HomElement:
    """(F * G)(a) = F(a) * G(a).  With ``samples``, composability is verified first."""
    if samples is not None:
        for a in samples:
            if F.accepts(a) and G.accepts(a) and P.pi1(G(a)) != P.pi0(F(a)):
                raise CompositionError(f"elements are not *-composable at sample {a}", left=F(a), right=G(a))
    fiber = F.fiber if F.fiber is not None else G.fiber

    def act1(a):
        return P.compose_star(F(a), G(a))

    def act2(a):
        return P.compose_star(F(a), G(a))

    both2 = F.act2 is not None and G.act2 is not None
    return HomElement(act1, act2 if both2 else None, _star_law(F, G), fiber, f"({F.name}) * ({G.name})")


def hom_bullet(F: HomElement, G: HomElement, samples: Iterable | None = None) -> HomElement:
    """(F • G)(a) = F(a) • G(a) on double prolongations."""
    if samples is not None:
        for a in samples:
            if F.accepts(a) and G.accepts(a) and P.partial1(G(a)) != P.partial0(F(a)):
                raise CompositionError(f"elements are not •-composable at sample {a}", left=F(a), right=G(a))

    def act2(a):
        return P.compose_bullet(F(a), G(a))

    def act1(a):
        raise CompositionError("• is defined on double prolongations only", left=a)

    return HomElement(act1, act2, None, F.fiber if F.fiber is not None else G.fiber, f"({F.name}) • ({G.name})")


def hom_unit_right(F: HomElement) -> HomElement:
    """a -> z(pi0(F(a))): the zero-factorizer element over the base map of F; F * it = F."""
    act2 = (lambda a: P.z_pi(P.pi0(F(a)))) if F.act2 is not None else None
    law = None
    if F.law is not None:
        f = F.law
        law = Law(f.domain, f.codomain, f.base, [E.Const(0)] * f.codomain.dim, "zero section", f.directions)
    return HomElement(lambda a: P.z_pi(P.pi0(F(a))), act2, law, F.fiber, f"z pi0 ({F.name})")


def hom_unit_left(F: HomElement) -> HomElement:
    """a -> z(pi1(F(a))); it * F = F."""
    act2 = (lambda a: P.z_pi(P.pi1(F(a)))) if F.act2 is not None else None
    return HomElement(lambda a: P.z_pi(P.pi1(F(a))), act2, None, F.fiber, f"z pi1 ({F.name})")


def hom_inverse(F: HomElement) -> HomElement:
    act2 = (lambda a: P.invert_star(F(a))) if F.act2 is not None else None
    return HomElement(lambda a: P.invert_star(F(a)), act2, None, F.fiber, f"({F.name})^-1")


def hom_equal(F: HomElement, G: HomElement, arrows: Iterable) -> bool:
    return all(F(a) == G(a) for a in arrows if F.accepts(a) and G.accepts(a))


# ---------------------------------------------------------------------------
# Suites


def _try(fn, *args):
    try:
        return fn(*args), None
    except DiffLawsError as exc:
        return None, exc


def check_hom_element(H: HomElement, arrows1: Sequence, arrows2: Sequence = (), seed: int | None = None) -> SuiteReport:
    """Pointwise morphism checks: t preserved, units and * (and •) preserved on the samples."""
    rep = SuiteReport(f"hom element {H.name}", seed, meta={"samples": sample_hash(arrows1)})
    for n in ("preserves t", "preserves units", "preserves *", "preserves •"):
        rep.declare(n)
    arrows1 = [a for a in arrows1 if H.accepts(a)]
    for a in arrows1:
        img, err = _try(H, a)
        if err:
            rep.record("preserves t", False, [a], str(err))
            continue
        rep.compare("preserves t", img.t, a.t, [a])
        z = P.z_pi(P.pi0(a))
        rep.compare("preserves units", H(z), P.z_pi(P.pi0(img)), [a])
    for g, f in P.iter_pairs(arrows1, P.pi0, P.pi1):
        lhs, e1 = _try(lambda: H(P.compose_star(g, f)))
        rhs, e2 = _try(lambda: P.compose_star(H(g), H(f)))
        rep.record("preserves *", not (e1 or e2) and lhs == rhs, [g, f], str(e1) if e1 else lhs, str(e2) if e2 else rhs)
    if H.act2 is not None:
        arrows2 = [a for a in arrows2 if H.accepts(a)]
        for g, f in P.iter_pairs(arrows2, P.partial0, P.partial1):
            lhs, e1 = _try(lambda: H(P.compose_bullet(g, f)))
            rhs, e2 = _try(lambda: P.compose_bullet(H(g), H(f)))
            rep.record("preserves •", not (e1 or e2) and lhs == rhs, [g, f], str(e1) if e1 else lhs,
                       str(e2) if e2 else rhs)
    return rep


def check_hom_closure(F: HomElement, G: HomElement, sampler: Sampler | None = None) -> SuiteReport:
    """F * G is again a morphism: the law-level suite when both are laws, the pointwise suite otherwise,
    plus agreement of the law with the pointwise composite."""
    FG = hom_star(F, G)
    space = (F.law or G.law).domain if (F.law or G.law) else None
    if FG.law is not None:
        sampler = sampler or Sampler(FG.law.domain)
        rep = check_law_axioms(FG.law, sampler)
        rep.suite = f"closure of {FG.name}"
        rep.declare("pointwise contract")
        arrows = [P.Arrow1(space, x, v, t, _checked=True) for x, v, t in sampler.triples()]
        for a in arrows:
            if F.accepts(a):
                rep.compare("pointwise contract", apply1(FG.law, a), FG(a), [a])
        rep.meta["samples"] = sample_hash(arrows)
        return rep
    raise ValueError("check_hom_closure needs law-backed elements; use check_hom_element")


def check_pointwise_structure(elements: Sequence[HomElement], arrows: Sequence, seed: int | None = None) -> SuiteReport:
    """Associativity, unit and inverse laws of the pointwise * on composable Hom triples."""
    rep = SuiteReport("pointwise Hom groupoid", seed, meta={"samples": sample_hash(arrows)})
    for n in ("associativity", "right unit", "left unit", "inverse"):
        rep.declare(n)
    for F in elements:
        zr, zl, inv = hom_unit_right(F), hom_unit_left(F), hom_inverse(F)
        rep.record("right unit", hom_equal(hom_star(F, zr), F, arrows), [F.name])
        rep.record("left unit", hom_equal(hom_star(zl, F), F, arrows), [F.name])
        rep.record("inverse", hom_equal(hom_star(inv, F), zr, arrows) and hom_equal(hom_star(F, inv), zl, arrows),
                   [F.name])
    for H in elements:
        for G in elements:
            if not hom_composable_star(H, G, arrows):
                continue
            for F in elements:
                if not hom_composable_star(G, F, arrows):
                    continue
                lhs = hom_star(hom_star(H, G), F)
                rhs = hom_star(H, hom_star(G, F))
                rep.record("associativity", hom_equal(lhs, rhs, arrows), [H.name, G.name, F.name])
    return rep


def check_endomorphism_commutation(space: P.LinearSet) -> SuiteReport:
    """(x, v', t) * (x, v, t) = (x, v' + v, t) = (x, v, t) * (x, v', t) for endomorphisms (vt = v't = 0)."""
    rep = SuiteReport(f"endomorphism commutation over {space}")
    rep.declare("a * b = (x, v + v', t) = b * a")
    loops: dict = {}
    for a in space.arrows1():
        if P.pi0(a) == P.pi1(a):
            loops.setdefault(P.pi0(a), []).append(a)
    for group in loops.values():
        for a in group:
            for b in group:
                ab, ba = P.compose_star(a, b), P.compose_star(b, a)
                expected = space.arrow1(a.x, space.add(a.v, b.v), a.t)
                rep.record("a * b = (x, v + v', t) = b * a", ab == expected == ba, [a, b], ab, ba)
    return rep


__all__ = [
    "HomElement", "from_law", "sample_hash", "vector_field", "hom_composable_star", "hom_composable_bullet",
    "hom_star", "hom_bullet", "hom_unit_right", "hom_unit_left", "hom_inverse", "hom_equal",
    "check_hom_element", "check_hom_closure", "check_pointwise_structure", "check_endomorphism_commutation",
]
