"""Linear sets and their first (double) prolongations.

For a linear set U in V = K^n:

* ``U<1>``  consists of triples (x, v; t) with x and x + vt in U.  Under
  (x + vt, v', t) * (x, v, t) = (x, v' + v, t) it is a groupoid over
  U x K, a bundle of groupoids over K.
* ``U<<1>>`` consists of quadruples (x, v; s, t) with x + vst in U.  It
  carries the additive composition ``*`` and the multiplicative
  composition ``•`` and is a double category.

Composition follows the categorical convention: ``compose_star(a2, a1)``
is defined when ``pi1(a1) == pi0(a2)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, Sequence

from .errors import CompositionError, DomainMismatchError, MembershipError, NotInvertibleError
from .rings import Ring, iter_vectors

Vector = tuple


def default_coords(dim: int) -> tuple[str, ...]:
    if dim <= 3:
        return ("x", "y", "z")[:dim]
    return tuple(f"x{i + 1}" for i in range(dim))


class LinearSet:
    """A non-empty subset U of the module V = K^dim.

    ``membership`` is one of

    * ``None``: the whole module;
    * a list of points: a finite subset;
    * a list of expressions (or strings): U is where every one of them
      evaluates to a unit;
    * a callable ``point -> bool``.

    Linear sets compare by identity; arrows over different linear sets
    never compose.
    """

    def __init__(
        self,
        ring: Ring,
        dim: int = 1,
        membership: Any = None,
        coords: Sequence[str] | None = None,
        name: str | None = None,
    ):
        if dim < 0:
            raise ValueError("dimension must be non-negative")
        self.ring = ring
        self.dim = dim
        self.coords = tuple(coords) if coords is not None else default_coords(dim)
        if len(self.coords) != dim:
            raise ValueError("one coordinate name per dimension")
        self.name = name
        self.factors: tuple[LinearSet, ...] | None = None
        self._kind = "whole"
        self._points: frozenset | None = None
        self._denoms: list | None = None
        self._pred: Callable | None = None
        if membership is None:
            pass
        elif callable(membership):
            self._kind = "predicate"
            self._pred = membership
        else:
            items = list(membership)
            from .expr import Expr, compile_expr, parse

            if items and all(isinstance(m, (str, Expr)) for m in items):
                self._kind = "denominators"
                self._denoms = [m if isinstance(m, Expr) else parse(m) for m in items]
                self._compiled = [compile_expr(d, ring) for d in self._denoms]
            else:
                self._kind = "finite"
                self._points = frozenset(self.vector(p) for p in items)
                if not self._points:
                    raise ValueError("a linear set must be non-empty")

    # -- construction helpers ------------------------------------------------

    @classmethod
    def whole(cls, ring: Ring, dim: int = 1, **kw) -> "LinearSet":
        return cls(ring, dim, None, **kw)

    @classmethod
    def product(cls, a: "LinearSet", b: "LinearSet") -> "LinearSet":
        """U x S inside V x W; remembers its factors for :func:`product_split`."""
        if a.ring != b.ring:
            raise DomainMismatchError("factors live over different rings")
        coords = a.coords + b.coords
        if len(set(coords)) != len(coords):
            coords = default_coords(a.dim + b.dim)
        p = cls(
            a.ring,
            a.dim + b.dim,
            lambda pt: a.contains(pt[: a.dim]) and b.contains(pt[a.dim :]),
            coords=coords,
            name=f"{a}x{b}",
        )
        p.factors = (a, b)
        return p

    def __repr__(self):
        return f"LinearSet({self})"

    def __str__(self):
        if self.name:
            return self.name
        base = f"{self.ring}^{self.dim}" if self.dim != 1 else str(self.ring)
        return base if self._kind == "whole" else f"U<{base}>"

    @property
    def kind(self) -> str:
        return self._kind

    @property
    def denominators(self) -> list:
        return list(self._denoms or [])

    def vector(self, value) -> Vector:
        """Coerce to a canonical coordinate tuple of length ``dim``."""
        if not isinstance(value, (tuple, list)):
            value = (value,)
        if len(value) != self.dim:
            raise DomainMismatchError(f"expected {self.dim} coordinates, got {len(value)}")
        return tuple(self.ring.canonical(c) for c in value)

    def contains(self, point: Vector) -> bool:
        if self._kind == "whole":
            return True
        if self._kind == "finite":
            return point in self._points
        if self._kind == "denominators":
            env = dict(zip(self.coords, point))
            inverse = self.ring.inverse
            return all(inverse(f(env)) is not None for f in self._compiled)
        return bool(self._pred(point))

    def require(self, point: Vector, what: str = "point") -> None:
        if not self.contains(point):
            raise MembershipError(f"{what} {self.format_vector(point)} is not in {self}")

    # -- module arithmetic ---------------------------------------------------

    def add(self, a: Vector, b: Vector) -> Vector:
        add = self.ring.add
        return tuple(add(p, q) for p, q in zip(a, b))

    def sub(self, a: Vector, b: Vector) -> Vector:
        sub = self.ring.sub
        return tuple(sub(p, q) for p, q in zip(a, b))

    def neg(self, a: Vector) -> Vector:
        return tuple(self.ring.neg(p) for p in a)

    def scale(self, a: Vector, r) -> Vector:
        """Right scalar multiplication a·r."""
        mul = self.ring.mul
        return tuple(mul(p, r) for p in a)

    def zero(self) -> Vector:
        return (self.ring.zero,) * self.dim

    def format_vector(self, a: Vector) -> str:
        inner = ",".join(self.ring.format(c) for c in a)
        return inner if self.dim == 1 else f"({inner})"

    # -- enumeration and sampling --------------------------------------------

    def is_enumerable(self) -> bool:
        return self._kind == "finite" or self.ring.is_finite

    def points(self) -> list[Vector]:
        if self._kind == "finite":
            return sorted(self._points, key=repr)
        if not self.ring.is_finite:
            raise ValueError(f"{self} is infinite; use random_point")
        return [p for p in iter_vectors(self.ring, self.dim) if self.contains(p)]

    def vectors(self) -> list[Vector]:
        """All of V (finite rings only)."""
        return list(iter_vectors(self.ring, self.dim))

    def random_vector(self, rng: random.Random) -> Vector:
        return tuple(self.ring.random_element(rng) for _ in range(self.dim))

    def random_point(self, rng: random.Random, tries: int = 200) -> Vector:
        if self._kind == "finite":
            return rng.choice(self.points())
        for _ in range(tries):
            p = self.random_vector(rng)
            if self.contains(p):
                return p
        raise MembershipError(f"could not sample a point of {self}")

    # -- prolongations --------------------------------------------------------

    def arrow1(self, x, v, t) -> "Arrow1":
        return Arrow1(self, self.vector(x), self.vector(v), self.ring.canonical(t))

    def arrow2(self, x, v, s, t) -> "Arrow2":
        return Arrow2(self, self.vector(x), self.vector(v), self.ring.canonical(s), self.ring.canonical(t))

    def base1(self, x, t) -> "Base1":
        return Base1(self, self.vector(x), self.ring.canonical(t))

    def base2(self, x, s, t) -> "Base2":
        return Base2(self, self.vector(x), self.ring.canonical(s), self.ring.canonical(t))

    def arrows1(self, ts: Iterable | None = None) -> list["Arrow1"]:
        """Every (x, v; t) of U<1> (finite rings), optionally for selected t."""
        ring = self.ring
        ts = ring.elements() if ts is None else [ring.canonical(t) for t in ts]
        out = []
        vecs = self.vectors()
        for t in ts:
            for x in self.points():
                for v in vecs:
                    if self.contains(self.add(x, self.scale(v, t))):
                        out.append(Arrow1(self, x, v, t, _checked=True))
        return out

    def arrows2(self) -> list["Arrow2"]:
        ring = self.ring
        out = []
        vecs = self.vectors()
        for s in ring.elements():
            for t in ring.elements():
                st = ring.mul(s, t)
                for x in self.points():
                    for v in vecs:
                        if self.contains(self.add(x, self.scale(v, st))):
                            out.append(Arrow2(self, x, v, s, t, _checked=True))
        return out

    def bases1(self) -> list["Base1"]:
        return [Base1(self, x, t) for t in self.ring.elements() for x in self.points()]

    def bases2(self) -> list["Base2"]:
        ring = self.ring
        return [Base2(self, x, s, t) for s in ring.elements() for t in ring.elements() for x in self.points()]


# ---------------------------------------------------------------------------
# Elements


@dataclass(frozen=True)
class Base1:
    """A point (x; t) of U x K."""

    space: LinearSet = field(repr=False, compare=False)
    x: Vector
    t: Any

    def __eq__(self, other):
        return isinstance(other, Base1) and self.space is other.space and self.x == other.x and self.t == other.t

    def __hash__(self):
        return hash((id(self.space), self.x, self.t))

    def __str__(self):
        r = self.space.ring
        return f"({self.space.format_vector(self.x)};{r.format(self.t)})"


@dataclass(frozen=True)
class Base2:
    """A point (x; s, t) of U x K x K."""

    space: LinearSet = field(repr=False, compare=False)
    x: Vector
    s: Any
    t: Any

    def __eq__(self, other):
        return (
            isinstance(other, Base2)
            and self.space is other.space
            and (self.x, self.s, self.t) == (other.x, other.s, other.t)
        )

    def __hash__(self):
        return hash((id(self.space), self.x, self.s, self.t))

    def __str__(self):
        r = self.space.ring
        return f"({self.space.format_vector(self.x)};{r.format(self.s)},{r.format(self.t)})"


@dataclass(frozen=True)
class Arrow1:
    """An element (x, v; t) of U<1>: x and x + vt both lie in U."""

    space: LinearSet = field(repr=False, compare=False)
    x: Vector
    v: Vector
    t: Any
    _checked: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        if not self._checked:
            sp = self.space
            if len(self.x) != sp.dim or len(self.v) != sp.dim:
                raise DomainMismatchError("arrow dimension does not match its linear set")
            sp.require(self.x, "source")
            sp.require(sp.add(self.x, sp.scale(self.v, self.t)), "target")

    def __eq__(self, other):
        return (
            isinstance(other, Arrow1)
            and self.space is other.space
            and (self.x, self.v, self.t) == (other.x, other.v, other.t)
        )

    def __hash__(self):
        return hash((id(self.space), self.x, self.v, self.t))

    def __str__(self):
        sp = self.space
        return f"({sp.format_vector(self.x)},{sp.format_vector(self.v)};{sp.ring.format(self.t)})"

    def to_json(self) -> dict:
        f = self.space.ring.format
        return {"x": [f(c) for c in self.x], "v": [f(c) for c in self.v], "t": f(self.t)}


@dataclass(frozen=True)
class Arrow2:
    """An element (x, v; s, t) of U<<1>>: x and x + vst both lie in U."""

    space: LinearSet = field(repr=False, compare=False)
    x: Vector
    v: Vector
    s: Any
    t: Any
    _checked: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        if not self._checked:
            sp = self.space
            if len(self.x) != sp.dim or len(self.v) != sp.dim:
                raise DomainMismatchError("arrow dimension does not match its linear set")
            sp.require(self.x, "source")
            st = sp.ring.mul(self.s, self.t)
            sp.require(sp.add(self.x, sp.scale(self.v, st)), "target")

    def __eq__(self, other):
        return (
            isinstance(other, Arrow2)
            and self.space is other.space
            and (self.x, self.v, self.s, self.t) == (other.x, other.v, other.s, other.t)
        )

    def __hash__(self):
        return hash((id(self.space), self.x, self.v, self.s, self.t))

    def __str__(self):
        sp, f = self.space, self.space.ring.format
        return f"({sp.format_vector(self.x)},{sp.format_vector(self.v)};{f(self.s)},{f(self.t)})"

    def to_json(self) -> dict:
        f = self.space.ring.format
        return {"x": [f(c) for c in self.x], "v": [f(c) for c in self.v], "s": f(self.s), "t": f(self.t)}


def arrow_from_json(space: LinearSet, data: dict) -> Arrow1 | Arrow2:
    ring = space.ring

    def vec(key):
        raw = data[key]
        if not isinstance(raw, list):
            raw = [raw]
        return [ring.parse(str(c)) for c in raw]

    t = ring.parse(str(data["t"]))
    if "s" in data:
        return space.arrow2(vec("x"), vec("v"), ring.parse(str(data["s"])), t)
    return space.arrow1(vec("x"), vec("v"), t)


# ---------------------------------------------------------------------------
# Projections and sections


def _scalar(a) -> Any:
    """The composite scalar by which v is multiplied: t, or s·t."""
    if isinstance(a, Arrow2):
        return a.space.ring.mul(a.s, a.t)
    return a.t


def target_point(a: Arrow1 | Arrow2) -> Vector:
    sp = a.space
    return sp.add(a.x, sp.scale(a.v, _scalar(a)))


def pi0(a: Arrow1 | Arrow2) -> Base1 | Base2:
    if isinstance(a, Arrow2):
        return Base2(a.space, a.x, a.s, a.t)
    return Base1(a.space, a.x, a.t)


def pi1(a: Arrow1 | Arrow2) -> Base1 | Base2:
    y = target_point(a)
    if isinstance(a, Arrow2):
        return Base2(a.space, y, a.s, a.t)
    return Base1(a.space, y, a.t)


def z_pi(b: Base1 | Base2) -> Arrow1 | Arrow2:
    zero = b.space.zero()
    if isinstance(b, Base2):
        return Arrow2(b.space, b.x, zero, b.s, b.t, _checked=True)
    return Arrow1(b.space, b.x, zero, b.t, _checked=True)


def partial0(a: Arrow2 | Base2) -> Arrow1 | Base1:
    """(x, v; s, t) -> (x, v; st), and (x; s, t) -> (x; st) on base points."""
    st = a.space.ring.mul(a.s, a.t)
    if isinstance(a, Base2):
        return Base1(a.space, a.x, st)
    return Arrow1(a.space, a.x, a.v, st, _checked=True)


def partial1(a: Arrow2 | Base2) -> Arrow1 | Base1:
    """(x, v; s, t) -> (x, vs; t), and (x; s, t) -> (x; t) on base points."""
    if isinstance(a, Base2):
        return Base1(a.space, a.x, a.t)
    return Arrow1(a.space, a.x, a.space.scale(a.v, a.s), a.t, _checked=True)


def z_partial(a: Arrow1 | Base1) -> Arrow2 | Base2:
    """(x, v; t) -> (x, v; 1, t), and (x; t) -> (x; 1, t)."""
    one = a.space.ring.one
    if isinstance(a, Base1):
        return Base2(a.space, a.x, one, a.t)
    return Arrow2(a.space, a.x, a.v, one, a.t, _checked=True)


# ---------------------------------------------------------------------------
# Compositions


def _same_space(a, b) -> None:
    if a.space is not b.space:
        raise CompositionError("arrows belong to different linear sets", left=a, right=b)


def star_composable(a2, a1) -> bool:
    return a2.space is a1.space and pi1(a1) == pi0(a2)


def compose_star(a2: Arrow1 | Arrow2, a1: Arrow1 | Arrow2) -> Arrow1 | Arrow2:
    """a2 * a1 = (x1, v1 + v2; scalars of a1), defined when pi1(a1) = pi0(a2)."""
    _same_space(a2, a1)
    if type(a2) is not type(a1):
        raise CompositionError("cannot compose arrows of different kinds", left=a2, right=a1)
    end, start = pi1(a1), pi0(a2)
    if end != start:
        raise CompositionError(f"pi1 of right factor {end} != pi0 of left factor {start}", left=a2, right=a1)
    sp = a1.space
    v = sp.add(a1.v, a2.v)
    if isinstance(a1, Arrow2):
        out = Arrow2(sp, a1.x, v, a1.s, a1.t, _checked=True)
    else:
        out = Arrow1(sp, a1.x, v, a1.t, _checked=True)
    if sp.kind != "whole":
        # closure is automatic; re-check anyway on restricted sets
        sp.require(target_point(out), "composite target")
    return out


def invert_star(a: Arrow1 | Arrow2) -> Arrow1 | Arrow2:
    """(x, v; t) -> (x + vt, -v; t)."""
    sp = a.space
    y = target_point(a)
    if isinstance(a, Arrow2):
        return Arrow2(sp, y, sp.neg(a.v), a.s, a.t, _checked=True)
    return Arrow1(sp, y, sp.neg(a.v), a.t, _checked=True)


def bullet_composable(a2, a1) -> bool:
    return a2.space is a1.space and partial1(a1) == partial0(a2)


def compose_bullet(a2: Arrow2 | Base2, a1: Arrow2 | Base2) -> Arrow2 | Base2:
    """a2 • a1 = (x, v1; s1·s2, t2), defined when partial1(a1) = partial0(a2)."""
    _same_space(a2, a1)
    if type(a2) is not type(a1) or not isinstance(a1, (Arrow2, Base2)):
        raise CompositionError("• composes Arrow2 with Arrow2 or base points with base points", left=a2, right=a1)
    end, start = partial1(a1), partial0(a2)
    if end != start:
        raise CompositionError(f"partial1 of right factor {end} != partial0 of left factor {start}", left=a2, right=a1)
    s = a1.space.ring.mul(a1.s, a2.s)
    if isinstance(a1, Base2):
        return Base2(a1.space, a1.x, s, a2.t)
    return Arrow2(a1.space, a1.x, a1.v, s, a2.t, _checked=True)


def compose_base1(p2: Base1, p1: Base1) -> Base1:
    """Bottom edge of the double category: the discrete category on U x K."""
    if p1 != p2:
        raise CompositionError("base points differ", left=p2, right=p1)
    return p1


def j_map(a: Arrow2) -> Arrow2:
    """(x, v; s, t) -> (x + vst, -v; t, s)."""
    sp = a.space
    return Arrow2(sp, target_point(a), sp.neg(a.v), a.t, a.s, _checked=True)


def j_base(b: Base2) -> Base2:
    return Base2(b.space, b.x, b.t, b.s)


# ---------------------------------------------------------------------------
# Scaling, trivializations, anchor


def scaling_phi(s, t, a: Arrow1) -> Arrow1:
    """phi_{s,t}: (x, v; st) -> (x, vs; t)."""
    ring = a.space.ring
    s, t = ring.canonical(s), ring.canonical(t)
    if a.t != ring.mul(s, t):
        raise DomainMismatchError(f"arrow scalar {ring.format(a.t)} is not s*t = {ring.format(ring.mul(s, t))}")
    return Arrow1(a.space, a.x, a.space.scale(a.v, s), t, _checked=True)


def sign_automorphism(a: Arrow1) -> Arrow1:
    """(x, v; t) -> (x, -v; -t), the scaling morphism phi_{-1,-t}."""
    ring = a.space.ring
    minus_one = ring.neg(ring.one)
    return scaling_phi(minus_one, ring.neg(a.t), a)


def _unit_inverse(ring: Ring, t, what: str = "t"):
    inv = ring.inverse(t)
    if inv is None:
        raise NotInvertibleError(f"{what} = {ring.format(t)} is not a unit in {ring}")
    return inv


def phi_trivialize(a: Arrow1) -> tuple[Vector, Vector]:
    """Phi_t(x, v) = (x + vt, x) for a unit t: an arrow of the pair groupoid of U."""
    _unit_inverse(a.space.ring, a.t)
    return (target_point(a), a.x)


def phi_untrivialize(space: LinearSet, t, pair: tuple) -> Arrow1:
    """Inverse of Phi_t: (y, x) -> (x, (y - x) t^-1; t)."""
    ring = space.ring
    t = ring.canonical(t)
    tinv = _unit_inverse(ring, t)
    y, x = space.vector(pair[0]), space.vector(pair[1])
    return space.arrow1(x, space.scale(space.sub(y, x), tinv), t)


def pair_compose(p2: tuple, p1: tuple) -> tuple:
    """Pair groupoid: (x, y) o (y, z) = (x, z)."""
    if p2[1] != p1[0]:
        raise CompositionError("pair arrows are not composable", left=p2, right=p1)
    return (p2[0], p1[1])


def nonsingular_trivialize(a: Arrow2) -> tuple:
    """(x, v; s, t) -> (x + vst, x; st, t) for units s, t."""
    ring = a.space.ring
    _unit_inverse(ring, a.s, "s")
    _unit_inverse(ring, a.t, "t")
    return (target_point(a), a.x, ring.mul(a.s, a.t), a.t)


def nonsingular_untrivialize(space: LinearSet, quad: tuple) -> Arrow2:
    """(y, x; u, t) -> (x, (y - x) u^-1; u t^-1, t)."""
    ring = space.ring
    y, x = space.vector(quad[0]), space.vector(quad[1])
    u, t = ring.canonical(quad[2]), ring.canonical(quad[3])
    uinv = _unit_inverse(ring, u, "u")
    tinv = _unit_inverse(ring, t)
    return space.arrow2(x, space.scale(space.sub(y, x), uinv), ring.mul(u, tinv), t)


def anchor(a: Arrow1 | Arrow2) -> tuple:
    """kappa(a) = (pi1(a), pi0(a)), an arrow of the pair groupoid on base points."""
    return (pi1(a), pi0(a))


# ---------------------------------------------------------------------------
# Pregroupoid product


def pregroupoid_ternary(a2: Arrow1, a1: Arrow1, a0: Arrow1) -> Arrow1:
    """[a'', a', a] = (x, v'' - v' + v; t), defined when pi1(a) = pi1(a') and pi0(a'') = pi0(a')."""
    _same_space(a2, a1)
    _same_space(a1, a0)
    if pi1(a0) != pi1(a1):
        raise CompositionError(f"pi1 mismatch: {pi1(a0)} != {pi1(a1)}", left=a1, right=a0)
    if pi0(a2) != pi0(a1):
        raise CompositionError(f"pi0 mismatch: {pi0(a2)} != {pi0(a1)}", left=a2, right=a1)
    sp = a0.space
    v = sp.add(sp.sub(a2.v, a1.v), a0.v)
    if isinstance(a0, Arrow2):
        return Arrow2(sp, a0.x, v, a0.s, a0.t, _checked=True)
    return Arrow1(sp, a0.x, v, a0.t, _checked=True)


# ---------------------------------------------------------------------------
# Products


def product_split(a: Arrow1) -> tuple[Arrow1, Arrow1]:
    """((x, y), (u, v); t) -> ((x, u; t), (y, v; t)) over a declared product U x S."""
    sp = a.space
    if sp.factors is None:
        raise DomainMismatchError(f"{sp} is not a declared product")
    left, right = sp.factors
    k = left.dim
    return (
        Arrow1(left, a.x[:k], a.v[:k], a.t),
        Arrow1(right, a.x[k:], a.v[k:], a.t),
    )


def product_join(space: LinearSet, a: Arrow1, b: Arrow1) -> Arrow1:
    if space.factors is None or (a.space, b.space) != space.factors:
        raise DomainMismatchError("arrows do not match the factors of the product")
    if a.t != b.t:
        raise DomainMismatchError("factors of a product arrow share the same t")
    return Arrow1(space, a.x + b.x, a.v + b.v, a.t)


# ---------------------------------------------------------------------------
# Samplers


def sample_chain1(space: LinearSet, rng: random.Random, length: int = 3, t=None) -> list[Arrow1]:
    """A ``length``-chain of *-composable arrows a1, a2, ... (a_{k+1} starts where a_k ends)."""
    ring = space.ring
    for _ in range(200):
        tt = ring.random_element(rng) if t is None else ring.canonical(t)
        x = space.random_point(rng)
        chain = []
        try:
            for _ in range(length):
                a = Arrow1(space, x, space.random_vector(rng), tt)
                chain.append(a)
                x = target_point(a)
        except MembershipError:
            continue
        return chain
    raise MembershipError(f"could not sample a composable chain in {space}")


def iter_pairs(items: Sequence, key_left: Callable, key_right: Callable) -> Iterator[tuple]:
    """Pairs (b, a) with key_left(b) == key_right(a), via a fiber index."""
    index: dict = {}
    for b in items:
        index.setdefault(key_left(b), []).append(b)
    for a in items:
        for b in index.get(key_right(a), ()):
            yield b, a


__all__ = [
    "LinearSet", "Arrow1", "Arrow2", "Base1", "Base2", "arrow_from_json",
    "pi0", "pi1", "z_pi", "partial0", "partial1", "z_partial", "target_point",
    "compose_star", "invert_star", "compose_bullet", "compose_base1", "star_composable", "bullet_composable",
    "j_map", "j_base", "scaling_phi", "sign_automorphism",
    "phi_trivialize", "phi_untrivialize", "pair_compose",
    "nonsingular_trivialize", "nonsingular_untrivialize", "anchor",
    "pregroupoid_ternary", "product_split", "product_join", "sample_chain1", "iter_pairs",
]
