"""Exact rings: integers, rationals, residues mod n, truncated rings K[X]/(X^2 - tX).

Elements are plain immutable Python values in canonical form (``int``,
``Fraction``, tuples); the ring object carries the arithmetic.  No floating
point is used anywhere.
"""

from __future__ import annotations

import itertools
import json
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterator, Sequence

from .errors import DomainMismatchError, NotInvertibleError, UnsupportedOperationError


class Ring:
    """Common interface of all exact rings."""

    commutative: bool = True

    # -- required by subclasses -------------------------------------------
    def canonical(self, value: Any) -> Any:
        raise NotImplementedError

    def contains(self, a: Any) -> bool:
        raise NotImplementedError

    @property
    def zero(self) -> Any:
        raise NotImplementedError

    @property
    def one(self) -> Any:
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inverse(self, a):
        """Two-sided inverse of ``a`` or ``None`` when ``a`` is not a unit."""
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, a) -> str:
        return str(a)

    def to_json(self) -> dict:
        raise NotImplementedError

    @property
    def is_finite(self) -> bool:
        return False

    def elements(self) -> list:
        raise UnsupportedOperationError(f"{self} is not finite")

    def random_element(self, rng: random.Random):
        raise NotImplementedError

    # -- derived ----------------------------------------------------------
    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def pow(self, a, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result, base = self.one, a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def from_int(self, k: int):
        return self.canonical(k)

    def from_fraction(self, q: Fraction):
        """Image of a rational number; its denominator must be a unit here."""
        q = Fraction(q)
        num = self.from_int(q.numerator)
        if q.denominator == 1:
            return num
        den = self.from_int(q.denominator)
        inv = self.inverse(den)
        if inv is None:
            raise NotInvertibleError(f"{q.denominator} is not invertible in {self}")
        return self.mul(num, inv)

    def is_unit(self, a) -> bool:
        return self.inverse(a) is not None

    def check(self, a):
        if not self.contains(a):
            raise DomainMismatchError(f"{a!r} is not an element of {self}")
        return a

    def sum(self, items) -> Any:
        acc = self.zero
        for item in items:
            acc = self.add(acc, item)
        return acc

    @property
    def size(self) -> int | None:
        return len(self.elements()) if self.is_finite else None

    def units(self) -> list:
        return [a for a in self.elements() if self.is_unit(a)]


@dataclass(frozen=True)
class Integers(Ring):
    def __str__(self):
        return "Z"

    def canonical(self, value):
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise DomainMismatchError(f"{value} is not an integer")
            return int(value.numerator)
        if isinstance(value, bool) or not isinstance(value, int):
            raise DomainMismatchError(f"{value!r} is not an integer")
        return int(value)

    def contains(self, a):
        return isinstance(a, int) and not isinstance(a, bool)

    zero = property(lambda self: 0)
    one = property(lambda self: 1)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def inverse(self, a):
        return a if a in (1, -1) else None

    def parse(self, text):
        return int(text.strip())

    def to_json(self):
        return {"kind": "integers"}

    def random_element(self, rng):
        return rng.randint(-20, 20)


@dataclass(frozen=True)
class Rationals(Ring):
    def __str__(self):
        return "Q"

    def canonical(self, value):
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise DomainMismatchError(f"{value!r} is not a rational number")
        return Fraction(value)

    def contains(self, a):
        return isinstance(a, Fraction)

    zero = property(lambda self: Fraction(0))
    one = property(lambda self: Fraction(1))

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def inverse(self, a):
        return None if a == 0 else 1 / a

    def from_fraction(self, q):
        return Fraction(q)

    def parse(self, text):
        return Fraction(text.strip())

    def format(self, a):
        return str(a)

    def to_json(self):
        return {"kind": "rationals"}

    def random_element(self, rng):
        return Fraction(rng.randint(-12, 12), rng.randint(1, 6))


@dataclass(frozen=True)
class ModN(Ring):
    """Residues modulo ``n`` (n >= 2), stored in ``[0, n)``."""

    n: int = 2

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError(f"modulus must be an integer >= 2, got {self.n!r}")

    def __str__(self):
        return f"Z{self.n}"

    def canonical(self, value):
        if isinstance(value, Fraction):
            return self.from_fraction(value)
        if isinstance(value, bool) or not isinstance(value, int):
            raise DomainMismatchError(f"{value!r} is not a residue mod {self.n}")
        return value % self.n

    def contains(self, a):
        return isinstance(a, int) and not isinstance(a, bool) and 0 <= a < self.n

    zero = property(lambda self: 0)
    one = property(lambda self: 1)

    def add(self, a, b):
        return (a + b) % self.n

    def neg(self, a):
        return -a % self.n

    def sub(self, a, b):
        return (a - b) % self.n

    def mul(self, a, b):
        return a * b % self.n

    def inverse(self, a):
        g, x, _ = _egcd(a % self.n, self.n)
        return x % self.n if g == 1 else None

    def parse(self, text):
        text = text.strip()
        if "/" in text:
            return self.from_fraction(Fraction(text))
        return int(text) % self.n

    def to_json(self):
        return {"kind": "modn", "n": self.n}

    @property
    def is_finite(self):
        return True

    def elements(self):
        return list(range(self.n))

    def random_element(self, rng):
        return rng.randrange(self.n)


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: returns (g, x, y) with a*x + b*y = g = gcd(a, b)."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


@dataclass(frozen=True)
class Truncated(Ring):
    """The ring K_t = K[X]/(X^2 - tX); elements are pairs (x, u) = x[1] + u[X].

    Multiplication is (x, u)(y, v) = (xy, xv + uy + t uv).  For t = 0 these are
    the dual numbers; for a unit t the two projections x and x + tu split it
    into K x K.
    """

    base: Ring = Rationals()
    t: Any = 0

    def __post_init__(self):
        if not self.base.commutative:
            raise UnsupportedOperationError("truncated rings need a commutative base")
        object.__setattr__(self, "t", self.base.canonical(self.t))

    commutative = property(lambda self: True)

    def __str__(self):
        return f"Kt({self.base},{self.base.format(self.t)})"

    def canonical(self, value):
        if isinstance(value, tuple) and len(value) == 2:
            return (self.base.canonical(value[0]), self.base.canonical(value[1]))
        return (self.base.canonical(value), self.base.zero)

    def contains(self, a):
        return (
            isinstance(a, tuple)
            and len(a) == 2
            and self.base.contains(a[0])
            and self.base.contains(a[1])
        )

    @property
    def zero(self):
        return (self.base.zero, self.base.zero)

    @property
    def one(self):
        return (self.base.one, self.base.zero)

    def add(self, a, b):
        K = self.base
        return (K.add(a[0], b[0]), K.add(a[1], b[1]))

    def neg(self, a):
        return (self.base.neg(a[0]), self.base.neg(a[1]))

    def mul(self, a, b):
        return kt_mul(a, b, self.t, self.base)

    def inverse(self, a):
        # units of K_t: x and x + t u both units (the two algebra projections)
        K = self.base
        x, u = a
        xi = K.inverse(x)
        yi = K.inverse(K.add(x, K.mul(self.t, u)))
        if xi is None or yi is None:
            return None
        return (xi, K.neg(K.mul(K.mul(u, xi), yi)))

    def from_int(self, k):
        return (self.base.from_int(k), self.base.zero)

    def from_fraction(self, q):
        return (self.base.from_fraction(q), self.base.zero)

    def embed(self, a):
        """The scalar ``a`` of K as the element a*[1] of K_t."""
        return (self.base.check(a), self.base.zero)

    def parse(self, text):
        text = text.strip()
        if text.startswith("(") and text.endswith(")"):
            parts = _split_top(text[1:-1])
            if len(parts) != 2:
                raise ValueError(f"truncated-ring element needs two components: {text!r}")
            return (self.base.parse(parts[0]), self.base.parse(parts[1]))
        return (self.base.parse(text), self.base.zero)

    def format(self, a):
        return f"({self.base.format(a[0])},{self.base.format(a[1])})"

    def to_json(self):
        return {"kind": "truncated", "base": self.base.to_json(), "t": self.base.format(self.t)}

    @property
    def is_finite(self):
        return self.base.is_finite

    def elements(self):
        els = self.base.elements()
        return [(x, u) for x in els for u in els]

    def random_element(self, rng):
        return (self.base.random_element(rng), self.base.random_element(rng))


@dataclass(frozen=True)
class MatrixRing(Ring):
    """n x n matrices over a commutative base; the stock non-commutative ring."""

    base: Ring = ModN(2)
    n: int = 2

    commutative = property(lambda self: False)

    def __str__(self):
        return f"M{self.n}({self.base})"

    def canonical(self, value):
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            c = self.base.canonical(value)
            return tuple(
                tuple(c if i == j else self.base.zero for j in range(self.n)) for i in range(self.n)
            )
        rows = tuple(tuple(self.base.canonical(e) for e in row) for row in value)
        if len(rows) != self.n or any(len(r) != self.n for r in rows):
            raise DomainMismatchError(f"expected a {self.n}x{self.n} matrix")
        return rows

    def contains(self, a):
        return (
            isinstance(a, tuple)
            and len(a) == self.n
            and all(
                isinstance(r, tuple) and len(r) == self.n and all(self.base.contains(e) for e in r)
                for r in a
            )
        )

    @property
    def zero(self):
        return self.canonical(0)

    @property
    def one(self):
        return self.canonical(1)

    def add(self, a, b):
        K = self.base
        return tuple(tuple(K.add(x, y) for x, y in zip(r, s)) for r, s in zip(a, b))

    def neg(self, a):
        return tuple(tuple(self.base.neg(x) for x in r) for r in a)

    def mul(self, a, b):
        K, n = self.base, self.n
        return tuple(
            tuple(K.sum(K.mul(a[i][k], b[k][j]) for k in range(n)) for j in range(n))
            for i in range(n)
        )

    def _det(self, a):
        K, n = self.base, self.n
        total = K.zero
        for perm in itertools.permutations(range(n)):
            term = K.one
            for i, j in enumerate(perm):
                term = K.mul(term, a[i][j])
            if _parity(perm):
                term = K.neg(term)
            total = K.add(total, term)
        return total

    def inverse(self, a):
        K, n = self.base, self.n
        dinv = K.inverse(self._det(a))
        if dinv is None:
            return None
        adj = [[K.zero] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = tuple(
                    tuple(a[r][c] for c in range(n) if c != j) for r in range(n) if r != i
                )
                cof = MatrixRing(K, n - 1)._det(minor) if n > 1 else K.one
                if (i + j) % 2:
                    cof = K.neg(cof)
                adj[j][i] = K.mul(cof, dinv)
        return tuple(tuple(r) for r in adj)

    def parse(self, text):
        return self.canonical(json.loads(text))

    def format(self, a):
        return "[" + ",".join("[" + ",".join(self.base.format(e) for e in r) + "]" for r in a) + "]"

    def to_json(self):
        return {"kind": "matrix", "base": self.base.to_json(), "n": self.n}

    @property
    def is_finite(self):
        return self.base.is_finite

    def elements(self):
        els = self.base.elements()
        out = []
        for flat in itertools.product(els, repeat=self.n * self.n):
            out.append(tuple(tuple(flat[i * self.n:(i + 1) * self.n]) for i in range(self.n)))
        return out

    def random_element(self, rng):
        return tuple(
            tuple(self.base.random_element(rng) for _ in range(self.n)) for _ in range(self.n)
        )


def _parity(perm: Sequence[int]) -> int:
    inversions = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return inversions % 2


def _split_top(text: str) -> list[str]:
    """Split on commas that are not nested inside brackets."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return [p.strip() for p in parts]


# ---------------------------------------------------------------------------
# Free-standing operations


def is_unit(ring: Ring, a) -> tuple[bool, Any]:
    """Return ``(True, inverse)`` if ``a`` is a unit of ``ring``, else ``(False, None)``."""
    ring.check(a)
    inv = ring.inverse(a)
    return (inv is not None, inv)


def kt_mul(a: tuple, b: tuple, t, ring: Ring) -> tuple:
    """Product in K_t of pairs a = (x, u), b = (y, v): (xy, xv + uy + t uv)."""
    for item in (a, b):
        if not (isinstance(item, tuple) and len(item) == 2):
            raise DomainMismatchError(f"{item!r} is not a pair over {ring}")
        ring.check(item[0])
        ring.check(item[1])
    ring.check(t)
    x, u = a
    y, v = b
    K = ring
    second = K.add(K.add(K.mul(x, v), K.mul(u, y)), K.mul(K.mul(t, u), v))
    return (K.mul(x, y), second)


def module_action_t(scalar: tuple, vec: tuple, t, ring: Ring) -> tuple:
    """Action of K_t on V_t = V (x) K_t: (r, s).(x, v) = (r x, r v + s x + t s v).

    ``vec`` is a pair of coordinate tuples of equal length.
    """
    if not ring.commutative:
        raise UnsupportedOperationError("the K_t-module action needs a commutative ring")
    r, s = (ring.check(c) for c in scalar)
    x, v = vec
    if len(x) != len(v):
        raise DomainMismatchError("point and direction have different dimensions")
    K = ring
    ts = K.mul(t, s)
    rx = tuple(K.mul(r, xi) for xi in x)
    rv = tuple(
        K.add(K.add(K.mul(r, vi), K.mul(s, xi)), K.mul(ts, vi)) for xi, vi in zip(x, v)
    )
    return (rx, rv)


class QuotientRingOracle:
    """Independent model of K[X]/(X^2 - tX) via polynomial rewriting X^2 -> tX.

    Polynomials are coefficient lists, lowest degree first.
    """

    def __init__(self, ring: Ring, t):
        self.ring = ring
        self.t = ring.canonical(t)

    def reduce(self, poly: Sequence) -> tuple:
        K = self.ring
        coeffs = [K.canonical(c) for c in poly]
        # X^k = t X^{k-1} for k >= 2
        for k in range(len(coeffs) - 1, 1, -1):
            c = coeffs[k]
            coeffs[k] = K.zero
            coeffs[k - 1] = K.add(coeffs[k - 1], K.mul(self.t, c))
        while len(coeffs) < 2:
            coeffs.append(K.zero)
        return (coeffs[0], coeffs[1])

    def poly_mul(self, p: Sequence, q: Sequence) -> list:
        K = self.ring
        out = [K.zero] * (len(p) + len(q) - 1)
        for i, a in enumerate(p):
            for j, b in enumerate(q):
                out[i + j] = K.add(out[i + j], K.mul(a, b))
        return out

    def mul(self, a: tuple, b: tuple) -> tuple:
        return self.reduce(self.poly_mul(list(a), list(b)))

    def table(self) -> dict:
        """Full multiplication table for a finite base ring."""
        els = [(x, u) for x in self.ring.elements() for u in self.ring.elements()]
        return {(a, b): self.mul(a, b) for a in els for b in els}


# ---------------------------------------------------------------------------
# Descriptors: JSON and shorthand


def ring_from_json(data: dict) -> Ring:
    kind = data.get("kind")
    if kind == "integers":
        return Integers()
    if kind == "rationals":
        return Rationals()
    if kind == "modn":
        return ModN(int(data["n"]))
    if kind == "truncated":
        base = ring_from_json(data["base"])
        return Truncated(base, base.parse(str(data["t"])))
    if kind == "matrix":
        return MatrixRing(ring_from_json(data["base"]), int(data.get("n", 2)))
    raise ValueError(f"unknown ring kind {kind!r}")


def ring_to_json(ring: Ring) -> dict:
    return ring.to_json()


_MOD_RE = re.compile(r"^Z(\d+)$")


def parse_ring(spec: str) -> Ring:
    """Parse a shorthand: ``Q``, ``Z``, ``Z5``, ``Kt(Z5,2)`` or a JSON descriptor."""
    spec = spec.strip()
    if spec.startswith("{"):
        return ring_from_json(json.loads(spec))
    if spec == "Q":
        return Rationals()
    if spec == "Z":
        return Integers()
    m = _MOD_RE.match(spec)
    if m:
        return ModN(int(m.group(1)))
    if spec.startswith("Kt(") and spec.endswith(")"):
        parts = _split_top(spec[3:-1])
        if len(parts) != 2:
            raise ValueError(f"Kt needs a base ring and a parameter: {spec!r}")
        base = parse_ring(parts[0])
        return Truncated(base, base.parse(parts[1]))
    raise ValueError(f"unknown ring shorthand {spec!r}")


def iter_vectors(ring: Ring, dim: int) -> Iterator[tuple]:
    return itertools.product(ring.elements(), repeat=dim)
