"""Independent oracles for the test-suite.

Nothing here imports the package: polynomials are coefficient dicts evaluated
by plain Python arithmetic, derivatives come from dual numbers, and K_t
products from rewriting X^2 -> tX on coefficient lists.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction


class Dual:
    """a + b eps with eps^2 = 0 over Fraction."""

    def __init__(self, a, b=0):
        self.a, self.b = Fraction(a), Fraction(b)

    def _lift(self, o):
        return o if isinstance(o, Dual) else Dual(o)

    def __add__(self, o):
        o = self._lift(o)
        return Dual(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __mul__(self, o):
        o = self._lift(o)
        return Dual(self.a * o.a, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = Dual(1)
        for _ in range(k):
            out = out * self
        return out


def poly_text(coeffs: dict, names) -> str:
    """Render {exponent tuple: coefficient} as parser input."""
    terms = []
    for exps, c in sorted(coeffs.items()):
        factors = [f"({c})"] + [f"{n}^{e}" for n, e in zip(names, exps) if e]
        terms.append("*".join(factors))
    return " + ".join(terms) if terms else "0"


def poly_eval(coeffs: dict, point):
    total = 0
    for exps, c in coeffs.items():
        term = c
        for xi, e in zip(point, exps):
            term = term * (xi ** e) if e else term
        total = total + term
    return total


def random_poly(rng: random.Random, nvars: int, degree: int, terms: int = 4) -> dict:
    out: dict = {}
    for _ in range(terms):
        exps = [0] * nvars
        for _ in range(rng.randint(0, degree)):
            exps[rng.randrange(nvars)] += 1
        out[tuple(exps)] = out.get(tuple(exps), 0) + Fraction(rng.randint(-9, 9), rng.randint(1, 4))
    return {k: v for k, v in out.items() if v}


def directional_derivative(coeffs: dict, x, v) -> Fraction:
    """d/de f(x + e v) at e = 0, via dual numbers."""
    return (Dual(0) + poly_eval(coeffs, [Dual(a, b) for a, b in zip(x, v)])).b


def difference_quotient(f, x, v, t):
    """(f(x + tv) - f(x)) / t for invertible t."""
    moved = [a + b * t for a, b in zip(x, v)]
    return (f(moved) - f(x)) / t


def kt_rewrite(p, q, t, n=None):
    """(p0 + p1 X)(q0 + q1 X) mod X^2 - tX, optionally mod n."""
    prod = [0] * 3
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            prod[i + j] += a * b
    c0, c1 = prod[0], prod[1] + t * prod[2]
    return (c0 % n, c1 % n) if n else (c0, c1)


def brute_inverse_mod(a, n):
    for b in range(n):
        if (a * b) % n == 1:
            return b
    return None


def all_triples(n):
    return list(itertools.product(range(n), repeat=3))
