"""
Chain rule for every t
======================

Composing laws composes their fiber maps at every value of t, so the usual
chain rule (t = 0) and the telescoping of finite differences (t = 1) are
one statement.
"""

from fractions import Fraction

from difflaws import expr as E
from difflaws import laws as L
from difflaws.rings import Rationals

Q = Rationals()


def show(pair):
    return "(" + ", ".join(" ".join(str(c) for c in part) for part in pair) + ")"


f = L.polynomial_law(Q, ["x^2 + 1"])
g = L.polynomial_law(Q, ["x^3 - x"])
gf = L.compose_laws(g, f)
print("g o f factorizer:", E.to_text(gf.factorizer[0]))

x, v = (Fraction(1),), (Fraction(2),)
for t in (Fraction(0), Fraction(1), Fraction(1, 2)):
    fx, fv = f.fiber_t(t, x, v)
    print(f"t = {t}:", show(gf.fiber_t(t, x, v)), "=", show(g.fiber_t(t, fx, fv)))

# the tangent map is linear in the direction
print("df(1)[2] =", f.tangent(x, (Fraction(2),))[1][0], " df(1)[6] =", f.tangent(x, (Fraction(6),))[1][0])

# two-variable example: multiplication
m = L.multiplication_law(Q)
print("d(xy) at (2, 3) along (5, 7):", m.tangent((2, 3), (5, 7))[1][0])
