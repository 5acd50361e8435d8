"""
Difference factorizers
======================

f(x + v t) - f(x) = F(x, v, t) * t, with no division by t anywhere.
At t = 0 F is the directional derivative, at t = 1 it is the plain
finite difference.
"""

from fractions import Fraction

from difflaws import expr as E
from difflaws import laws as L
from difflaws import prolong as P
from difflaws.rings import ModN, Rationals

Q = Rationals()

# the factorizer of x^3, as an expression in x, v and T
cube = L.polynomial_law(Q, ["x^3"])
print("x^3 :", E.to_text(cube.factorizer[0]))

# t = 0 recovers 3 x^2 v, t = 1 the forward difference
for t in (0, 1, Fraction(1, 2)):
    print(f"F(2, 1, {t}) =", cube.F((Fraction(2),), (Fraction(1),), Fraction(t))[0])

# rational maps work away from the poles
inv = L.rational_law(Q, ["1/x"])
print("1/x :", E.to_text(inv.factorizer[0]))

# the law of a map carries more than the map: over Z/5, x^5 and x agree
# pointwise but their factorizers do not
Z5 = ModN(5)
U = P.LinearSet(Z5)
fermat, ident = L.polynomial_law(U, ["x^5"]), L.polynomial_law(U, ["x"])
print("x^5 = x on Z/5 :", all(fermat.f((x,)) == ident.f((x,)) for x in range(5)))
print("same law       :", fermat.same_law(ident))
print("F_x^5(1, 1, 0) =", fermat.F((1,), (1,), 0)[0], " F_x(1, 1, 0) =", ident.F((1,), (1,), 0)[0])

# the full axiom suite runs exhaustively on a finite ring
print(L.check_law_axioms(L.polynomial_law(U, ["x^2 + 3*x"])).summary())
