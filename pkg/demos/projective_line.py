"""
The projective line from two charts
===================================

Two copies of Q glued along Q* by x -> 1/x.  Arrows are moved between
charts by the law of 1/x, so tangent vectors pick up the familiar -v/x^2.
"""

from fractions import Fraction

from difflaws import manifold as M

pl = M.projective_line()
print(M.validate_gluing(pl).summary())

# points: 2 in chart 1 is 1/2 in chart 2
print(M.same_point(pl, pl.point(1, 2), pl.point(2, Fraction(1, 2))))

# an arrow over t = 1 and its representative in chart 2
a = pl.arrow(1, 1, 1, 1)
print(a, "->", M.transport_arrow(pl, a, 2))

# at t = 0 the transport is the derivative of 1/x
print(M.transport_arrow(pl, pl.arrow(1, 3, 1, 0), 2))

# composition does not depend on the chart used
b = pl.arrow(1, 2, 1, 1)
for chart, c in M.m1_compose_all(pl, a, b).items():
    print("composite in chart", chart, ":", c)

# an arrow through 0 has no representative in chart 2
try:
    M.transport_arrow(pl, pl.arrow(1, 1, -1, 1), 2)
except M.MembershipError as exc:
    print("refused:", exc)
