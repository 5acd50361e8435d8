"""
From pair groupoid to tangent bundle
====================================

Arrows (x, v; t) compose by (x + t v, w; t) * (x, v; t) = (x, v + w; t).
For a unit t this is the pair groupoid in disguise; at t = 0 it is the
additive group of tangent vectors at each point.
"""

from difflaws import prolong as P
from difflaws.checker import difference_groupoid, run_groupoid_suite, run_kt_suite
from difflaws.rings import ModN, Truncated

Z5 = ModN(5)
U = P.LinearSet(Z5)

g, f = U.arrow1(3, 4, 2), U.arrow1(1, 1, 2)
print(g, "*", f, "=", P.compose_star(g, f))

# t = 2: (x, v) -> (x, x + 2 v) is a bijection onto pairs
arrows = U.arrows1(ts=[2])
print("pairs hit at t = 2:", len({P.phi_trivialize(a) for a in arrows}), "of 25")

# t = 0: only loops, composition adds the vectors
print(U.arrow1(2, 3, 0), "*", U.arrow1(2, 4, 0), "=", P.compose_star(U.arrow1(2, 3, 0), U.arrow1(2, 4, 0)))

rep = run_groupoid_suite(difference_groupoid(U))
print(rep.summary())

# the ring behind it: K_t = K[X]/(X^2 - tX)
for t in (0, 1):
    R = Truncated(Z5, t)
    print(f"t = {t}: (2 + 3X)(1 + X) =", R.mul((2, 3), (1, 1)))
print(run_kt_suite(Z5, 3).summary())
