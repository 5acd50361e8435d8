"""Difference factorizers and C^1 laws over exact rings.

A map f has a difference factorizer F when f(x + tv) - f(x) = F(x, v, t) t
for all t, including non-invertible t.  At t = 0 the factorizer is the
derivative, at invertible t it is a difference quotient.  The package builds
the first-order difference groupoid U<1>, the double category U<<1>>, and
checks their axioms exhaustively over finite rings or on seeded samples.
"""

from .errors import (
    CompositionError, DiffLawsError, DivisionError, DomainMismatchError, HandinessError,
    LawConstructionError, MembershipError, NotInvertibleError, ParseError, UnsupportedOperationError,
)
from .rings import (
    Integers, MatrixRing, ModN, QuotientRingOracle, Rationals, Ring, Truncated, kt_mul, module_action_t,
    parse_ring,
)
from .expr import evaluate, parse, symbolic_difference_factorizer, factorizer_expr, to_text
from .prolong import Arrow1, Arrow2, Base1, Base2, LinearSet, compose_bullet, compose_star, invert_star
from .checker import SuiteReport
from .laws import Law, Sampler, apply1, apply2, check_law_axioms, compose_laws, polynomial_law, rational_law
from .homcat import HomElement, from_law, hom_bullet, hom_star
from .manifold import GluingData, m1_compose, projective_line, transport_arrow, validate_gluing

__version__ = "0.1.0"

__all__ = [
    "CompositionError",
    "DiffLawsError",
    "DivisionError",
    "DomainMismatchError",
    "HandinessError",
    "LawConstructionError",
    "MembershipError",
    "NotInvertibleError",
    "ParseError",
    "UnsupportedOperationError",
    "Integers",
    "MatrixRing",
    "ModN",
    "QuotientRingOracle",
    "Rationals",
    "Ring",
    "Truncated",
    "kt_mul",
    "module_action_t",
    "parse_ring",
    "evaluate",
    "parse",
    "symbolic_difference_factorizer",
    "factorizer_expr",
    "to_text",
    "Arrow1",
    "Arrow2",
    "Base1",
    "Base2",
    "LinearSet",
    "compose_bullet",
    "compose_star",
    "invert_star",
    "SuiteReport",
    "Law",
    "Sampler",
    "apply1",
    "apply2",
    "check_law_axioms",
    "compose_laws",
    "polynomial_law",
    "rational_law",
    "HomElement",
    "from_law",
    "hom_bullet",
    "hom_star",
    "GluingData",
    "m1_compose",
    "projective_line",
    "transport_arrow",
    "validate_gluing",
]
