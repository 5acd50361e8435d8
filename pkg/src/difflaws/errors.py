"""Exception types shared across the package."""

from __future__ import annotations


class DiffLawsError(Exception):
    """Base class for every error raised by difflaws."""


class DomainMismatchError(DiffLawsError, ValueError):
    """An operand does not belong to the ring or set it is used with."""


class UnsupportedOperationError(DiffLawsError, TypeError):
    """The operation needs a structure the ring does not have (e.g. commutativity)."""


class NotInvertibleError(DiffLawsError, ArithmeticError):
    """A scalar that must be a unit is not invertible."""


class DivisionError(DiffLawsError, ZeroDivisionError):
    """Division by a non-unit while evaluating an expression."""

    def __init__(self, message: str, subterm: object = None):
        super().__init__(message)
        self.subterm = subterm


class CompositionError(DiffLawsError, ValueError):
    """Two arrows are not composable; carries both endpoints."""

    def __init__(self, message: str, left: object = None, right: object = None):
        super().__init__(message)
        self.left = left
        self.right = right


class ParseError(DiffLawsError, ValueError):
    """Syntax error in an expression, with the character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class MembershipError(DiffLawsError, ValueError):
    """A point or arrow lies outside the linear set it is claimed to belong to."""


class HandinessError(DiffLawsError, ValueError):
    """No declared chart contains all the points a composition needs."""


class LawConstructionError(DiffLawsError, ValueError):
    """A law failed its defining identities on the construction samples."""
