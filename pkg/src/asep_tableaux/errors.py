"""Exception hierarchy shared by every module."""


class AsepError(Exception):
    """Base class for all library errors."""


class ShapeError(AsepError, ValueError):
    """A grid or Young diagram does not have the required shape."""


class ValidationError(AsepError, ValueError):
    """An object violates the invariants of its type."""


class DomainError(AsepError, ValueError):
    """An argument lies outside the domain of an operation."""


class CapacityError(AsepError):
    """A request exceeds what the library supports (e.g. exhaustive enumeration size)."""


class DegeneracyError(AsepError, ZeroDivisionError):
    """A denominator vanishes or a solution is not unique."""
