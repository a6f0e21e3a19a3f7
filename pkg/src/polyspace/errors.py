"""Exception types shared across the package."""
from __future__ import annotations


class PolyspaceError(Exception):
    """Base class for all library-specific failures."""


class NonGenericError(PolyspaceError):
    """A length vector admits a vanishing signed sum.

    Carries the offending sign assignment, when one is known, so callers can
    report exactly which combination of signs breaks genericity.
    """

    def __init__(self, message: str, signs: tuple[int, ...] | None = None):
        super().__init__(message)
        self.signs = signs


class EvenEdgeCountError(NonGenericError):
    """Unit-length vectors with an even number of edges are never generic."""


class DegreeMismatchError(PolyspaceError):
    """Exponent total does not match the dimension of the space."""


class ParityViolationError(PolyspaceError):
    """A signed subset count failed a divisibility that is guaranteed on
    generic input; this signals an internal bug or corrupted data."""


class CapacityError(PolyspaceError):
    """Subset masks are limited to one machine word."""
