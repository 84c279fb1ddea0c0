"""Exception hierarchy shared across the package."""

from __future__ import annotations


class SimparadoxError(Exception):
    """Base class for all package errors."""


class DomainError(SimparadoxError, ValueError):
    """An input value violates an operation's domain contract."""


class DegenerateSeedError(SimparadoxError):
    """A quadruple is numerically unusable for decomposition.

    Raised when slope denominators vanish, when a child mass would fall
    below the positivity floor, or when a seed's angles sit too close to
    an axis for double precision. ``cell`` identifies the stratification
    cell at which a tree build broke down, when applicable.
    """

    def __init__(self, message: str, cell: tuple[int, ...] | None = None):
        if cell is not None:
            message = f"cell {''.join(map(str, cell)) or '()'}: {message}"
        super().__init__(message)
        self.cell = cell


class ZeroProbabilityError(SimparadoxError):
    """A conditional was requested on an event of (numerically) zero mass."""


class DocumentError(SimparadoxError, ValueError):
    """A serialized document is malformed or violates its schema."""
