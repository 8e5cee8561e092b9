"""Exception types shared across the engine."""

from __future__ import annotations


class SikkuError(Exception):
    """Base class for all engine errors."""


class InvalidSizeError(SikkuError):
    """Template dimensions must be positive integers."""


class UnknownCellError(SikkuError):
    """A cell id does not belong to the template."""


class InapplicableSymmetryError(SikkuError):
    """The symmetry operation or group does not map the template to itself."""


class SizeMismatchError(SikkuError):
    """A tile multiset's total differs from the template's cell count."""


class CapExceededError(SikkuError):
    """A brute-force or enumeration request exceeds the configured cap."""


class FormatError(SikkuError):
    """A serialized payload is malformed."""
