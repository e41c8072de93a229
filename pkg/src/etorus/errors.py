"""Exception types shared across the package."""


class EtorusError(Exception):
    """Base class for all package-specific errors."""


class InvalidTypeError(EtorusError, ValueError):
    """Family/rank combination outside the supported classical series."""


class SizeLimitError(EtorusError, RuntimeError):
    """An enumeration would exceed the configured cap."""

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class InvariantViolationError(EtorusError, ValueError):
    """Input data violates a structural invariant (e.g. a malformed
    barycentric coordinate vector)."""


class GridMismatchError(EtorusError, ValueError):
    """Two grid-indexed objects carry incompatible grid tags."""


class MalformedDataError(EtorusError, ValueError):
    """An input file row cannot be parsed or does not match the canonical
    grid enumeration."""

    def __init__(self, message, row=None):
        super().__init__(message)
        self.row = row
