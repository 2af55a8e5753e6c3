"""Exception types shared across the library."""


class ConvexiqError(Exception):
    """Base class for all library-specific errors."""


class InvalidArgument(ConvexiqError, ValueError):
    """A caller-supplied value violates a documented precondition."""


class DimensionMismatch(InvalidArgument):
    """Operands live in different ambient dimensions."""


class UnsupportedMeasure(ConvexiqError):
    """The requested intrinsic-volume computation has no implemented path
    for this body class / dimension combination."""


class UnsupportedOperation(ConvexiqError):
    """The operation is outside the supported range (e.g. dimension cap)."""


class UndefinedValue(ConvexiqError):
    """The quantity is mathematically undefined for this input."""


class ParseError(ConvexiqError):
    """A serialized artifact could not be decoded against its schema."""
