"""
Exceptions raised by the leibalg library.
"""


class LeibalgError(Exception):
    """Base class for all library errors."""


class InvalidFieldError(LeibalgError):
    """A field descriptor is malformed or names an unsupported field."""


class FieldMismatchError(LeibalgError):
    """Operands live over different fields, or a value cannot be reduced."""


class DimensionMismatchError(LeibalgError):
    """Operands have incompatible shapes or ambient dimensions."""


class InvalidRangeError(LeibalgError):
    """A coordinate block does not fit the solution vector."""


class NotAnIdealError(LeibalgError):
    """A subspace that must be a two-sided ideal is not one."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class IdentityViolationError(LeibalgError):
    """A structure table fails a defining identity."""

    def __init__(self, message, identity, witness):
        super().__init__(message)
        self.identity = identity
        self.witness = witness


class PreconditionError(LeibalgError):
    """An operation was called outside the domain where it makes sense."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InvariantViolation(LeibalgError):
    """Two independent computations of the same object disagree."""


class ParseError(LeibalgError):
    """An algebra document could not be read."""

    def __init__(self, message, location=None):
        if location:
            message = f"{location}: {message}"
        super().__init__(message)
        self.location = location


class UnknownAlgebraError(LeibalgError):
    """A catalog name does not resolve to an algebra."""
