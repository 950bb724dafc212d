class FountainError(Exception):
    """Base class for errors raised by the toolkit."""


class DomainError(FountainError, ValueError):
    """An argument violates the precondition of the operation it was passed to."""


class StateError(FountainError, RuntimeError):
    """The operation is not valid in the current encoder/decoder state."""
