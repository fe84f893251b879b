"""Exception hierarchy shared by all chebfs modules."""


class ChebfsError(Exception):
    """Base class for every error raised by this package."""


class InvalidInputError(ChebfsError, ValueError):
    """Malformed input: shape mismatch, non-Hermitian matrix, singular factor."""


class DefinitenessError(ChebfsError, ArithmeticError):
    """A matrix or quadratic form required to be positive definite is not."""


class DomainError(ChebfsError, ValueError):
    """A point lies outside the simplex domain where it is required to be."""


class AccuracyError(ChebfsError, RuntimeError):
    """A numeric scheme cannot certify the requested accuracy."""


class InternalInconsistencyError(ChebfsError, RuntimeError):
    """Redundant computations that must agree did not; numerical breakdown."""
