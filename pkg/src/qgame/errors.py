"""Exception types shared across the package."""


class NotSelfAdjoint(ValueError):
    """A matrix that must be self-adjoint failed the hermiticity check.

    Raised by expectation-value routines; signals a construction bug
    upstream rather than bad user input.
    """


class DomainError(ValueError):
    """A numeric argument fell outside its valid range."""


class GridTooLarge(ValueError):
    """A requested search grid exceeds the hard size cap."""
