"""Exception types raised across the package."""


class RetrodictError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(RetrodictError, ValueError):
    pass


class InvalidState(RetrodictError, ValueError):
    """A vector, matrix or operator violates its type invariants."""


class SingularPushforward(RetrodictError, ArithmeticError):
    """The pushed-forward prior has an entry or eigenvalue at or below epsilon."""


class NoConvergence(RetrodictError, RuntimeError):
    pass


class DomainError(RetrodictError, ValueError):
    """Coordinates outside the region where a closed form is defined."""


class InvalidBlocks(RetrodictError, ValueError):
    pass


class WrongDimension(RetrodictError, ValueError):
    pass


class NoData(RetrodictError, ValueError):
    pass
