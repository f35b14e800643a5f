"""Exception types raised by the solver."""


class DomainError(ValueError):
    """An argument lies outside the domain where an operation is defined."""


class NumericalFailure(ArithmeticError):
    """The discrete problem could not be solved in working precision."""

    def __init__(self, message, pivot=None):
        super().__init__(message)
        self.pivot = pivot
