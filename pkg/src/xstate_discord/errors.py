"""Exception hierarchy shared by every module."""


class InvalidInputError(ValueError):
    """Raised for malformed matrices, out-of-range parameters or bad selectors."""


class NonphysicalStateError(InvalidInputError):
    """Raised when state parameters give a matrix with a negative eigenvalue."""

    def __init__(self, message, min_eigenvalue):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


class NumericalFailureError(RuntimeError):
    """Raised when an integrator or optimizer loses control of its error."""
