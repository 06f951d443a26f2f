"""Exception hierarchy shared by all modules."""


class ToeplimitError(Exception):
    """Base class for every error raised by this package."""


class DomainError(ToeplimitError, ValueError):
    """An argument lies outside the domain of the operation."""


class DegenerateInputError(ToeplimitError, ValueError):
    """Geometric or polynomial input too degenerate to process."""


class DegeneratePolynomialError(DegenerateInputError):
    """Polynomial of degree zero after stripping negligible coefficients."""


class ConvergenceError(ToeplimitError, ArithmeticError):
    """An iterative solver ran out of iterations.

    The best iterate is attached as ``best`` so callers can inspect it.
    """

    def __init__(self, message, best=None, context=None):
        super().__init__(message)
        self.best = best
        self.context = context


class FrameError(ToeplimitError, OverflowError):
    """Coordinates do not fit the fixed-point frame."""


class ParameterError(ToeplimitError, ValueError):
    """Invalid algorithm parameter."""
