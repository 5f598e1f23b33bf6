"""Exception types shared across the package."""


class SeqMinimaxError(Exception):
    """Base class for all package errors."""


class InvalidConfigError(SeqMinimaxError, ValueError):
    """A scalar parameter or configuration object is out of range."""


class InvalidSequenceError(SeqMinimaxError, ValueError):
    """A decay sequence is not strictly positive and strictly decreasing."""


class SingularSpectrumError(SeqMinimaxError, ValueError):
    """An operator spectrum vanishes at some index."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"spectrum value r_{index} is zero; cannot divide")


class TruncationInsufficientError(SeqMinimaxError, RuntimeError):
    """The materialized index range is too short for the requested computation."""


class FlaggedConstantError(SeqMinimaxError, ValueError):
    """A printed closed-form constant is outside its valid range.

    The rate exponents are still well defined; they are carried on the
    exception so callers can report them.
    """

    def __init__(self, message, eps_exponent=None, log_exponent=None):
        self.eps_exponent = eps_exponent
        self.log_exponent = log_exponent
        super().__init__(message)


class BracketError(SeqMinimaxError, RuntimeError):
    """A one-dimensional search bracket failed to contain a minimizer."""

    def __init__(self, message, grid=None, values=None):
        self.grid = grid
        self.values = values
        super().__init__(message)


class InvalidDataError(SeqMinimaxError, ValueError):
    """Input data violates a precondition (e.g. nonpositive risks in a log fit)."""
