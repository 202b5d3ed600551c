"""Exception hierarchy shared by all modules."""


class ParHiggsError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(ParHiggsError, ValueError):
    """Input parameters violate a documented precondition."""


class GenericityError(ValidationError):
    """Weights are not generic, or two walls / critical values coincide."""


class CriticalValueError(ValidationError):
    """A stability parameter sits on a wall (or on the lower bound)."""


class TruncationError(ParHiggsError):
    """A coefficient was requested outside the known window of a series."""


class InexactError(ParHiggsError, ArithmeticError):
    """An exact division left a remainder, a pole failed to cancel, or two
    routes that must agree did not.  Always indicates a bug or a mistyped
    formula, never a property of the input."""
