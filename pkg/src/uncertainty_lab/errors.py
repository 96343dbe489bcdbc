"""Exception hierarchy shared by all modules."""


class UncertaintyLabError(Exception):
    """Base class for errors raised by this package."""


class DimensionError(UncertaintyLabError, ValueError):
    """Operands have incompatible shapes."""


class PreconditionError(UncertaintyLabError, ValueError):
    """An input violates a documented precondition (normalization, range, ...)."""


class DegenerateError(PreconditionError):
    """A ratio is undefined because some dispersion vanishes."""


class NumericalError(UncertaintyLabError, ArithmeticError):
    """A numerical cross-check or residual exceeded its tolerance."""
