"""Exception types shared across the package."""


class BoundsError(Exception):
    """Base class for every error raised by bosonbounds."""


class NonPhysicalParameter(BoundsError, ValueError):
    """A physical parameter is outside its legal range.

    ``field`` names the offending parameter (``"n"``, ``"gamma"``, ...).
    """

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.reason = message


class DimensionMismatch(BoundsError, ValueError):
    pass


class DomainError(BoundsError, ValueError):
    pass


class ConvergenceFailure(BoundsError, ArithmeticError):
    pass


class GridTooCoarse(ConvergenceFailure):
    """The discretization cannot deliver the requested accuracy."""
