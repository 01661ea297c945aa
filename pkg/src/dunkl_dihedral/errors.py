"""Exception types shared across the package."""


class InvalidParameter(ValueError):
    """A parameter lies outside the domain where an object is defined."""


class NotDivisible(ArithmeticError):
    """Raised when a polynomial is not divisible by a linear form to tolerance."""


class InconclusiveConvention(RuntimeError):
    """A numerical convention test could not separate the candidate readings."""
