"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Input violates a shape, dimension or physicality precondition."""


class NumericalError(ArithmeticError):
    """A numerical routine failed (non-convergence, no usable bracket, ...)."""


class BracketError(NumericalError):
    """Verdicts at the bracket ends do not straddle a single boundary."""
