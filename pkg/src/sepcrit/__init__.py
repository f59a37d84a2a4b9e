"""Separability criteria built on the correlation operator rho - rho_A (x) rho_B."""
from .criteria import CriterionResult, evaluate_all
from .errors import BracketError, NumericalError, ValidationError
from .states import DensityMatrix

__all__ = [
    "BracketError",
    "CriterionResult",
    "DensityMatrix",
    "NumericalError",
    "ValidationError",
    "evaluate_all",
]
__version__ = "0.1.0"
