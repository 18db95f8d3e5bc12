"""Energy bounds for N identical massless bosons bound by oscillator pair potentials."""

__version__ = "0.1.0"

from .bounds import BoundResult, bound_pair, constant_A, constant_B, lower_bound, nr_bounds, upper_bound
from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    DomainError,
    GridTooCoarse,
    NonPhysicalParameter,
)
from .model import PairCount, SystemSpec, Variant, alpha, coupling_scaling_exponent, validate_system

__all__ = [
    "BoundResult", "bound_pair", "constant_A", "constant_B", "lower_bound", "nr_bounds", "upper_bound",
    "ConvergenceFailure", "DimensionMismatch", "DomainError", "GridTooCoarse", "NonPhysicalParameter",
    "PairCount", "SystemSpec", "Variant", "alpha", "coupling_scaling_exponent", "validate_system",
]
