"""Closed-form lower/upper energy bounds and their gap.

Massless oscillator model, for all N >= 2 and gamma > 0:

    A (gamma N^2 (N-1)^2)^(1/3) <= E <= B (gamma N^2 (N-1)^2)^(1/3)

with A the magnitude of the first zero of Ai and B = (81/(2 pi))^(1/3).
The nonrelativistic linear-potential model shares A and B with the scale
(N^2 (N-1)^3 lambda^2 / (4m))^(1/3).

Note: A is sometimes written "Ai(0)" as shorthand; Ai evaluated at the
origin is 0.355..., and the constant used here is the first-zero magnitude.
"""

from __future__ import annotations

import functools
import math
from dataclasses import asdict, dataclass

import numpy as np

from .airy import airy_first_zero
from .errors import DomainError
from .model import SystemSpec, alpha, validate_system


@dataclass(frozen=True)
class BoundResult:
    """Lower/upper bounds, their mean, and the relative half-gap.

    ``rel_half_gap = (upper - lower) / (upper + lower)`` is the worst-case
    relative error of quoting ``mean`` as the energy.
    """

    lower: float
    upper: float
    mean: float
    rel_half_gap: float

    @classmethod
    def from_bounds(cls, lower, upper, rel_half_gap=None):
        lower, upper = float(lower), float(upper)
        if rel_half_gap is None:
            rel_half_gap = (upper - lower) / (upper + lower)
        return cls(lower, upper, 0.5 * (lower + upper), float(rel_half_gap))

    def as_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class BoundConstants:
    A: float
    B: float


@functools.lru_cache(maxsize=None)
def _first_zero(tol):
    return airy_first_zero(tol)


def constant_A(tolerance: float = 1e-12) -> float:
    """Magnitude of the first zero of Ai, located numerically to ``tolerance``."""
    if not (1e-13 <= tolerance <= 1e-4):
        raise DomainError(f"constant_A: tolerance must lie in [1e-13, 1e-4], got {tolerance}")
    return _first_zero(float(tolerance))


def constant_B() -> float:
    return float(np.cbrt(81.0 / (2.0 * math.pi)))


def constants() -> BoundConstants:
    return BoundConstants(constant_A(), constant_B())


def _scaled(scale):
    # the gap ratio is taken from the constants so it is identical for every (N, coupling)
    A, B = constant_A(), constant_B()
    return BoundResult.from_bounds(A * scale, B * scale, (B - A) / (A + B))


def oscillator_scale(n, gamma) -> float:
    """(gamma * alpha^2)^(1/3) with alpha = N(N-1); every energy of the model is a multiple of it."""
    validate_system(SystemSpec.oscillator(n, gamma))
    a = float(alpha(n).alpha)
    return float(np.cbrt(float(gamma) * a * a))


def linear_scale(n, lam, mass) -> float:
    validate_system(SystemSpec.linear(n, lam, mass))
    n = float(n)
    lam = float(lam)
    return float(np.cbrt(n * n * (n - 1.0) ** 3 * lam * lam / (4.0 * float(mass))))


def lower_bound(n, gamma) -> float:
    return constant_A() * oscillator_scale(n, gamma)


def upper_bound(n, gamma) -> float:
    return constant_B() * oscillator_scale(n, gamma)


def bound_pair(n, gamma) -> BoundResult:
    return _scaled(oscillator_scale(n, gamma))


def nr_bounds(n, lam, mass) -> BoundResult:
    """Bounds for N nonrelativistic bosons of mass m with pair potential lambda*|r_i - r_j|."""
    return _scaled(linear_scale(n, lam, mass))
