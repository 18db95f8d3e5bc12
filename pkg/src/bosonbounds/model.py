"""Problem parameters, validation and exact scaling relations."""

from __future__ import annotations

import enum
import math
import numbers
from dataclasses import dataclass

import numpy as np

from .errors import NonPhysicalParameter

# keeps N^2 (N-1)^2 well inside the exactly representable float range
MAX_PARTICLES = 10**6


class Variant(str, enum.Enum):
    RELATIVISTIC_OSCILLATOR = "relativistic-oscillator"
    NONRELATIVISTIC_LINEAR = "nonrelativistic-linear"


@dataclass(frozen=True)
class SystemSpec:
    """Parameters of one N-boson problem.

    Natural units (hbar = c = 1). ``gamma`` is used by the massless
    oscillator model; ``lam`` and ``mass`` by the nonrelativistic
    linear-potential model.
    """

    n_particles: int
    variant: Variant = Variant.RELATIVISTIC_OSCILLATOR
    gamma: float | None = None
    lam: float | None = None
    mass: float | None = None

    @classmethod
    def oscillator(cls, n, gamma):
        return cls(n, Variant.RELATIVISTIC_OSCILLATOR, gamma=gamma)

    @classmethod
    def linear(cls, n, lam, mass):
        return cls(n, Variant.NONRELATIVISTIC_LINEAR, lam=lam, mass=mass)


@dataclass(frozen=True)
class PairCount:
    alpha: int
    n_choose_2: int


def _check_n(n):
    if isinstance(n, bool) or not isinstance(n, numbers.Integral):
        raise NonPhysicalParameter("n", f"particle count must be an integer, got {n!r}")
    if n < 2:
        raise NonPhysicalParameter("n", f"need at least 2 particles, got {n}")
    if n > MAX_PARTICLES:
        raise NonPhysicalParameter("n", f"particle count capped at {MAX_PARTICLES}, got {n}")
    return int(n)


def _check_positive(field, value):
    if value is None:
        raise NonPhysicalParameter(field, "missing")
    try:
        x = float(value)
    except (TypeError, ValueError):
        raise NonPhysicalParameter(field, f"not a number: {value!r}") from None
    if not math.isfinite(x) or x <= 0.0:
        raise NonPhysicalParameter(field, f"must be positive and finite, got {value!r}")
    return x


def validate_system(spec: SystemSpec) -> SystemSpec:
    """Return ``spec`` unchanged if it describes a physical system.

    Raises NonPhysicalParameter naming the first offending field.
    """
    _check_n(spec.n_particles)
    if spec.variant == Variant.RELATIVISTIC_OSCILLATOR:
        _check_positive("gamma", spec.gamma)
    elif spec.variant == Variant.NONRELATIVISTIC_LINEAR:
        _check_positive("lambda", spec.lam)
        _check_positive("mass", spec.mass)
    else:
        raise NonPhysicalParameter("variant", f"unknown variant {spec.variant!r}")
    return spec


def alpha(n) -> PairCount:
    """Pair counts: alpha = N(N-1) and the binomial N choose 2."""
    n = _check_n(n)
    a = n * (n - 1)
    return PairCount(alpha=a, n_choose_2=a // 2)


def coupling_scaling_exponent(spec: SystemSpec, scale) -> float:
    """Factor by which every energy of ``spec`` changes when its coupling is scaled by ``scale``.

    Energies of the massless oscillator model go as gamma^(1/3); those of the
    nonrelativistic linear model go as lambda^(2/3).
    """
    validate_system(spec)
    s = _check_positive("scale", scale)
    if spec.variant == Variant.NONRELATIVISTIC_LINEAR:
        return float(np.cbrt(s * s))
    return float(np.cbrt(s))
