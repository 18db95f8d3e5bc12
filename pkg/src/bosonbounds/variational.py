"""Gaussian trial state and the variational upper bound.

The trial state is a product of identical Gaussians
psi_g(r) = (a/pi)^(3/4) exp(-a r^2 / 2), one per relative Jacobi coordinate.
Its momentum-space image is phi_g(k) = (1/(a pi))^(3/4) exp(-k^2 / (2a)), so

    <|k|> = 2 sqrt(a/pi),    <r^2> = 3 / (2a),

and the N-body expectation reduces to the one-body functional
sqrt(alpha) <|k|> + alpha gamma <r^2> with alpha = N(N-1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from .errors import ConvergenceFailure, DomainError, NonPhysicalParameter
from .model import SystemSpec, alpha, validate_system

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
MAX_DOUBLINGS = 200
_WORK_DPS = 40


@dataclass(frozen=True)
class GaussianTrial:
    a: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and self.a > 0.0):
            raise NonPhysicalParameter("a", f"width parameter must be positive, got {self.a!r}")

    def position_density(self, r):
        """|psi_g(r)|^2; integrates to one over R^3."""
        return (self.a / math.pi) ** 1.5 * math.exp(-self.a * r * r)

    def momentum_density(self, k):
        return (1.0 / (self.a * math.pi)) ** 1.5 * math.exp(-k * k / self.a)


@dataclass(frozen=True)
class TrialEnergy:
    a: float
    energy: float
    kinetic_part: float
    potential_part: float


def gaussian_moments(a):
    """Return ``(mean_k, mean_r2)`` for the Gaussian of width ``a``."""
    a = GaussianTrial(float(a)).a
    return 2.0 * math.sqrt(a / math.pi), 1.5 / a


def _one_body_terms(kappa, c, a, sqrt=math.sqrt, pi=math.pi):
    # kappa <|k|> and c <r^2>; generic in the arithmetic so the numeric
    # minimizer can run it at extended precision
    return kappa * 2 * sqrt(a / pi), c * 3 / (2 * a)


def one_body_gaussian_energy(kappa, c, a) -> TrialEnergy:
    """Gaussian expectation of kappa*|p| + c*r^2 in three dimensions."""
    a = GaussianTrial(float(a)).a
    kin, pot = _one_body_terms(float(kappa), float(c), a)
    return TrialEnergy(a, kin + pot, kin, pot)


def one_body_optimal_a(kappa, c) -> float:
    """Stationary point of kappa*2*sqrt(a/pi) + 3c/(2a): a^3 = 9 pi c^2 / (4 kappa^2)."""
    return float(mpmath.cbrt(9 * mpmath.pi * mpmath.mpf(c) ** 2 / (4 * mpmath.mpf(kappa) ** 2)))


def _reduced_couplings(n, gamma):
    validate_system(SystemSpec.oscillator(n, gamma))
    al = alpha(n).alpha
    return math.sqrt(al), al * float(gamma)


def gaussian_energy(n, gamma, a) -> TrialEnergy:
    """Upper-bound functional E(a) = sqrt(4 alpha a / pi) + 3 alpha gamma / (2a)."""
    kappa, c = _reduced_couplings(n, gamma)
    return one_body_gaussian_energy(kappa, c, a)


def optimal_a(n, gamma) -> float:
    """Closed-form minimizer a* = (9 pi gamma^2 alpha / 4)^(1/3)."""
    validate_system(SystemSpec.oscillator(n, gamma))
    al = alpha(n).alpha
    return float(mpmath.cbrt(9 * mpmath.pi * mpmath.mpf(gamma) ** 2 * al / 4))


def golden_section(f, lo, hi, rtol, max_iter=500):
    """Minimize a unimodal ``f`` on [lo, hi] until the bracket is narrower than ``rtol`` times its centre.

    Works with any ordered numeric type that ``f`` accepts (float or mpf).
    """
    c = hi - INV_PHI * (hi - lo)
    d = lo + INV_PHI * (hi - lo)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if hi - lo <= rtol * abs(lo + hi) / 2:
            return (lo + hi) / 2
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - INV_PHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + INV_PHI * (hi - lo)
            fd = f(d)
    raise ConvergenceFailure(f"golden-section search did not converge in {max_iter} iterations")


def bracket_minimum(f, start, factor=2, max_doublings=MAX_DOUBLINGS):
    """Geometric bracket expansion around ``start``.

    Returns ``(lo, hi)`` known to contain a local minimum of ``f``.
    """
    a0 = start
    f0 = f(a0)
    up, f_up = a0 * factor, f(a0 * factor)
    if f_up < f0:
        lo, mid, f_mid = a0, up, f_up
        for _ in range(max_doublings):
            nxt = mid * factor
            f_nxt = f(nxt)
            if f_nxt >= f_mid:
                return lo, nxt
            lo, mid, f_mid = mid, nxt, f_nxt
    else:
        hi, mid, f_mid = up, a0, f0
        for _ in range(max_doublings):
            nxt = mid / factor
            f_nxt = f(nxt)
            if f_nxt >= f_mid:
                return nxt, hi
            hi, mid, f_mid = mid, nxt, f_nxt
    raise ConvergenceFailure(f"no minimum bracketed within {max_doublings} doublings from {start}")


def minimize_gaussian_numeric(n, gamma, tol=1e-9):
    """Derivative-free minimization of the upper-bound functional over a > 0.

    The bracket grows geometrically from a = 1 and is then narrowed by
    golden-section search. Energies are compared at 40 significant digits:
    near the minimum E(a) is flat to second order, so double precision
    would only locate a to about sqrt(machine epsilon).

    Returns ``(a, energy)``.
    """
    if not (1e-12 <= tol < 1.0):
        raise DomainError(f"tol must lie in [1e-12, 1), got {tol}")
    kappa, c = _reduced_couplings(n, gamma)
    with mpmath.workdps(_WORK_DPS):
        kappa_mp, c_mp = mpmath.sqrt(alpha(n).alpha), alpha(n).alpha * mpmath.mpf(gamma)

        def energy(a):
            kin, pot = _one_body_terms(kappa_mp, c_mp, a, sqrt=mpmath.sqrt, pi=mpmath.pi)
            return kin + pot

        lo, hi = bracket_minimum(energy, mpmath.mpf(1))
        a_min = golden_section(energy, lo, hi, mpmath.mpf(tol) / 4)
        a_min = float(a_min)
    return a_min, one_body_gaussian_energy(kappa, c, a_min).energy
