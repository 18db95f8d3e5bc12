"""Grid-based ground-state oracles for the reduced one-body problems.

Two unrelated routes:

* ``solve_salpeter_oscillator``: kappa*sqrt(m^2 + p^2) + c*r^2, s-wave, on a
  uniform radial grid. The orthonormal type-I discrete sine transform
  diagonalizes the kinetic term (momenta p_k = k*pi/r_max), the potential is
  diagonal on the nodes, and the smallest eigenvalue of the dense symmetric
  matrix is the energy.
* ``solve_linear_schroedinger``: mu*p^2 + nu*r, s-wave, by RK4 shooting on
  -mu u'' + nu r u = E u with u(0) = 0 and bisection on E.

For m = 0 the two Hamiltonians are Fourier duals (|p| <-> r, r^2 <-> p^2), so
they share a ground energy: z1 * mu^(1/3) * nu^(2/3) with mu = c, nu = kappa.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import ConvergenceFailure, GridTooCoarse, NonPhysicalParameter
from .model import SystemSpec, alpha, validate_system

MIN_POINTS = 64
MAX_POINTS = 8192
DOMAIN_LENGTHS = 12.0
TAIL_FRACTION = 0.1
TAIL_MASS_LIMIT = 1e-10
MAX_DOMAIN_DOUBLINGS = 4
# the truncated-domain error of the sine-basis solve falls off as r_max^-4
DOMAIN_ORDER = 4


@dataclass(frozen=True)
class RadialGrid:
    """Interior nodes r_j = j*h, h = r_max/(n+1); u vanishes at 0 and r_max."""

    r_max: float
    n_points: int

    def __post_init__(self):
        if not (math.isfinite(self.r_max) and self.r_max > 0.0):
            raise NonPhysicalParameter("r_max", f"must be positive, got {self.r_max!r}")
        if self.n_points < MIN_POINTS:
            raise GridTooCoarse(f"grid needs at least {MIN_POINTS} points, got {self.n_points}")
        if self.n_points > MAX_POINTS:
            raise NonPhysicalParameter(
                "grid_points", f"dense eigensolve capped at {MAX_POINTS} points, got {self.n_points}"
            )

    @property
    def spacing(self):
        return self.r_max / (self.n_points + 1)

    @property
    def nodes(self):
        return self.spacing * np.arange(1, self.n_points + 1)

    @property
    def momenta(self):
        return (math.pi / self.r_max) * np.arange(1, self.n_points + 1)

    def doubled_domain(self):
        """Twice the extent at (nearly) the same spacing."""
        return RadialGrid(2.0 * self.r_max, min(2 * self.n_points + 1, MAX_POINTS))

    def halved_domain(self):
        return RadialGrid(0.5 * self.r_max, max((self.n_points + 1) // 2 - 1, MIN_POINTS))


@dataclass(frozen=True)
class SpectralResult:
    """Oracle ground energy with its convergence diagnostics.

    ``residual`` is ||Hv - Ev|| / ||v|| for the matrix route and the final
    energy bracket width for the shooting route.
    """

    energy: float
    residual: float
    richardson_estimate: float
    converged: bool
    diagnostics: dict = field(default_factory=dict)

    @property
    def discretization_error(self):
        return abs(self.energy - self.richardson_estimate)


def sine_transform_matrix(n: int) -> np.ndarray:
    """Orthonormal DST-I matrix S_jk = sqrt(2/(n+1)) sin(pi j k / (n+1)); S is symmetric and S @ S = I."""
    j = np.arange(1, n + 1)
    return math.sqrt(2.0 / (n + 1)) * np.sin(math.pi * np.outer(j, j) / (n + 1))


def salpeter_matrix(m, kappa, c, grid: RadialGrid) -> np.ndarray:
    S = sine_transform_matrix(grid.n_points)
    p = grid.momenta
    kinetic = kappa * np.sqrt(m * m + p * p)
    H = (S * kinetic) @ S
    H = 0.5 * (H + H.T)
    r = grid.nodes
    H[np.diag_indices_from(H)] += c * r * r
    return H


def oscillator_length(kappa, c):
    """Natural length (kappa/c)^(1/3) of kappa*|p| + c*r^2."""
    return float(np.cbrt(kappa / c))


def default_grid(kappa, c, n_points=2048) -> RadialGrid:
    return RadialGrid(DOMAIN_LENGTHS * oscillator_length(kappa, c), int(n_points))


def _ground_state(m, kappa, c, grid):
    H = salpeter_matrix(m, kappa, c, grid)
    w, v = scipy.linalg.eigh(H, subset_by_index=[0, 0])
    e, vec = float(w[0]), v[:, 0]
    residual = float(np.linalg.norm(H @ vec - e * vec) / np.linalg.norm(vec))
    tail_start = int((1.0 - TAIL_FRACTION) * grid.n_points)
    tail_mass = float(np.sum(vec[tail_start:] ** 2) / np.sum(vec * vec))
    return e, residual, tail_mass


def _check_couplings(m, kappa, c):
    if not (math.isfinite(m) and m >= 0.0):
        raise NonPhysicalParameter("mass", f"must be non-negative, got {m!r}")
    if not (math.isfinite(kappa) and kappa > 0.0):
        raise NonPhysicalParameter("kappa", f"must be positive, got {kappa!r}")
    if not (math.isfinite(c) and c > 0.0):
        raise NonPhysicalParameter("c", f"must be positive, got {c!r}")


def solve_salpeter_oscillator(m, kappa, c, grid: RadialGrid | None = None, tol=1e-4):
    """Ground energy of kappa*sqrt(m^2 + p^2) + c*r^2 in three dimensions.

    If more than 1e-10 of the eigenvector's weight sits in the outer tenth of
    the grid the domain is doubled (up to four times). The Richardson
    estimate combines the final grid with the half-size domain at the same
    spacing. ``tol`` is relative: GridTooCoarse is raised when fine and
    extrapolated energies differ by more than ``10*tol`` relative.
    """
    m, kappa, c = float(m), float(kappa), float(c)
    _check_couplings(m, kappa, c)
    if grid is None:
        grid = default_grid(kappa, c)

    doublings = 0
    e, residual, tail = _ground_state(m, kappa, c, grid)
    while tail > TAIL_MASS_LIMIT and doublings < MAX_DOMAIN_DOUBLINGS:
        grid = grid.doubled_domain()
        doublings += 1
        e, residual, tail = _ground_state(m, kappa, c, grid)

    coarse = grid.halved_domain()
    e_coarse, _, _ = _ground_state(m, kappa, c, coarse)
    extrapolated = e + (e - e_coarse) / (2**DOMAIN_ORDER - 1)

    diagnostics = {
        "r_max": grid.r_max,
        "n_points": grid.n_points,
        "domain_doublings": doublings,
        "tail_mass": tail,
        "coarse_energy": e_coarse,
    }
    if abs(e - extrapolated) > 10.0 * tol * abs(extrapolated):
        raise GridTooCoarse(
            f"energy {e:.10g} vs Richardson estimate {extrapolated:.10g} on r_max={grid.r_max:.4g}, "
            f"n={grid.n_points}: exceeds 10x relative tolerance {tol:g}"
        )
    converged = residual < 1e-8 and tail <= TAIL_MASS_LIMIT
    return SpectralResult(e, residual, extrapolated, converged, diagnostics)


def _shoot(eps, h, x_max):
    """Integrate u'' = (x - eps) u from u(0)=0, u'(0)=1 with fixed-step RK4.

    Returns (sign changes of u on (0, x_max], u(x_max)).
    """
    steps = int(round(x_max / h))
    u, v, x = 0.0, 1.0, 0.0
    nodes = 0
    half = 0.5 * h
    for _ in range(steps):
        k1u, k1v = v, (x - eps) * u
        xm = x + half
        k2u, k2v = v + half * k1v, (xm - eps) * (u + half * k1u)
        k3u, k3v = v + half * k2v, (xm - eps) * (u + half * k2u)
        x += h
        k4u, k4v = v + h * k3v, (x - eps) * (u + h * k3u)
        u_next = u + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        if u_next * u < 0.0:
            nodes += 1
        u = u_next
    return nodes, u


def _above_ground(eps, h, x_max):
    nodes, u_end = _shoot(eps, h, x_max)
    return nodes > 0 or u_end < 0.0


def _ground_by_bisection(h, x_max, e_tol):
    lo, hi = 0.0, 1.0  # the potential is non-negative, so E > 0
    for _ in range(60):
        if _above_ground(hi, h, x_max):
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise ConvergenceFailure("could not bracket the ground state")
    while hi - lo > e_tol:
        mid = 0.5 * (lo + hi)
        if _above_ground(mid, h, x_max):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi), hi - lo


def solve_linear_schroedinger(mu, nu, tol=1e-7, x_max=DOMAIN_LENGTHS):
    """Ground energy of mu*p^2 + nu*r in three dimensions (s-wave) by shooting.

    Works in units of length (mu/nu)^(1/3) and energy mu^(1/3) nu^(2/3),
    where the equation is u'' = (x - eps) u. The RK4 step is halved from
    0.04 until successive energies agree to ``tol`` (relative; fourth-order
    Richardson), with bisection on eps to 1e-12.
    """
    mu, nu = float(mu), float(nu)
    if not (math.isfinite(mu) and mu > 0.0):
        raise NonPhysicalParameter("mu", f"must be positive, got {mu!r}")
    if not (math.isfinite(nu) and nu > 0.0):
        raise NonPhysicalParameter("nu", f"must be positive, got {nu!r}")
    energy_unit = float(np.cbrt(mu * nu * nu))

    h = 0.04
    prev, _ = _ground_by_bisection(h, x_max, 1e-12)
    while h > 1e-3:
        h /= 2.0
        eps, width = _ground_by_bisection(h, x_max, 1e-12)
        extrapolated = eps + (eps - prev) / 15.0
        if abs(eps - extrapolated) <= 0.1 * tol * extrapolated:
            return SpectralResult(
                eps * energy_unit,
                width * energy_unit,
                extrapolated * energy_unit,
                True,
                {"step": h, "x_max": x_max, "length_unit": float(np.cbrt(mu / nu))},
            )
        prev = eps
    raise ConvergenceFailure(f"shooting did not reach tol={tol} with step >= 1e-3")


def reduced_problem_energy(n, gamma, grid: RadialGrid | int | None = None, tol=1e-4):
    """Oracle for the one-body problem sqrt(alpha)*|p| + alpha*gamma*r^2 bounding the N-body energy from below.

    ``grid`` may be a RadialGrid, a point count for the default domain, or None (2048 points).
    """
    validate_system(SystemSpec.oscillator(n, gamma))
    al = alpha(n).alpha
    kappa, c = math.sqrt(al), al * float(gamma)
    if grid is None or isinstance(grid, int):
        grid = default_grid(kappa, c, 2048 if grid is None else grid)
    return solve_salpeter_oscillator(0.0, kappa, c, grid, tol=tol)
