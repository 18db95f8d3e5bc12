import math

import numpy as np
import pytest
from scipy import fft

from bosonbounds.bounds import constant_A, lower_bound, upper_bound
from bosonbounds.errors import ConvergenceFailure, GridTooCoarse, NonPhysicalParameter
from bosonbounds.spectral import (
    RadialGrid,
    default_grid,
    reduced_problem_energy,
    salpeter_matrix,
    sine_transform_matrix,
    solve_linear_schroedinger,
    solve_salpeter_oscillator,
)
from bosonbounds.variational import one_body_gaussian_energy, one_body_optimal_a

Z1 = 2.3381074104597670385


def test_grid_layout():
    g = RadialGrid(10.0, 99)
    assert g.spacing == pytest.approx(0.1)
    assert g.nodes[0] == pytest.approx(0.1) and g.nodes[-1] == pytest.approx(9.9)
    assert np.all(np.diff(g.nodes) > 0)
    assert g.momenta[0] == pytest.approx(math.pi / 10)


def test_grid_validation():
    with pytest.raises(GridTooCoarse):
        RadialGrid(10.0, 8)
    with pytest.raises(NonPhysicalParameter):
        RadialGrid(-1.0, 128)


def test_sine_transform_against_fft_library():
    rng = np.random.default_rng(42)
    v = rng.uniform(-1, 1, 100)
    S = sine_transform_matrix(100)
    np.testing.assert_allclose(S @ v, fft.dst(v, type=1, norm="ortho"), atol=1e-13)


@pytest.mark.parametrize("n", [64, 257, 1000])
def test_sine_transform_is_an_involution(n):
    S = sine_transform_matrix(n)
    v = np.random.default_rng(n).uniform(-1, 1, n)
    assert np.max(np.abs(S @ (S @ v) - v)) < 1e-12
    assert np.max(np.abs(S - S.T)) == 0.0


def test_salpeter_matrix_symmetric_and_kinetic_positive():
    g = RadialGrid(8.0, 128)
    H = salpeter_matrix(0.5, 1.3, 0.7, g)
    assert np.max(np.abs(H - H.T)) < 1e-12
    assert np.all(1.3 * np.sqrt(0.25 + g.momenta**2) > 0)


def test_linear_problem_unit_couplings():
    res = solve_linear_schroedinger(1.0, 1.0, tol=1e-7)
    assert res.converged
    assert abs(res.energy - Z1) < 1e-7
    assert res.energy == pytest.approx(2.33810741, abs=1e-7)


def test_linear_problem_scaling():
    assert solve_linear_schroedinger(8.0, 1.0).energy == pytest.approx(2 * Z1, abs=2e-7)
    # mu = alpha*gamma, nu = sqrt(alpha) for N=2, gamma=1
    assert solve_linear_schroedinger(2.0, math.sqrt(2.0)).energy == pytest.approx(lower_bound(2, 1.0), abs=4e-7)


def test_linear_problem_rejects_bad_couplings():
    with pytest.raises(NonPhysicalParameter):
        solve_linear_schroedinger(0.0, 1.0)


@pytest.fixture(scope="module")
def unit_oscillator():
    return solve_salpeter_oscillator(0.0, 1.0, 1.0, default_grid(1.0, 1.0, 2048))


def test_salpeter_unit_oscillator(unit_oscillator):
    assert unit_oscillator.converged
    assert unit_oscillator.residual < 1e-8
    assert abs(unit_oscillator.energy - Z1) < 1e-4


def test_richardson_brackets_exact_value(unit_oscillator):
    assert unit_oscillator.richardson_estimate <= Z1 <= unit_oscillator.energy
    assert abs(unit_oscillator.richardson_estimate - Z1) < abs(unit_oscillator.energy - Z1)


@pytest.mark.parametrize("kappa, c", [(1.0, 1.0), (math.sqrt(2), 2.0), (math.sqrt(6), 6.0)])
def test_fourier_duality(kappa, c):
    grid = default_grid(kappa, c, 512)
    rel = solve_salpeter_oscillator(0.0, kappa, c, grid)
    lin = solve_linear_schroedinger(c, kappa, tol=1e-7)
    assert abs(rel.energy - lin.energy) < 1e-4 * lin.energy + 1e-7


def test_domain_convergence_is_monotone():
    errors = []
    for r_max in (12.0, 18.0, 24.0, 36.0):
        res = solve_salpeter_oscillator(0.0, 1.0, 1.0, RadialGrid(r_max, int(20 * r_max)))
        assert res.diagnostics["domain_doublings"] == 0
        assert res.richardson_estimate <= Z1
        errors.append(res.energy - Z1)
    assert all(e > 0 for e in errors)
    assert errors[0] > errors[1] > errors[2] > errors[3]


def test_small_domain_triggers_doubling():
    res = solve_salpeter_oscillator(0.0, 1.0, 1.0, RadialGrid(6.0, 256))
    assert res.diagnostics["domain_doublings"] >= 1
    assert res.diagnostics["r_max"] >= 12.0


def test_coarse_grid_reported():
    with pytest.raises(GridTooCoarse):
        solve_salpeter_oscillator(0.0, 1.0, 1.0, RadialGrid(12.0, 256), tol=1e-7)


def test_variational_principle_against_gaussian():
    for kappa, c in [(1.0, 1.0), (0.3, 5.0), (math.sqrt(12), 12.0)]:
        res = solve_salpeter_oscillator(0.0, kappa, c, default_grid(kappa, c, 256))
        gauss = one_body_gaussian_energy(kappa, c, one_body_optimal_a(kappa, c)).energy
        assert res.energy <= gauss


def test_massive_case_runs_and_lies_above_massless():
    g = default_grid(1.0, 1.0, 256)
    massive = solve_salpeter_oscillator(1.0, 1.0, 1.0, g)
    massless = solve_salpeter_oscillator(0.0, 1.0, 1.0, g)
    assert massive.energy > massless.energy


@pytest.mark.parametrize("n, gamma", [(2, 1.0), (3, 1.0)])
def test_reduced_problem_energy(n, gamma):
    res = reduced_problem_energy(n, gamma, 2048)
    assert abs(res.energy - lower_bound(n, gamma)) < 2e-4
    assert lower_bound(n, gamma) - 2e-4 <= res.energy <= upper_bound(n, gamma)


def test_reduced_problem_cube_scaling():
    e1 = reduced_problem_energy(2, 1.0, 256).energy
    e8 = reduced_problem_energy(2, 8.0, 256).energy
    assert e8 == pytest.approx(2 * e1, rel=1e-12)


def test_reduced_problem_sandwich_other_sizes():
    for n, gamma in [(5, 0.2), (40, 3.0)]:
        res = reduced_problem_energy(n, gamma, 256)
        lower = lower_bound(n, gamma)
        assert lower <= res.energy <= upper_bound(n, gamma)
        assert abs(res.energy - lower) / lower < 5e-5
