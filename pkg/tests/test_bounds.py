import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bosonbounds.bounds import (
    BoundResult,
    bound_pair,
    constant_A,
    constant_B,
    lower_bound,
    nr_bounds,
    upper_bound,
)
from bosonbounds.errors import DomainError, NonPhysicalParameter
from bosonbounds.variational import minimize_gaussian_numeric

# arbitrary-precision reference values (independent Airy zero and cube roots)
A_REF = 2.3381074104597670385
B_REF = 2.3447779253903160886
GAP_REF = 0.0014244454971986097

ns = st.integers(2, 1000)
gammas = st.floats(1e-6, 1e6)


def test_constant_A_digits():
    assert constant_A(1e-8) == pytest.approx(2.33810741, abs=1e-8)
    assert constant_A(1e-10) == pytest.approx(2.3381074105, abs=1e-10)
    assert constant_A() == pytest.approx(A_REF, abs=1e-13)


def test_constant_A_tight_tolerance_is_right_or_refused():
    try:
        value = constant_A(1e-13)
    except (DomainError, ArithmeticError):
        return
    assert abs(value - A_REF) <= 1e-13


def test_constant_A_rejects_bad_tolerance():
    with pytest.raises(DomainError):
        constant_A(1e-15)


def test_constant_B():
    B = constant_B()
    assert B == pytest.approx(2.3447779, abs=1e-7)
    assert B**3 * 2 * math.pi == pytest.approx(81.0, abs=1e-12)
    assert B == pytest.approx(B_REF, rel=1e-15)
    assert constant_A() < B


def test_constant_B_matches_numeric_minimization():
    _, e = minimize_gaussian_numeric(2, 1.0, 1e-9)
    assert e / 4 ** (1 / 3) == pytest.approx(constant_B(), abs=1e-9)


@pytest.mark.parametrize(
    "n, gamma, lower, upper",
    [
        (2, 0.25, A_REF, B_REF),
        (2, 1.0, 3.7115141629784770, 3.7221029453964001),
        (3, 1.0, 7.7202605694395583, 7.7422861244528966),
    ],
)
def test_bounds_reference_values(n, gamma, lower, upper):
    assert lower_bound(n, gamma) == pytest.approx(lower, rel=1e-14)
    assert upper_bound(n, gamma) == pytest.approx(upper, rel=1e-14)


def test_spec_rounded_values():
    assert lower_bound(2, 1.0) == pytest.approx(3.711515, abs=1e-6)
    assert upper_bound(2, 1.0) == pytest.approx(3.722101, abs=3e-6)


@pytest.mark.parametrize("n, gamma", [(2, 1.0), (50, 3.0), (1000, 1e-3)])
def test_gap_is_scale_free(n, gamma):
    r = bound_pair(n, gamma)
    assert r.rel_half_gap == pytest.approx(GAP_REF, rel=1e-13)
    assert 0.00142 < r.rel_half_gap < 0.00143 < 0.0015


def test_bound_result_fields():
    r = bound_pair(4, 2.0)
    assert r.lower <= r.upper
    assert r.mean == pytest.approx((r.lower + r.upper) / 2, rel=1e-15)
    assert r.rel_half_gap == pytest.approx((r.upper - r.lower) / (r.upper + r.lower), rel=1e-12)


def test_bound_result_from_bounds():
    r = BoundResult.from_bounds(1.0, 3.0)
    assert (r.mean, r.rel_half_gap) == (2.0, 0.5)


@pytest.mark.parametrize("n, gamma, field", [(1, 1.0, "n"), (2, 0.0, "gamma"), (2, -1.0, "gamma")])
def test_bounds_validate(n, gamma, field):
    for fn in (lower_bound, upper_bound, bound_pair):
        with pytest.raises(NonPhysicalParameter) as info:
            fn(n, gamma)
        assert info.value.field == field


def test_nr_bounds_unit_argument_and_cube_root_two():
    # N=2: argument 4 * lambda^2 / (4m)
    r = nr_bounds(2, 1.0, 0.5)
    assert r.lower == pytest.approx(A_REF * 1.2599210498948732, rel=1e-14)
    assert r.upper == pytest.approx(B_REF * 1.2599210498948732, rel=1e-14)
    assert nr_bounds(2, 1.0, 0.25).lower == pytest.approx(lower_bound(2, 1.0), rel=1e-14)
    unit = nr_bounds(2, 0.5, 0.25)
    assert unit.lower == pytest.approx(constant_A(), rel=1e-15)
    assert unit.rel_half_gap == bound_pair(2, 1.0).rel_half_gap


@pytest.mark.parametrize("n, lam, mass, field", [(2, 1.0, -1.0, "mass"), (2, 0.0, 1.0, "lambda"), (1, 1.0, 1.0, "n")])
def test_nr_bounds_validate(n, lam, mass, field):
    with pytest.raises(NonPhysicalParameter) as info:
        nr_bounds(n, lam, mass)
    assert info.value.field == field


@settings(max_examples=200)
@given(ns, gammas, st.floats(1e-3, 1e3))
def test_scale_covariance(n, gamma, s):
    base, scaled = bound_pair(n, gamma), bound_pair(n, s * gamma)
    f = np.cbrt(s)
    for attr in ("lower", "upper", "mean"):
        assert getattr(scaled, attr) == pytest.approx(f * getattr(base, attr), rel=1e-14)
    assert scaled.rel_half_gap == base.rel_half_gap


@given(ns, gammas)
def test_growth_with_n(n, gamma):
    ratio = lower_bound(n, gamma) / lower_bound(2, gamma)
    assert ratio == pytest.approx((n * (n - 1) / 2) ** (2 / 3), rel=1e-12)
    assert lower_bound(n + 1, gamma) > lower_bound(n, gamma)


@given(ns, gammas)
def test_lower_below_upper(n, gamma):
    assert lower_bound(n, gamma) < upper_bound(n, gamma)


def test_large_n_cap():
    r = bound_pair(10**6, 1.0)
    assert math.isfinite(r.upper)
    with pytest.raises(NonPhysicalParameter):
        bound_pair(10**6 + 1, 1.0)
