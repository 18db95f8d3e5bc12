"""Airy function Ai from its ascending series, and its first zero.

Ai(x) = c1 f(x) - c2 g(x) with

    f(x) = 1 + x^3/3! + 1*4 x^6/6! + ...      (terms x^3 / ((3k+2)(3k+3)) apart)
    g(x) = x + 2 x^4/4! + 2*5 x^7/7! + ...    (terms x^3 / ((3k+3)(3k+4)) apart)

and c1 = Ai(0) = 3^(-2/3)/Gamma(2/3), c2 = -Ai'(0) = 3^(-1/3)/Gamma(1/3).
The series is summed in 50-digit decimal arithmetic so the cancellation
between f and g for positive x (up to e^21 at x = 10) costs nothing.
"""

from __future__ import annotations

import decimal
import math
from dataclasses import dataclass

from .errors import ConvergenceFailure, DomainError

# 3^(-2/3)/Gamma(2/3) and 3^(-1/3)/Gamma(1/3), evaluated once at 45 digits
# with an arbitrary-precision Gamma; last digits checked against two
# independent Gamma implementations.
AI0 = decimal.Decimal("0.355028053887817239260063186004183176397979174")
MINUS_AIP0 = decimal.Decimal("0.258819403792806798405183560189203963479091138")

SERIES_WINDOW = 10.0
MAX_TERMS = 200
_PREC = 50
_TERM_FLOOR = decimal.Decimal("1e-18")

# Ai(-2) > 0 > Ai(-3): the first zero lives in between
ZERO_BRACKET = (-3.0, -2.0)


@dataclass(frozen=True)
class AiryValue:
    x: float
    ai: float
    ai_prime: float


def _series(x: decimal.Decimal):
    """Sum f, f', g, g' at x. Caller sets the decimal context."""
    x3 = x * x * x
    tf, tfp, tg, tgp = decimal.Decimal(1), x * x / 2, x, decimal.Decimal(1)
    f, fp, g, gp = tf, tfp, tg, tgp
    for k in range(MAX_TERMS):
        k3 = 3 * k
        tf = tf * x3 / ((k3 + 2) * (k3 + 3))
        tfp = tfp * x3 / ((k3 + 3) * (k3 + 5))
        tg = tg * x3 / ((k3 + 3) * (k3 + 4))
        tgp = tgp * x3 / ((k3 + 1) * (k3 + 3))
        f += tf
        fp += tfp
        g += tg
        gp += tgp
        if max(abs(tf), abs(tfp), abs(tg), abs(tgp)) < _TERM_FLOOR:
            return f, fp, g, gp
    raise ConvergenceFailure(f"Airy series did not settle within {MAX_TERMS} terms at x={x}")


def airy_ai(x: float) -> AiryValue:
    """Ai and Ai' at real ``x`` with ``|x| <= 10``.

    Absolute error is below 1e-12 on the whole window (in practice at the
    level of double rounding).
    """
    x = float(x)
    if not math.isfinite(x) or abs(x) > SERIES_WINDOW:
        raise DomainError(f"airy_ai: |x| must be <= {SERIES_WINDOW}, got {x}")
    with decimal.localcontext() as ctx:
        ctx.prec = _PREC
        f, fp, g, gp = _series(decimal.Decimal(x))
        ai = AI0 * f - MINUS_AIP0 * g
        aip = AI0 * fp - MINUS_AIP0 * gp
    return AiryValue(x, float(ai), float(aip))


def airy_first_zero(tol: float = 1e-12) -> float:
    """Magnitude of the zero of Ai closest to the origin (about 2.33810741).

    The bracket (-3, -2) is certified by a sign change, narrowed by bisection
    and finished with Newton steps that are rejected if they leave the
    bracket. Returns once ``|Ai| < tol*|Ai'|`` after a final polishing step.
    """
    if not (1e-13 <= tol <= 1e-4):
        raise DomainError(f"airy_first_zero: tol must lie in [1e-13, 1e-4], got {tol}")

    lo, hi = ZERO_BRACKET
    f_lo, f_hi = airy_ai(lo).ai, airy_ai(hi).ai
    if not (f_lo < 0.0 < f_hi):
        raise ConvergenceFailure("Ai does not change sign on the bracket (-3, -2)")

    while hi - lo > 1e-2:
        mid = 0.5 * (lo + hi)
        if airy_ai(mid).ai < 0.0:
            lo = mid
        else:
            hi = mid

    x = 0.5 * (lo + hi)
    converged = False
    for _ in range(100):
        v = airy_ai(x)
        if v.ai == 0.0:
            return -x
        if v.ai < 0.0:
            lo = x
        else:
            hi = x
        if converged:
            return -x
        step = v.ai / v.ai_prime
        x_new = x - step
        if not (lo <= x_new <= hi):
            x_new = 0.5 * (lo + hi)
        # one more Newton step after the test passes polishes the last digits
        converged = abs(v.ai) < tol * abs(v.ai_prime)
        x = x_new
    raise ConvergenceFailure(f"airy_first_zero: no convergence to tol={tol}")
