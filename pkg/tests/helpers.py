"""Shared oracles and harnesses used by several test modules."""

from __future__ import annotations

import math

import numpy as np

EPS_SINGLE = 2.0**-24


def float32_quotient_errors():
    """Single-precision quotient errors vs double oracles on a log grid.

    Evaluates the symmetric quotient h and the difference quotient g for
    f = e^x, tau = 0.5 entirely in float32 and compares against float64
    evaluated at the same (float32-rounded) points, so the measured error
    is arithmetic rounding only.  Returns a list of
    (x, h_error, h_bound, g_error, g_bound) tuples over a 60-point
    logarithmic grid x = 2^-20 .. 2^-1, with bounds at d1 = e, eps = 2^-24.
    """
    from cpvquad.error_model import (
        difference_quotient_roundoff,
        symmetric_quotient_roundoff,
    )

    d1 = math.e
    tau32 = np.float32(0.5)
    tau64 = 0.5
    out = []
    for x in 2.0 ** np.linspace(-20.0, -1.0, 60):
        x32 = np.float32(x)
        x64 = float(x32)

        h32 = float((np.exp(tau32 + x32) - np.exp(tau32 - x32)) / x32)
        h64 = (math.exp(tau64 + x64) - math.exp(tau64 - x64)) / x64
        h_bound = symmetric_quotient_roundoff(x64, d1, EPS_SINGLE)

        point32 = tau32 + x32
        g32 = float((np.exp(point32) - np.exp(tau32)) / (point32 - tau32))
        point64 = float(point32)
        g64 = (math.exp(point64) - math.exp(tau64)) / (point64 - tau64)
        g_bound = difference_quotient_roundoff(x64, d1, EPS_SINGLE)

        out.append((x64, abs(h32 - h64), h_bound, abs(g32 - g64), g_bound))
    return out


def monomial_integral(k: int) -> float:
    """Exact integral of x^k over [-1, 1]."""
    return 0.0 if k % 2 else 2.0 / (k + 1)


def cpv_monomial(k: int, tau: float) -> float:
    """Closed-form principal value of x^k / (x - tau) over [-1, 1].

    Polynomial division gives x^k/(x-tau) = sum_j tau^j x^(k-1-j)
    + tau^k/(x-tau), so the value is the matching sum of monomial
    integrals plus tau^k log((1-tau)/(1+tau)).
    """
    total = sum(tau**j * monomial_integral(k - 1 - j) for j in range(k))
    return total + tau**k * math.log((1.0 - tau) / (1.0 + tau))
