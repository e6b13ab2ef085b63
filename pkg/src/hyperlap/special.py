"""Real-argument special functions used by the hyperbolic Green's kernel.

Only what the kernel needs is provided: gamma on the positive axis, double
factorials, Pochhammer symbols, the Gauss series for 2F1 inside the unit
disk, and the associated Legendre function of the second kind Q_nu^mu with
equal degree and order (nu = mu = d/2 - 1) for real argument z > 1.
"""

from __future__ import annotations

import cmath
import math
from typing import NamedTuple

from .errors import ConvergenceError

EPS = 2.220446049250313e-16

MAX_SERIES_TERMS = 100_000
#: Number of consecutive below-tolerance terms required to stop a series.
STOP_RUN = 3


class SeriesResult(NamedTuple):
    value: float
    error: float
    terms: int


def gamma_fn(x: float) -> float:
    """Gamma function for positive real ``x``."""
    if not x > 0:
        raise ValueError(f"gamma_fn requires x > 0, got {x!r}")
    return math.gamma(x)


def double_factorial(n: int) -> int:
    """n!! with the conventions (-1)!! = 0!! = 1."""
    if n < -1:
        raise ValueError(f"double factorial undefined for n = {n}")
    return math.prod(range(n, 0, -2))


def pochhammer(z: float, n: int) -> float:
    """Rising factorial (z)_n = z (z+1) ... (z+n-1); (z)_0 = 1."""
    if n < 0:
        raise ValueError("pochhammer requires n >= 0")
    return math.prod((z + i for i in range(n)), start=1.0)


def gauss_2f1(a: float, b: float, c: float, z: float, tol: float = 1e-16,
              max_terms: int = MAX_SERIES_TERMS) -> SeriesResult:
    """Sum the Gauss hypergeometric series 2F1(a, b; c; z) for real |z| < 1.

    Terms are generated by the ratio recurrence and summation stops once
    ``STOP_RUN`` consecutive terms satisfy ``|t| <= tol * |partial sum|``.
    The returned error bounds the neglected tail (geometric bound from the
    current term ratio) plus accumulated rounding.

    Raises
    ------
    ValueError
        If ``|z| >= 1`` or ``c`` is a non-positive integer.
    ConvergenceError
        If the stopping rule is not met within ``max_terms`` terms; the
        exception carries the last partial sum.
    """
    if not abs(z) < 1.0:
        raise ValueError(f"series requires |z| < 1, got z = {z!r}")
    if c <= 0 and c == int(c):
        raise ValueError(f"c = {c!r} is a non-positive integer")

    term = 1.0
    terms = [term]
    partial = 1.0
    abs_sum = 1.0
    run = 0
    n = 0
    while n < max_terms:
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        n += 1
        terms.append(term)
        partial += term
        abs_sum += abs(term)
        if abs(term) <= tol * abs(partial):
            run += 1
            if run >= STOP_RUN:
                break
        else:
            run = 0
    else:
        raise ConvergenceError(
            f"2F1({a}, {b}; {c}; {z}) did not converge in {max_terms} terms",
            best=math.fsum(terms), error=abs(term) / max(1e-300, 1.0 - abs(z)))

    value = math.fsum(terms)
    # ratios approach z monotonically; the larger of the two bounds the tail
    q = max(abs((a + n) * (b + n) / ((c + n) * (n + 1)) * z), abs(z))
    tail = abs(term) * q / (1.0 - q) if q < 1.0 else math.inf
    return SeriesResult(value, tail + n * EPS * abs_sum, n + 1)


def legendre_q_equal(order: float, z: float, tol: float = 1e-16) -> complex:
    """Associated Legendre function of the second kind Q_nu^mu(z), nu = mu.

    Evaluated from the hypergeometric representation valid for z > 1,

        Q_nu^mu(z) = sqrt(pi) e^{i pi mu} Gamma(nu+mu+1) (z^2-1)^{mu/2}
                     / (2^{nu+1} Gamma(nu+3/2) z^{nu+mu+1})
                     * 2F1((nu+mu+2)/2, (nu+mu+1)/2; nu+3/2; 1/z^2),

    with nu = mu = ``order``. The phase is kept literally, so integer
    orders give a real value and half-integer orders a purely imaginary one.
    """
    if not z > 1.0:
        raise ValueError(f"legendre_q_equal requires z > 1, got {z!r}")
    two_mu = 2.0 * order
    if two_mu < 0 or two_mu != round(two_mu):
        raise ValueError("order must be a non-negative multiple of 1/2")
    mu = nu = order

    series = gauss_2f1((nu + mu + 2) / 2, (nu + mu + 1) / 2, nu + 1.5,
                       1.0 / (z * z), tol)
    log_mag = (0.5 * math.log(math.pi) + math.lgamma(nu + mu + 1)
               + 0.5 * mu * math.log((z - 1.0) * (z + 1.0))
               - (nu + 1) * math.log(2.0) - math.lgamma(nu + 1.5)
               - (nu + mu + 1) * math.log(z))
    return cmath.exp(1j * math.pi * mu) * math.exp(log_mag) * series.value
