"""Radial profile I_d(rho) and the fundamental solution on the hyperboloid.

The fundamental solution of -Laplace-Beltrami on the R-radius hyperboloid
H_R^d is

    H(x, x') = Gamma(d/2) / (2 pi^{d/2} R^{d-2}) * I_d(rho),
    I_d(rho) = int_rho^inf dx / sinh^{d-1} x,

with rho the geodesic distance on the unit hyperboloid.  I_d has four
equivalent representations (integral, finite sums, two Gauss hypergeometric
forms related by Euler's transformation, Legendre Q); each is a separate
evaluation route here so they can be checked against one another.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import ConvergenceError, RouteUnavailable, SingularityError
from .geometry import AmbientPoint, KernelParams, geodesic_distance
from .quadrature import integrate
from .special import EPS, double_factorial, gamma_fn, gauss_2f1, legendre_q_equal

DEFAULT_TOL = 1e-10
RHO_MIN = 1e-6
#: Largest 2F1 argument 1/cosh^2(rho) accepted by the hypergeometric routes.
HYP2F1_MAX_ARG = 0.995
LEGENDRE_RHO_MIN = 0.1
#: Auto uses the finite sums below this distance and 2F1 above it.
AUTO_SWITCH = 0.5
SMALL_RHO_MAX = 0.01


class EvalRoute(Enum):
    QUADRATURE = "quadrature"
    FINITE_SUM = "finite_sum"
    HYP2F1 = "hyp2f1"
    HYP2F1_EULER = "hyp2f1_euler"
    LEGENDRE_Q = "legendre_q"
    AUTO = "auto"


#: Concrete routes, in the order used by tables and plots.
ROUTES = (EvalRoute.QUADRATURE, EvalRoute.FINITE_SUM, EvalRoute.HYP2F1,
          EvalRoute.HYP2F1_EULER, EvalRoute.LEGENDRE_Q)


@dataclass(frozen=True)
class EvalResult:
    value: float
    route: EvalRoute
    est_error: float
    imag_residue: float = 0.0

    def scaled(self, factor: float) -> "EvalResult":
        return EvalResult(self.value * factor, self.route,
                          self.est_error * abs(factor), self.imag_residue * abs(factor))


def _check_dim(d: int) -> None:
    if not (isinstance(d, int) and 2 <= d <= 12):
        raise ValueError(f"dimension must be an integer in [2, 12], got {d!r}")


def _check_rho(rho: float, rho_min: float) -> None:
    if not rho >= rho_min:
        raise SingularityError(
            f"rho = {rho!r} is below rho_min = {rho_min!r}; use small_rho_asymptotic")
    if math.isinf(rho):
        raise ValueError("rho must be finite")


def _sech(rho: float) -> float:
    return 2.0 * math.exp(-rho) / (1.0 + math.exp(-2.0 * rho))


def _csch(rho: float) -> float:
    return 2.0 * math.exp(-rho) / -math.expm1(-2.0 * rho)


def log_coth_half(rho: float) -> float:
    """log coth(rho/2), accurate for both small and large rho."""
    return math.log1p(2.0 / math.expm1(rho))


def coth_minus_one(rho: float) -> float:
    return 2.0 / math.expm1(2.0 * rho)


def coth_power_minus_one(rho: float, p: int) -> float:
    """coth^p(rho) - 1 without cancellation."""
    eps = coth_minus_one(rho)
    c = 1.0 + eps
    return eps * math.fsum(c ** j for j in range(p))


# ---------------------------------------------------------------- routes


def i_quadrature(d: int, rho: float, tol: float = DEFAULT_TOL,
                 rho_min: float = RHO_MIN) -> EvalResult:
    """I_d(rho) by adaptive quadrature after the substitution u = e^{-x}.

    The integral becomes int_0^{e^{-rho}} 2^{d-1} u^{d-2} / (1-u^2)^{d-1} du,
    a finite interval whose integrand is analytic on the closed range.
    """
    _check_dim(d)
    _check_rho(rho, rho_min)
    scale = 2.0 ** (d - 1)

    def integrand(u: float) -> float:
        # (1-u)(1+u) keeps 1-u^2 exact near u = 1
        return scale * u ** (d - 2) / ((1.0 - u) * (1.0 + u)) ** (d - 1)

    try:
        res = integrate(integrand, 0.0, math.exp(-rho), rel_tol=tol)
    except ConvergenceError as exc:
        raise ConvergenceError(f"I_{d}({rho}) quadrature: {exc}",
                               best=exc.best, error=exc.error) from exc
    return EvalResult(res.value, EvalRoute.QUADRATURE, res.error)


def _even_sum(d: int, rho: float) -> tuple[float, float]:
    n = d // 2 - 1
    pref = (-1) ** n * double_factorial(d - 3) / double_factorial(d - 2)
    cosh, sinh = math.cosh(rho), math.sinh(rho)
    terms = [log_coth_half(rho)]
    for k in range(1, n + 1):
        coef = (-1) ** k * double_factorial(2 * k - 2) / double_factorial(2 * k - 1)
        terms.append(coef * cosh / sinh ** (2 * k))
    value = pref * math.fsum(terms)
    rounding = abs(pref) * (len(terms) + 2) * EPS * math.fsum(map(abs, terms))
    return value, rounding


def _odd_coth_coefficients(d: int) -> tuple[Fraction, list[Fraction]]:
    m = (d - 1) // 2
    lead = Fraction(double_factorial(d - 3), double_factorial(d - 2))
    fact = math.factorial((d - 3) // 2)
    coeffs = [Fraction((-1) ** k * fact,
                       (2 * k - 1) * math.factorial(k - 1) * math.factorial((d - 2 * k - 1) // 2))
              for k in range(1, m + 1)]
    return lead, coeffs


def _odd_coth_taylor(d: int) -> list[Fraction]:
    """Coefficients b_j of the odd-d coth-power sum rewritten as sum b_j (coth - 1)^j.

    The re-expansion is exact; b_0 .. b_{m-1} vanish (m = (d-1)/2) because
    I_d decays like (coth - 1)^m, and the surviving b_j share one sign.
    """
    m = (d - 1) // 2
    lead, coeffs = _odd_coth_coefficients(d)
    b = [Fraction(0)] * (d - 1)
    b[0] = lead
    for k, a in enumerate(coeffs, start=1):
        p = 2 * k - 1
        for j in range(p + 1):
            b[j] += a * math.comb(p, j)
    return [(-1) ** m * c for c in b]


def _odd_sum_coth(d: int, rho: float) -> tuple[float, float]:
    # the polynomial in coth is summed about coth = 1, where every term has
    # the same sign, so nothing cancels even as I_d -> 0
    e = coth_minus_one(rho)
    terms = [float(c) * e ** j for j, c in enumerate(_odd_coth_taylor(d)) if c]
    value = math.fsum(terms)
    rounding = (len(terms) + 4) * EPS * math.fsum(map(abs, terms))
    return value, rounding


def _odd_sum_sinh(d: int, rho: float) -> tuple[float, float]:
    m = (d - 1) // 2
    pref = (-1) ** m * double_factorial(d - 3) / double_factorial(d - 2)
    cosh, sinh = math.cosh(rho), math.sinh(rho)
    # k = 1 contributes -coth; merged with the leading 1 as -(coth - 1)
    terms = [-coth_minus_one(rho)]
    for k in range(2, m + 1):
        coef = (-1) ** k * double_factorial(2 * k - 3) / double_factorial(2 * k - 2)
        terms.append(coef * cosh / sinh ** (2 * k - 1))
    value = pref * math.fsum(terms)
    rounding = abs(pref) * (len(terms) + 2) * EPS * math.fsum(map(abs, terms))
    return value, rounding


def i_finite_sum(d: int, rho: float, tol: float = DEFAULT_TOL,
                 rho_min: float = RHO_MIN) -> EvalResult:
    """I_d(rho) from the closed finite sums over hyperbolic functions.

    Even d uses the log coth(rho/2) form. Odd d evaluates both the
    coth-power sum and the double-factorial sinh sum, returns the former,
    and adds their disagreement to ``est_error`` whenever the sinh sum is
    itself accurate to ``tol``.

    The even and sinh sums cancel catastrophically for large rho (the
    result decays like e^{-(d-1) rho} while individual terms decay like
    e^{-rho}), so the route raises RouteUnavailable once its rounding
    estimate exceeds ``tol`` relative to the value.  The coth sum is
    summed about coth = 1 and stays accurate for every rho.
    """
    _check_dim(d)
    _check_rho(rho, rho_min)
    try:
        if d % 2 == 0:
            value, est = _even_sum(d, rho)
        else:
            value, est = _odd_sum_coth(d, rho)
            try:
                other, est_other = _odd_sum_sinh(d, rho)
            except OverflowError:
                other, est_other = value, math.inf
            if est_other <= tol * abs(other):
                est += est_other + abs(value - other)
    except (OverflowError, ZeroDivisionError) as exc:
        raise RouteUnavailable(f"finite sum overflows at rho = {rho}") from exc
    if not est <= tol * abs(value):
        raise RouteUnavailable(
            f"finite sum for d={d} at rho={rho} loses accuracy to cancellation "
            f"(estimated relative error {est / abs(value) if value else math.inf:.2e})")
    return EvalResult(value, EvalRoute.FINITE_SUM, est)


def hyp2f1_argument(rho: float) -> float:
    return _sech(rho) ** 2


def i_hyp2f1(d: int, rho: float, euler: bool = False, tol: float = DEFAULT_TOL,
             rho_min: float = RHO_MIN) -> EvalResult:
    """I_d(rho) from the Gauss hypergeometric representation.

    Plain form: 2F1((d-1)/2, d/2; (d+1)/2; z) / ((d-1) cosh^{d-1} rho);
    Euler form: 2F1(1/2, 1; (d+1)/2; z) / ((d-1) cosh rho sinh^{d-2} rho);
    both with z = 1/cosh^2 rho, restricted to z <= HYP2F1_MAX_ARG.
    """
    _check_dim(d)
    _check_rho(rho, rho_min)
    z = hyp2f1_argument(rho)
    if z > HYP2F1_MAX_ARG:
        raise RouteUnavailable(
            f"2F1 argument {z:.6f} exceeds {HYP2F1_MAX_ARG} at rho = {rho}; "
            "use the finite-sum or quadrature route")
    # the tail after stopping is ~ last term / (1 - z)
    series_tol = 0.1 * tol * (1.0 - z)
    if euler:
        series = gauss_2f1(0.5, 1.0, (d + 1) / 2, z, series_tol)
        pref = _sech(rho) * _csch(rho) ** (d - 2) / (d - 1)
        route = EvalRoute.HYP2F1_EULER
    else:
        series = gauss_2f1((d - 1) / 2, d / 2, (d + 1) / 2, z, series_tol)
        pref = _sech(rho) ** (d - 1) / (d - 1)
        route = EvalRoute.HYP2F1
    return EvalResult(pref * series.value, route, pref * series.error)


def i_legendre(d: int, rho: float, tol: float = DEFAULT_TOL,
               rho_min: float = RHO_MIN) -> EvalResult:
    """I_d(rho) = e^{-i pi mu} Q_mu^mu(cosh rho) / (2^mu Gamma(d/2) sinh^mu rho), mu = d/2 - 1.

    Evaluated in complex arithmetic; the imaginary part left after the
    phases cancel is reported as ``imag_residue``.
    """
    _check_dim(d)
    _check_rho(rho, rho_min)
    if rho < LEGENDRE_RHO_MIN:
        raise RouteUnavailable(f"Legendre-Q route requires rho >= {LEGENDRE_RHO_MIN}")
    mu = d / 2 - 1
    try:
        z = math.cosh(rho)
    except OverflowError as exc:
        raise RouteUnavailable(f"cosh({rho}) overflows") from exc
    # 2F1 argument here is 1/z^2, the same as the hyp2f1 routes
    q = legendre_q_equal(mu, z, 0.1 * tol * (1.0 - 1.0 / (z * z)))
    full = cmath.exp(-1j * math.pi * mu) * q / (2.0 ** mu * gamma_fn(d / 2)
                                                * math.sinh(rho) ** mu)
    residue = abs(full.imag)
    if not residue < 1e-10 * max(1.0, abs(full.real)):
        raise RouteUnavailable(f"Legendre-Q route left imaginary residue {residue:.3e}")
    # the series inside Q is driven to 0.1 * tol relative
    return EvalResult(full.real, EvalRoute.LEGENDRE_Q, tol * abs(full.real), residue)


def _agree(a: EvalResult, b: EvalResult, tol: float) -> bool:
    return abs(a.value - b.value) <= (tol * max(abs(a.value), abs(b.value))
                                      + a.est_error + b.est_error)


def i_auto(d: int, rho: float, tol: float = DEFAULT_TOL,
           rho_min: float = RHO_MIN) -> EvalResult:
    """Finite sums below AUTO_SWITCH, 2F1 above; the other of the two is
    evaluated as a cross-check when available and quadrature arbitrates a
    disagreement."""
    if rho < AUTO_SWITCH:
        primary, secondary = EvalRoute.FINITE_SUM, EvalRoute.HYP2F1
    else:
        primary, secondary = EvalRoute.HYP2F1, EvalRoute.FINITE_SUM
    try:
        result = evaluate_i(d, rho, primary, tol, rho_min)
    except (RouteUnavailable, ConvergenceError):
        return i_quadrature(d, rho, tol, rho_min)
    try:
        check = evaluate_i(d, rho, secondary, tol, rho_min)
    except (RouteUnavailable, ConvergenceError):
        return result
    if _agree(result, check, tol):
        return result
    return i_quadrature(d, rho, tol, rho_min)


def evaluate_i(d: int, rho: float, route: EvalRoute = EvalRoute.AUTO,
               tol: float = DEFAULT_TOL, rho_min: float = RHO_MIN) -> EvalResult:
    """Evaluate I_d(rho) by the requested route."""
    route = EvalRoute(route)
    if route is EvalRoute.QUADRATURE:
        return i_quadrature(d, rho, tol, rho_min)
    if route is EvalRoute.FINITE_SUM:
        return i_finite_sum(d, rho, tol, rho_min)
    if route is EvalRoute.HYP2F1:
        return i_hyp2f1(d, rho, False, tol, rho_min)
    if route is EvalRoute.HYP2F1_EULER:
        return i_hyp2f1(d, rho, True, tol, rho_min)
    if route is EvalRoute.LEGENDRE_Q:
        return i_legendre(d, rho, tol, rho_min)
    return i_auto(d, rho, tol, rho_min)


# ------------------------------------------------------ fundamental solution


def normalization_constant(d: int) -> float:
    """c0 = Gamma(d/2) / (2 pi^{d/2})."""
    return gamma_fn(d / 2) / (2.0 * math.pi ** (d / 2))


def kernel_at_distance(d: int, R: float, rho: float, route: EvalRoute = EvalRoute.AUTO,
                       tol: float = DEFAULT_TOL, rho_min: float = RHO_MIN) -> EvalResult:
    """H_R^d as a function of the unit-hyperboloid distance rho."""
    if not R > 0:
        raise ValueError("R must be positive")
    res = evaluate_i(d, rho, route, tol, rho_min)
    return res.scaled(normalization_constant(d) / R ** (d - 2))


def fundamental_solution(params: KernelParams, x: AmbientPoint, x2: AmbientPoint,
                         route: EvalRoute = EvalRoute.AUTO) -> EvalResult:
    """Fundamental solution H_R^d(x, x2) between two points of H_R^d."""
    dist = geodesic_distance(x, x2, params)
    rho = dist / params.R
    if rho < params.rho_min:
        raise SingularityError(
            f"points are {dist:.3e} apart; the kernel is singular at coincidence")
    return kernel_at_distance(params.d, params.R, rho, route, params.tol_rel, params.rho_min)


def euclidean_green(d: int, distance: float) -> float:
    """Euclidean fundamental solution of -Laplace in R^d at the given distance."""
    if not (isinstance(d, int) and d >= 1):
        raise ValueError("d must be a positive integer")
    if distance == 0:
        raise SingularityError("Euclidean Green's function is singular at distance 0")
    if not distance > 0:
        raise ValueError("distance must be positive")
    if d == 2:
        return -math.log(distance) / (2.0 * math.pi)
    return normalization_constant(d) / (d - 2) * distance ** (2 - d)


def i_recurrence_check(d: int, rho: float, tol: float = DEFAULT_TOL) -> float:
    """Residual of the definite-integral reduction formula

        I_d = cosh rho / ((d-2) sinh^{d-2} rho) - (d-3)/(d-2) I_{d-2},

    with both I values from the Auto route.
    """
    if not (isinstance(d, int) and 4 <= d <= 12):
        raise ValueError("recurrence check needs 4 <= d <= 12")
    if not rho > 0:
        raise ValueError("rho must be positive")
    upper = evaluate_i(d, rho, EvalRoute.AUTO, tol).value
    lower = evaluate_i(d - 2, rho, EvalRoute.AUTO, tol).value
    boundary = math.cosh(rho) / ((d - 2) * math.sinh(rho) ** (d - 2))
    return abs(upper - (boundary - (d - 3) / (d - 2) * lower))


def small_rho_asymptotic(d: int, rho: float) -> float:
    """Leading behaviour of I_d near the pole: -log rho (d = 2), rho^{2-d}/(d-2) otherwise."""
    _check_dim(d)
    if not 0 < rho <= SMALL_RHO_MAX:
        raise ValueError(f"small_rho_asymptotic requires 0 < rho <= {SMALL_RHO_MAX}")
    if d == 2:
        return -math.log(rho)
    return rho ** (2 - d) / (d - 2)
