"""Power-series evaluation of g and g' with small-divisor-aware truncation.

For irrational, well-conditioned alpha and 0 < beta < 1:

    g(beta)  = sum_m (-1)^(m+1) beta^m  sin(rho m pi) / (m sin(m pi/alpha))
             + sum_k (-1)^(k+1) beta^(alpha k) sin(rho alpha k pi)
                                               / (k sin(alpha k pi))

and g' is its termwise derivative.  Truncation uses the model floor
|sin(m pi x)| >= c / m^(N-1) calibrated by the diophantine module; the
resulting tail bound is rigorous exactly when the exponent estimate N is,
so it is reported rather than hidden.  Both series are accumulated with
compensated summation and combined in a fixed order.

The module also carries the auxiliary alternating series for
int_0^b y^p/(1+y) dy and int_b^inf y^-p/(1+y) dy, and four classical
identity kernels used as self-test oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .accurate import (
    EPS,
    CompensatedSum,
    div2,
    sin_mpi,
    sin_pi,
    two_prod,
)
from .diophantine import AlphaClass, AlphaKind, classify
from .params import (
    ConvergenceFailureError,
    EvalResult,
    IllConditionedSeriesError,
    MethodChoice,
    MethodNotApplicableError,
    OutOfRangeError,
    StableParams,
    Tolerance,
)


@dataclass(frozen=True)
class SeriesReport:
    """Outcome of a series evaluation.

    tail_bound is the truncation bound (heuristic if the irrationality
    exponent behind it is an estimate); noise_bound estimates the rounding
    floor of the compensated accumulation.  divisor_floor_used records the
    smallest divisor magnitude actually encountered.
    """

    value: float
    terms_first_series: int
    terms_second_series: int
    tail_bound: float
    divisor_floor_used: float
    noise_bound: float = 0.0

    def __post_init__(self) -> None:
        if self.tail_bound < 0.0 or self.noise_bound < 0.0:
            raise OutOfRangeError("series bounds must be nonnegative")
        if self.terms_first_series < 0 or self.terms_second_series < 0:
            raise OutOfRangeError("term counts must be nonnegative")


def _require_series_ok(aclass: AlphaClass) -> None:
    if aclass.kind is AlphaKind.RATIONAL:
        raise MethodNotApplicableError(
            "series evaluation needs irrational alpha; "
            "use the rational-alpha or quadrature evaluators")
    if aclass.kind is AlphaKind.ILL_CONDITIONED:
        raise IllConditionedSeriesError(
            "small divisors exceed the work/noise budget at this beta and tolerance")


def _series_sums(params: StableParams, beta: float, tol: Tolerance,
                 aclass: AlphaClass, derivative: bool) -> SeriesReport:
    alpha, rho = params.alpha, params.rho
    c = aclass.floor_constant
    nu = (aclass.exponent_estimate or 2.0) - 1.0
    half_tol = 0.5 * tol.abs_tol
    inv_hi, inv_lo = div2(1.0, alpha)
    ra_hi, ra_lo = two_prod(rho, alpha)
    # at the spectrally one-sided endpoint rho*alpha = 1 the second series
    # vanishes termwise
    skip_second = abs(rho * alpha - 1.0) <= 4.0 * EPS

    acc1 = CompensatedSum()
    abs_sum = 0.0
    min_div = math.inf
    tail1 = math.inf
    terms1 = 0
    for m in range(1, tol.max_terms + 1):
        den = sin_mpi(m, inv_hi, inv_lo)
        if den == 0.0:
            raise IllConditionedSeriesError(f"divisor sin({m} pi/alpha) vanished")
        num = sin_mpi(m, rho)
        sign = 1.0 if m % 2 == 1 else -1.0
        if derivative:
            term = sign * beta ** (m - 1) * num / den
        else:
            term = sign * beta ** m * num / (m * den)
        acc1.add(term)
        abs_sum += abs(term)
        if abs(den) < min_div:
            min_div = abs(den)
        terms1 = m
        k = m + 1
        if derivative:
            nxt = beta ** (k - 1) * k ** nu / c
            ratio = beta * ((k + 1) / k) ** nu
        else:
            nxt = beta ** k * k ** (nu - 1.0) / c
            ratio = beta * ((k + 1) / k) ** (nu - 1.0)
        if ratio < 1.0:
            tail1 = nxt / (1.0 - ratio)
            if tail1 < half_tol:
                break
    else:
        raise ConvergenceFailureError(
            f"first series: tail bound {tail1:.3e} above tolerance after "
            f"{tol.max_terms} terms", value=acc1.value, error_bound=tail1)

    acc2 = CompensatedSum()
    tail2 = 0.0
    terms2 = 0
    if not skip_second:
        tail2 = math.inf
        base = beta ** alpha
        for k in range(1, tol.max_terms + 1):
            den = sin_mpi(k, alpha)
            if den == 0.0:
                raise IllConditionedSeriesError(f"divisor sin({k} pi alpha) vanished")
            num = sin_mpi(k, ra_hi, ra_lo)
            sign = 1.0 if k % 2 == 1 else -1.0
            if derivative:
                term = alpha * sign * beta ** (alpha * k - 1.0) * num / den
            else:
                term = sign * beta ** (alpha * k) * num / (k * den)
            acc2.add(term)
            abs_sum += abs(term)
            if abs(den) < min_div:
                min_div = abs(den)
            terms2 = k
            j = k + 1
            if derivative:
                nxt = alpha * beta ** (alpha * j - 1.0) * j ** nu / c
                ratio = base * ((j + 1) / j) ** nu
            else:
                nxt = beta ** (alpha * j) * j ** (nu - 1.0) / c
                ratio = base * ((j + 1) / j) ** (nu - 1.0)
            if ratio < 1.0:
                tail2 = nxt / (1.0 - ratio)
                if tail2 < half_tol:
                    break
        else:
            raise ConvergenceFailureError(
                f"second series: tail bound {tail2:.3e} above tolerance after "
                f"{tol.max_terms} terms", value=acc1.value + acc2.value,
                error_bound=tail2)

    value = acc1.value + acc2.value
    noise = 4.0 * EPS * (abs_sum + abs(value))
    return SeriesReport(value, terms1, terms2, tail1 + tail2,
                        min_div if math.isfinite(min_div) else 0.0, noise)


def g_series(params: StableParams, beta: float, tol: Tolerance | None = None,
             aclass: AlphaClass | None = None) -> SeriesReport:
    """g(beta) by the two-series expansion, for 0 <= beta < 1."""
    tol = tol or Tolerance()
    if beta == 0.0:
        return SeriesReport(0.0, 0, 0, 0.0, 0.0)
    if not 0.0 < beta < 1.0:
        raise OutOfRangeError(f"series form needs 0 <= beta < 1, got {beta!r}")
    if aclass is None:
        aclass = classify(params.alpha, tol, beta)
    _require_series_ok(aclass)
    return _series_sums(params, beta, tol, aclass, derivative=False)


def gprime_series(params: StableParams, beta: float, tol: Tolerance | None = None,
                  aclass: AlphaClass | None = None) -> SeriesReport:
    """g'(beta) by the termwise-differentiated expansion, for 0 < beta < 1."""
    tol = tol or Tolerance()
    if not 0.0 < beta < 1.0:
        raise OutOfRangeError(f"series form needs 0 < beta < 1, got {beta!r}")
    if aclass is None:
        aclass = classify(params.alpha, tol, beta)
    _require_series_ok(aclass)
    return _series_sums(params, beta, tol, aclass, derivative=True)


# ---------------------------------------------------------------------------
# auxiliary alternating series
# ---------------------------------------------------------------------------

_DIRECT_TERMS = 64  # direct summation budget before switching to the tail form


def _alt_tail(a: float, b: float, tol: float) -> tuple[float, float]:
    """sum_{i>=0} (-b)^i / (a + i) with a > 0, 0 < b <= 1, and a rigorous bound.

    Repeated integration by parts of int_0^1 t^(a-1)/(1+b t) dt gives
        sum_r c_r / ((1+b)^(r+1) (a+r)),   c_{r+1} = c_r b (r+1)/(a+r),
    whose remainder after R terms is below c_R / (a + R).  The coefficients
    decay factorially once r exceeds a, so sixty rounds are plenty.
    """
    val = 0.0
    coef = 1.0
    rem = math.inf
    for r in range(60):
        val += coef / ((1.0 + b) ** (r + 1) * (a + r))
        coef *= b * (r + 1) / (a + r)
        rem = coef / (a + r + 1)
        if rem < tol:
            break
    return val, rem


def aux_int0b(p: float, b: float, tol: Tolerance | None = None) -> EvalResult:
    """int_0^b y^p/(1+y) dy as the alternating series sum (-1)^k b^(k+1+p)/(k+1+p)."""
    tol = tol or Tolerance()
    if not p > 0.0:
        raise OutOfRangeError(f"p must be positive, got {p!r}")
    if not 0.0 < b < 1.0:
        raise OutOfRangeError(f"b must lie in (0, 1), got {b!r}")
    acc = CompensatedSum()
    terms = 0
    for k in range(_DIRECT_TERMS):
        e = k + 1.0 + p
        acc.add((-1.0) ** k * b ** e / e)
        terms = k + 1
        nxt = b ** (e + 1.0) / (e + 1.0)
        if nxt < tol.abs_tol:
            return EvalResult(acc.value, nxt + 4.0 * EPS * abs(acc.value),
                              MethodChoice.SERIES, terms)
    # remaining tail, reindexed around a = K+1+p
    a = _DIRECT_TERMS + 1.0 + p
    tail, rem = _alt_tail(a, b, tol.abs_tol)
    sign = (-1.0) ** _DIRECT_TERMS
    value = acc.value + sign * b ** a * tail
    return EvalResult(value, rem * b ** a + 4.0 * EPS * abs(value),
                      MethodChoice.SERIES, terms)


def aux_intbinfty(p: float, b: float, tol: Tolerance | None = None) -> EvalResult:
    """int_b^inf y^-p/(1+y) dy for 0 < b <= 1, p > 0.

    Noninteger p: pi/sin(p pi) + sum_k (-1)^(k+1) b^(k+1-p)/(k+1-p).
    p within 4 ulp of an integer n: the removable-singularity branch
    (-1)^n log(b) plus the k != n-1 sum, which collapses to elementary
    closed form.  The crossover is deterministic.
    """
    tol = tol or Tolerance()
    if not p > 0.0:
        raise OutOfRangeError(f"p must be positive, got {p!r}")
    if not 0.0 < b <= 1.0:
        raise OutOfRangeError(f"b must lie in (0, 1], got {b!r}")
    n = round(p)
    if n >= 1 and abs(p - n) <= 4.0 * EPS * max(1.0, abs(p)):
        # integer branch: k > n-1 terms sum to (-1)^(n+1) log(1+b) exactly
        lead = 0.0
        for k in range(n - 1):
            e = k + 1.0 - n
            lead += (-1.0) ** (k + 1) * b ** e / e
        value = (-1.0) ** n * math.log(b) + lead + (-1.0) ** (n + 1) * math.log1p(b)
        return EvalResult(value, 8.0 * EPS * (1.0 + abs(value) + abs(lead)),
                          MethodChoice.SERIES, n + 1)

    value = math.pi / sin_pi(math.remainder(p, 2.0))
    acc = CompensatedSum()
    terms = 0
    switch = max(_DIRECT_TERMS, int(math.ceil(p)) + 8)
    for k in range(switch):
        e = k + 1.0 - p
        acc.add((-1.0) ** (k + 1) * b ** e / e)
        terms = k + 1
        if e > 0.0:
            nxt = b ** (e + 1.0) / (e + 1.0)
            if nxt < tol.abs_tol:
                return EvalResult(value + acc.value,
                                  nxt + 4.0 * EPS * (abs(value) + abs(acc.value)),
                                  MethodChoice.SERIES, terms)
    a = switch + 1.0 - p
    tail, rem = _alt_tail(a, b, tol.abs_tol)
    total = value + acc.value + (-1.0) ** (switch + 1) * b ** a * tail
    return EvalResult(total, rem * b ** a + 4.0 * EPS * (abs(value) + abs(acc.value)),
                      MethodChoice.SERIES, terms)


# ---------------------------------------------------------------------------
# classical identity kernels (self-test oracles)
# ---------------------------------------------------------------------------

def kernel_alt_sine(z: float, w: float, M: int) -> tuple[float, float]:
    """M-term partial sum of sum_m (-1)^(m+1) m sin(m z)/(m^2 - w^2)
    against its closed form (pi/2) sin(z w)/sin(w pi).

    Valid for z in (-pi, pi) and noninteger w; convergence is slow and
    oscillatory, which is exactly what the self-test exercises.
    """
    if not -math.pi < z < math.pi:
        raise OutOfRangeError(f"z must lie in (-pi, pi), got {z!r}")
    sw = sin_pi(math.remainder(w, 2.0))
    if sw == 0.0:
        raise OutOfRangeError(f"w must not be an integer, got {w!r}")
    acc = CompensatedSum()
    for m in range(1, M + 1):
        acc.add((-1.0) ** (m + 1) * m * math.sin(m * z) / (m * m - w * w))
    return acc.value, 0.5 * math.pi * math.sin(z * w) / sw


def kernel_cosecant(z: float, K: int) -> tuple[float, float]:
    """Partial-fraction partial sum 1/z - sum_k (-1)^k 2z/(k^2 - z^2)
    against pi/sin(pi z), for noninteger z."""
    sz = sin_pi(math.remainder(z, 2.0))
    if sz == 0.0:
        raise OutOfRangeError(f"z must not be an integer, got {z!r}")
    acc = CompensatedSum()
    acc.add(1.0 / z)
    for k in range(1, K + 1):
        acc.add(-((-1.0) ** k) * 2.0 * z / (k * k - z * z))
    return acc.value, math.pi / sz


def kernel_geom_sine(p: float, x: float, n: int) -> tuple[float, float]:
    """Finite sum sum_{k=1}^{n-1} p^k sin(k x) against its rational closed form.

    The identity is exact, so both sides must agree to rounding error
    whenever |p| <= 1 and the denominator stays away from zero.
    """
    if n < 1:
        raise OutOfRangeError(f"n must be at least 1, got {n!r}")
    acc = CompensatedSum()
    pk = 1.0
    for k in range(1, n):
        pk *= p
        acc.add(pk * math.sin(k * x))
    closed = (p * math.sin(x) - p ** n * math.sin(n * x)
              + p ** (n + 1) * math.sin((n - 1) * x)) / (
        1.0 - 2.0 * p * math.cos(x) + p * p)
    return acc.value, closed


def kernel_poisson(x: float, z: float, M: int) -> tuple[float, float]:
    """M+1 term partial sum of sum_m (-1)^m x^m sin((m+1) z) against
    sin(z)/(x^2 + 2x cos(z) + 1); remainder below |x|^(M+1)/(1-|x|)."""
    if not abs(x) < 1.0:
        raise OutOfRangeError(f"|x| must be below 1, got {x!r}")
    acc = CompensatedSum()
    xm = 1.0
    for m in range(M + 1):
        acc.add(xm * math.sin((m + 1) * z))
        xm *= -x
    closed = math.sin(z) / (x * x + 2.0 * x * math.cos(z) + 1.0)
    return acc.value, closed
