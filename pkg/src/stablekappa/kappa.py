"""Assembly of kappa(gamma, beta) and evaluator dispatch.

kappa(gamma, beta) = gamma^rho * exp(g(beta * gamma^(-1/alpha))) is taken
as the definition (the alternative normalization with an unspecified
multiplicative constant is not modeled).  g itself is defined by its
integral for beta in (0, 1] and extended to all beta > 0 through the
reflection identity g(beta) = g(1/beta) + alpha rho log(beta).

Dispatch policy for beta in (0, 0.95]: a Doney closed form when a case
exists (exact and cheapest), else the series when alpha is irrational and
well conditioned, else quadrature.  The band (0.95, 1.05) always goes to
quadrature, where both series slow down; beta >= 1.05 reflects.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .accurate import EPS
from .diophantine import AlphaKind, classify
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
from .quadrature import QuadConfig, g_quad, gprime_quad
from .series import SeriesReport, g_series, gprime_series
from .special import RationalAlpha, find_doney_case, g_doney, gprime_rational

_BAND_LO = 0.95
_BAND_HI = 1.05


@dataclass(frozen=True)
class KappaQuery:
    """Arguments (gamma, beta) of the bivariate Laplace exponent."""

    gamma: float
    beta: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.gamma) and self.gamma > 0.0):
            raise OutOfRangeError(f"gamma must be positive, got {self.gamma!r}")
        if not (math.isfinite(self.beta) and self.beta >= 0.0):
            raise OutOfRangeError(f"beta must be nonnegative, got {self.beta!r}")


def _quad_cfg(tol: Tolerance) -> QuadConfig:
    return QuadConfig(abs_tol=tol.abs_tol, rel_tol=1e-14,
                      max_refinements=tol.max_quad_refinements)


def _from_series(report: SeriesReport) -> EvalResult:
    return EvalResult(report.value, report.tail_bound + report.noise_bound,
                      MethodChoice.SERIES,
                      report.terms_first_series + report.terms_second_series)


def _doney_result(params: StableParams, beta: float, case) -> EvalResult:
    value = g_doney(params, beta, case)
    bound = 4.0 * EPS * (case.k + case.l + 2) * (1.0 + abs(value))
    return EvalResult(value, bound, MethodChoice.DONEY, case.k + case.l)


def _dispatch_g(params: StableParams, beta: float, method: MethodChoice,
                tol: Tolerance) -> EvalResult:
    """Evaluator selection for beta in the series-friendly zone (0, 0.95]."""
    if method is MethodChoice.QUADRATURE:
        return g_quad(params, beta, _quad_cfg(tol))
    if method is MethodChoice.DONEY:
        case = find_doney_case(params)
        if case is None:
            raise MethodNotApplicableError(
                "no (k, l) with rho + k = l/alpha within the search range")
        return _doney_result(params, beta, case)
    if method is MethodChoice.SERIES:
        return _from_series(g_series(params, beta, tol))
    if method is MethodChoice.RATIONAL:
        raise MethodNotApplicableError(
            "the rational-alpha formula defines g' only; g uses quadrature")
    # auto: Doney -> series -> quadrature, by accuracy per cost
    case = find_doney_case(params)
    if case is not None:
        return _doney_result(params, beta, case)
    aclass = classify(params.alpha, tol, beta)
    if aclass.kind is AlphaKind.IRRATIONAL:
        try:
            return _from_series(g_series(params, beta, tol, aclass))
        except (ConvergenceFailureError, IllConditionedSeriesError):
            pass
    return g_quad(params, beta, _quad_cfg(tol))


def _dispatch_gprime(params: StableParams, beta: float, method: MethodChoice,
                     tol: Tolerance) -> EvalResult:
    if method is MethodChoice.QUADRATURE:
        return gprime_quad(params, beta, _quad_cfg(tol))
    if method is MethodChoice.SERIES:
        return _from_series(gprime_series(params, beta, tol))
    if method is MethodChoice.RATIONAL:
        return gprime_rational(RationalAlpha.from_alpha(params.alpha),
                               params.rho, beta, tol)
    if method is MethodChoice.DONEY:
        raise MethodNotApplicableError(
            "the Doney closed form is implemented for g only, not g'")
    aclass = classify(params.alpha, tol, beta)
    if aclass.kind is AlphaKind.RATIONAL:
        return gprime_rational(RationalAlpha(aclass.p, aclass.q),
                               params.rho, beta, tol)
    if aclass.kind is AlphaKind.IRRATIONAL:
        try:
            return _from_series(gprime_series(params, beta, tol, aclass))
        except (ConvergenceFailureError, IllConditionedSeriesError):
            pass
    return gprime_quad(params, beta, _quad_cfg(tol))


def g_any_beta(params: StableParams, beta: float,
               method: MethodChoice = MethodChoice.AUTO,
               tol: Tolerance | None = None) -> EvalResult:
    """g(beta) for any beta > 0, reflecting across beta = 1 as needed."""
    tol = tol or Tolerance()
    if not (math.isfinite(beta) and beta > 0.0):
        raise OutOfRangeError(f"beta must be positive, got {beta!r}")
    if beta >= _BAND_HI:
        inner = g_any_beta(params, 1.0 / beta, method, tol)
        value = inner.value + params.alpha * params.rho * math.log(beta)
        bound = inner.abs_error_bound + 4.0 * EPS * (1.0 + abs(value))
        return EvalResult(value, bound, inner.method, inner.terms_or_nodes_used)
    if beta > _BAND_LO:
        # both series representations slow down near beta = 1
        return g_quad(params, beta, _quad_cfg(tol))
    return _dispatch_g(params, beta, method, tol)


def gprime_any_beta(params: StableParams, beta: float,
                    method: MethodChoice = MethodChoice.AUTO,
                    tol: Tolerance | None = None) -> EvalResult:
    """g'(beta) for any beta > 0; the reflection derivative is
    g'(beta) = alpha rho / beta - g'(1/beta) / beta^2."""
    tol = tol or Tolerance()
    if not (math.isfinite(beta) and beta > 0.0):
        raise OutOfRangeError(f"beta must be positive, got {beta!r}")
    if beta >= _BAND_HI:
        inner = gprime_any_beta(params, 1.0 / beta, method, tol)
        value = params.alpha * params.rho / beta - inner.value / (beta * beta)
        bound = inner.abs_error_bound / (beta * beta) + 4.0 * EPS * (1.0 + abs(value))
        return EvalResult(value, bound, inner.method, inner.terms_or_nodes_used)
    if beta > _BAND_LO:
        return gprime_quad(params, beta, _quad_cfg(tol))
    return _dispatch_gprime(params, beta, method, tol)


def kappa(params: StableParams, q: KappaQuery,
          method: MethodChoice = MethodChoice.AUTO,
          tol: Tolerance | None = None) -> EvalResult:
    """kappa(gamma, beta) = gamma^rho exp(g(beta gamma^(-1/alpha)));
    kappa(gamma, 0) = gamma^rho exactly."""
    tol = tol or Tolerance()
    scale = q.gamma ** params.rho
    if q.beta == 0.0:
        return EvalResult(scale, 4.0 * EPS * abs(scale), method, 0)
    arg = q.beta * q.gamma ** (-1.0 / params.alpha)
    inner = g_any_beta(params, arg, method, tol)
    value = scale * math.exp(inner.value)
    bound = abs(value) * math.expm1(inner.abs_error_bound) + 4.0 * EPS * abs(value)
    return EvalResult(value, bound, inner.method, inner.terms_or_nodes_used)


def exit_transform(params: StableParams, eta: float, gamma: float, theta: float,
                   method: MethodChoice = MethodChoice.AUTO,
                   tol: Tolerance | None = None) -> EvalResult:
    """1 / ((theta + gamma) kappa(eta, gamma) kappa(eta, theta)).

    The expression is symmetric in (gamma, theta) exactly; swapping them
    produces the same floating-point value.
    """
    tol = tol or Tolerance()
    if not eta > 0.0:
        raise OutOfRangeError(f"eta must be positive, got {eta!r}")
    if gamma < 0.0 or theta < 0.0:
        raise OutOfRangeError("gamma and theta must be nonnegative")
    if theta + gamma == 0.0:
        raise ZeroDivisionError("theta + gamma must be positive")
    k1 = kappa(params, KappaQuery(eta, gamma), method, tol)
    k2 = kappa(params, KappaQuery(eta, theta), method, tol)
    # grouping keeps the value exactly symmetric under gamma <-> theta
    value = 1.0 / ((theta + gamma) * (k1.value * k2.value))
    rel = (k1.abs_error_bound / abs(k1.value)
           + k2.abs_error_bound / abs(k2.value))
    bound = abs(value) * rel + 4.0 * EPS * abs(value)
    return EvalResult(value, bound, k1.method,
                      k1.terms_or_nodes_used + k2.terms_or_nodes_used)
