"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
Criterion 5's absolute-threshold clause is implemented faithfully and is a
documented expected failure (see the xfail reason for the measured data).
"""

import json
import math
import random

import mpmath
import pytest

from stablekappa import (
    KappaQuery,
    MethodChoice,
    QuadConfig,
    RationalAlpha,
    StableParams,
    Tolerance,
    aux_int0b,
    aux_intbinfty,
    cf_expand,
    exit_transform,
    g_any_beta,
    g_doney,
    g_k_series,
    g_quad,
    g_series,
    gprime_half_closed,
    gprime_quad,
    gprime_rational,
    gprime_series,
    kappa,
    kernel_alt_sine,
    kernel_cosecant,
    kernel_geom_sine,
    kernel_poisson,
    find_doney_case,
    validate,
)
from stablekappa.accurate import sin_mpi
from stablekappa.cli import main

from conftest import admissible_rho_grid

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)
ALPHAS_IRRATIONAL = (SQRT2, SQRT3, 2.0 - SQRT2)
BETAS = tuple(0.1 * i for i in range(1, 10))
TOL = Tolerance()
TIGHT_QUAD = QuadConfig(abs_tol=1e-12)


def _report(num: int, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {num:2d} {'PASS' if ok else 'FAIL'}: {detail}")


def test_criterion_01_cross_method_agreement():
    worst = 0.0
    for alpha in ALPHAS_IRRATIONAL:
        for rho in admissible_rho_grid(alpha):
            p = validate(alpha, rho)
            for beta in BETAS:
                sg = g_series(p, beta, TOL)
                qg = g_quad(p, beta)
                gap = abs(sg.value - qg.value)
                allowance = 1e-8 + sg.tail_bound + sg.noise_bound + qg.abs_error_bound
                worst = max(worst, gap / allowance)
                sd = gprime_series(p, beta, TOL)
                qd = gprime_quad(p, beta)
                gap = abs(sd.value - qd.value)
                allowance = 1e-8 + sd.tail_bound + sd.noise_bound + qd.abs_error_bound
                worst = max(worst, gap / allowance)
    ok = worst <= 1.0
    _report(1, ok, f"series vs quadrature on 3x5x9 grid, worst gap/allowance {worst:.3f}")
    assert ok


def test_criterion_02_doney_k1l1_closed_form():
    worst = 0.0
    for alpha in (0.6, 0.75, 0.9):
        rho = 1.0 / alpha - 1.0
        p = validate(alpha, rho)
        case = find_doney_case(p)
        assert (case.k, case.l) == (1, 1)
        for beta in BETAS:
            closed = -math.log1p(-beta ** alpha) + math.log1p(-beta)
            worst = max(worst, abs(g_quad(p, beta, TIGHT_QUAD).value - closed))
            cheb = (g_k_series(alpha, beta ** alpha, 1, 700)
                    - g_k_series(1.0 / alpha, beta, 1, 700))
            worst = max(worst, abs(cheb - closed))
            worst = max(worst, abs(g_doney(p, beta, case) - closed))
    ok = worst <= 1e-10
    _report(2, ok, f"quadrature/Chebyshev-series/closed vs -log(1-b^a)+log(1-b), worst {worst:.2e}")
    assert ok


def test_criterion_03_spectrally_one_sided():
    worst = 0.0
    for alpha in (1.25, 1.5, 1.9):
        p = validate(alpha, 1.0 / alpha)
        for beta in BETAS:
            got = g_any_beta(p, beta, MethodChoice.AUTO, TOL).value
            worst = max(worst, abs(got - math.log1p(beta)))
    ok = worst <= 1e-10
    _report(3, ok, f"g = log(1+beta) at rho = 1/alpha, worst {worst:.2e}")
    assert ok


def test_criterion_04_half_alpha_closed_form():
    ra = RationalAlpha(1, 2)
    worst = 0.0
    for rho in (0.2, 0.5, 0.8):
        for beta in BETAS:
            got = gprime_rational(ra, rho, beta, Tolerance(abs_tol=1e-11)).value
            worst = max(worst, abs(got - gprime_half_closed(rho, beta)))
    ok = worst <= 1e-9
    _report(4, ok, f"rational formula vs alpha=1/2 closed form, worst {worst:.2e}")
    assert ok


def _resonant_limit_errors() -> tuple[float, float]:
    rho, beta = 0.5, 0.4
    ref = gprime_rational(RationalAlpha(1, 2), rho, beta,
                          Tolerance(abs_tol=1e-12)).value
    out = []
    for j in (10, 40):
        alpha_j = 0.5 + SQRT2 / j
        rep = gprime_series(StableParams(alpha_j, rho), beta,
                            Tolerance(abs_tol=1e-11))
        out.append(abs(rep.value - ref))
    return out[0], out[1]


def test_criterion_05_resonant_limit_monotone():
    err10, err40 = _resonant_limit_errors()
    ok = err40 < err10
    _report(5, ok, f"limit toward rational alpha: err(40)={err40:.3e} < err(10)={err10:.3e}")
    assert ok


@pytest.mark.xfail(
    strict=True,
    reason="stated threshold unattainable: the limit error is O(1/j) with "
    "constant ~0.558 at (p,q)=(1,2), rho=0.5, beta=0.4 (measured err(10)=5.39e-2, "
    "err(20)=2.76e-2, err(40)=1.396e-2, err(80)=7.0e-3; both endpoints verified "
    "against independent quadrature to ~1e-15). err(40)=1.396e-2 > 1e-2.")
def test_criterion_05_resonant_limit_absolute_threshold():
    _, err40 = _resonant_limit_errors()
    ok = err40 < 1e-2
    _report(5, ok, f"stated absolute threshold: err(40)={err40:.3e} < 1e-2")
    assert ok


def test_criterion_06_auxiliary_integrals():
    e1 = abs(aux_int0b(1.0, 0.5).value - (0.5 - math.log(1.5)))
    e2 = abs(aux_intbinfty(0.5, 1.0).value - math.pi / 2.0)
    e3 = abs(aux_intbinfty(1.0, 0.5).value - math.log(3.0))
    worst = max(e1, e2, e3)
    ok = worst <= 1e-10
    _report(6, ok, f"int0b(1,1/2), intbinfty(1/2,1), intbinfty(1,1/2), worst {worst:.2e}")
    assert ok


def test_criterion_07_identity_kernels():
    rng = random.Random(1234)
    worst_finite = 0.0
    for _ in range(100):
        pp = rng.uniform(-1.0, 1.0)
        x = rng.uniform(0.05, 3.0)
        n = rng.randint(1, 20)
        if 1.0 - 2.0 * pp * math.cos(x) + pp * pp < 1e-3:
            continue
        fs, cl = kernel_geom_sine(pp, x, n)
        worst_finite = max(worst_finite, abs(fs - cl))
    ok5 = worst_finite <= 1e-12

    ps, cf = kernel_poisson(0.5, 1.0, 60)
    geo_bound = 0.5 ** 61 / (1.0 - 0.5)
    ok8 = geo_bound < 1e-12 and abs(ps - cf) <= 1e-12

    ps, cf = kernel_alt_sine(1.0, 0.3, 100000)
    ok3 = abs(ps - cf) <= 1e-3

    z = 0.5
    ps, cf = kernel_cosecant(z, 100000)
    envelope = 2.0 * z / ((100001.0) ** 2 - z * z) * 1.5 + 1e-13
    ok4 = abs(ps - cf) <= envelope

    ok = ok5 and ok8 and ok3 and ok4
    _report(7, ok, f"kernels: finite {worst_finite:.2e}, poisson, alt-sine, cosecant")
    assert ok5 and ok8 and ok3 and ok4


def test_criterion_08_reflection():
    worst = 0.0
    for alpha in ALPHAS_IRRATIONAL:
        for rho in admissible_rho_grid(alpha):
            p = validate(alpha, rho)
            for beta in (1.5, 2.0, 5.0):
                big = g_quad(p, beta)
                small = g_series(p, 1.0 / beta, TOL)
                resid = abs(big.value - small.value - alpha * rho * math.log(beta))
                allowance = (1e-9 + big.abs_error_bound + small.tail_bound
                             + small.noise_bound)
                worst = max(worst, resid / allowance)
    ok = worst <= 1.0
    _report(8, ok, f"reflection residual / allowance, worst {worst:.3f}")
    assert ok


def test_criterion_09_diophantine_bound_and_convergents():
    worst_ratio = math.inf
    for m in range(1, 100001):
        v = abs(sin_mpi(m, SQRT2))
        ratio = v * 2.0 * m
        if ratio < worst_ratio:
            worst_ratio = ratio
    ok_bound = worst_ratio >= 1.0

    cf = cf_expand(SQRT2)
    with mpmath.workdps(60):
        y = mpmath.sqrt(2)
        oracle = []
        p1, q1, p2, q2 = 1, 0, 0, 1
        for _ in range(5):
            a = int(mpmath.floor(y))
            p, q = a * p1 + p2, a * q1 + q2
            oracle.append((p, q))
            p2, q2, p1, q1 = p1, q1, p, q
            y = 1 / (y - a)
    ok_cf = cf.convergents[:5] == tuple(oracle) == (
        (1, 1), (3, 2), (7, 5), (17, 12), (41, 29))
    ok = ok_bound and ok_cf
    _report(9, ok, f"|sin(m pi sqrt2)| >= 1/(2m) up to 1e5 (min ratio {worst_ratio:.3f}), "
            f"convergents vs mpmath")
    assert ok


def test_criterion_10_kappa_layer():
    p = validate(0.8, 0.25)
    ok_power = all(kappa(p, KappaQuery(g, 0.0)).value == g ** 0.25
                   for g in (0.5, 1.0, 2.0, 7.5))
    pc = validate(1.0, 0.5)
    ok_sym = all(
        exit_transform(pc, 1.0, a, b).value == exit_transform(pc, 1.0, b, a).value
        for a, b in ((1.0, 1.0), (0.3, 2.0), (0.0, 1.5)))
    ps = validate(SQRT2, 0.5)
    gamma, beta = 2.0, 0.4
    lhs = kappa(ps, KappaQuery(gamma, beta), MethodChoice.SERIES).value
    arg = beta * gamma ** (-1.0 / ps.alpha)
    rhs = gamma ** ps.rho * kappa(ps, KappaQuery(1.0, arg),
                                  MethodChoice.QUADRATURE).value
    ok_scale = abs(lhs - rhs) <= 1e-8
    ok = ok_power and ok_sym and ok_scale
    _report(10, ok, f"kappa(g,0)=g^rho exact, transform symmetric, "
            f"cross-method scaling gap {abs(lhs - rhs):.2e}")
    assert ok


def test_criterion_11_cli(capsys):
    code_cmp = main(["compare", "--alpha", repr(SQRT2), "--rho", "0.5",
                     "--beta", "0.3", "--format", "json"])
    out_cmp1 = capsys.readouterr().out
    code_bad = main(["eval", "--alpha", "0.5", "--rho", "1.0", "--beta", "0.5",
                     "--format", "json"])
    capsys.readouterr()
    code_self = main(["selftest"])
    capsys.readouterr()
    main(["compare", "--alpha", repr(SQRT2), "--rho", "0.5",
          "--beta", "0.3", "--format", "json"])
    out_cmp2 = capsys.readouterr().out
    ok = (code_cmp == 0 and code_bad == 1 and code_self == 0
          and out_cmp1 == out_cmp2)
    _report(11, ok, f"compare exit {code_cmp}, invalid-params exit {code_bad}, "
            f"selftest exit {code_self}, byte-identical reruns {out_cmp1 == out_cmp2}")
    assert ok
