"""Command-line interface: eval, kappa, table, compare, classify, selftest.

Output is byte-deterministic for identical flags: fields appear in a fixed
order, floats print in their shortest round-trip form (at most 17
significant digits), and nothing time- or environment-dependent is ever
emitted.  Exit codes: 0 ok, 1 invalid parameters or usage, 2 convergence
or self-test failure.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .diophantine import AlphaKind, cf_expand, classify, estimate_exponent
from .kappa import KappaQuery, exit_transform, g_any_beta, gprime_any_beta, kappa
from .params import (
    ConvergenceFailureError,
    EvalResult,
    IllConditionedSeriesError,
    InsufficientDataError,
    MethodChoice,
    MethodNotApplicableError,
    OutOfRangeError,
    StableParams,
    Tolerance,
    validate,
)
from .quadrature import QuadConfig, g_quad, gprime_quad
from .series import (
    aux_int0b,
    aux_intbinfty,
    gprime_series,
    kernel_alt_sine,
    kernel_cosecant,
    kernel_geom_sine,
    kernel_poisson,
)
from .special import RationalAlpha, find_doney_case, gprime_rational

_FIELDS = ("alpha", "rho", "beta", "gamma", "method", "value",
           "abs_error_bound", "terms_or_nodes_used", "status")


@dataclass(frozen=True)
class OutputRecord:
    """One evaluation as a flat record with a fixed field order."""

    alpha: float
    rho: float | None
    beta: float | None
    gamma: float | None
    method: str
    value: float | None
    abs_error_bound: float | None
    terms_or_nodes_used: int | None
    status: str

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in _FIELDS}

    def to_json(self) -> str:
        return json.dumps(self.as_dict())

    def to_csv_row(self) -> str:
        cells = []
        for name in _FIELDS:
            v = getattr(self, name)
            if v is None:
                cells.append("")
            elif isinstance(v, float):
                cells.append(repr(v))
            else:
                cells.append(str(v))
        return ",".join(cells)

    def to_text(self) -> str:
        parts = []
        for name in _FIELDS:
            v = getattr(self, name)
            if v is None:
                continue
            parts.append(f"{name}={v!r}" if isinstance(v, float) else f"{name}={v}")
        return " ".join(parts)


CSV_HEADER = ",".join(_FIELDS)


def _emit(records: list[OutputRecord], fmt: str) -> None:
    if fmt == "json":
        for rec in records:
            print(rec.to_json())
    elif fmt == "csv":
        print(CSV_HEADER)
        for rec in records:
            print(rec.to_csv_row())
    else:
        for rec in records:
            print(rec.to_text())


def _tolerance(args) -> Tolerance:
    return Tolerance(abs_tol=args.tol, max_terms=args.max_terms)


def _method(args) -> MethodChoice:
    return MethodChoice(args.method)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: D102 - argparse hook
        raise _UsageError(message)


def _add_common(p: argparse.ArgumentParser, rho: bool = True, beta: bool = False) -> None:
    p.add_argument("--alpha", type=float, required=True, help="stability index in (0, 2]")
    if rho:
        p.add_argument("--rho", type=float, required=True,
                       help="positivity parameter in [1-1/alpha, 1/alpha] & (0, 1)")
    if beta:
        p.add_argument("--beta", type=float, required=True, help="space argument")
    p.add_argument("--method", choices=[m.value for m in MethodChoice],
                   default="auto", help="evaluator (default: auto)")
    p.add_argument("--tol", type=float, default=1e-10, help="absolute tolerance")
    p.add_argument("--max-terms", type=int, default=10000, dest="max_terms",
                   help="series term budget")
    p.add_argument("--format", choices=["json", "csv", "text"], default="text",
                   help="output format")
    p.add_argument("--derivative", action="store_true",
                   help="evaluate g' instead of g")


def _failure_record(args, status: str, gamma: float | None = None) -> OutputRecord:
    return OutputRecord(
        alpha=args.alpha, rho=getattr(args, "rho", None),
        beta=getattr(args, "beta", None), gamma=gamma,
        method=args.method, value=None, abs_error_bound=None,
        terms_or_nodes_used=None, status=status)


_INVALID = (OutOfRangeError, MethodNotApplicableError, ZeroDivisionError)
_NOCONV = (ConvergenceFailureError, IllConditionedSeriesError)


def cmd_eval(args) -> int:
    try:
        params = validate(args.alpha, args.rho)
        tol = _tolerance(args)
        fn = gprime_any_beta if args.derivative else g_any_beta
        res = fn(params, args.beta, _method(args), tol)
    except _INVALID as exc:
        print(f"error: {exc}", file=sys.stderr)
        _emit([_failure_record(args, "invalid_params")], args.format)
        return 1
    except _NOCONV as exc:
        print(f"error: {exc}", file=sys.stderr)
        _emit([_failure_record(args, "convergence_failure")], args.format)
        return 2
    rec = OutputRecord(args.alpha, args.rho, args.beta, None,
                       res.method.value, res.value, res.abs_error_bound,
                       res.terms_or_nodes_used, "ok")
    _emit([rec], args.format)
    return 0


def cmd_kappa(args) -> int:
    try:
        params = validate(args.alpha, args.rho)
        tol = _tolerance(args)
        if args.transform is not None:
            eta, gamma, theta = args.transform
            res = exit_transform(params, eta, gamma, theta, _method(args), tol)
            rec = OutputRecord(args.alpha, args.rho, theta, gamma,
                               res.method.value, res.value, res.abs_error_bound,
                               res.terms_or_nodes_used, "ok")
        else:
            if args.beta is None:
                raise OutOfRangeError("kappa needs --beta (or --transform)")
            res = kappa(params, KappaQuery(args.gamma, args.beta), _method(args), tol)
            rec = OutputRecord(args.alpha, args.rho, args.beta, args.gamma,
                               res.method.value, res.value, res.abs_error_bound,
                               res.terms_or_nodes_used, "ok")
    except _INVALID as exc:
        print(f"error: {exc}", file=sys.stderr)
        _emit([_failure_record(args, "invalid_params", getattr(args, "gamma", None))],
              args.format)
        return 1
    except _NOCONV as exc:
        print(f"error: {exc}", file=sys.stderr)
        _emit([_failure_record(args, "convergence_failure", getattr(args, "gamma", None))],
              args.format)
        return 2
    _emit([rec], args.format)
    return 0


def _linspace(start: float, stop: float, count: int) -> list[float]:
    if count == 1:
        return [start]
    step = (stop - start) / (count - 1)
    pts = [start + i * step for i in range(count)]
    pts[-1] = stop
    return pts


def cmd_table(args) -> int:
    if args.beta_count < 1 or (args.gamma_count is not None and args.gamma_count < 1):
        print("error: empty sweep range", file=sys.stderr)
        return 1
    try:
        params = validate(args.alpha, args.rho)
    except _INVALID as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    tol = _tolerance(args)
    method = _method(args)
    betas = _linspace(args.beta_start, args.beta_stop, args.beta_count)
    gammas = (None if args.gamma_count is None
              else _linspace(args.gamma_start, args.gamma_stop, args.gamma_count))

    points: list[tuple[float, float | None]] = []
    for b in betas:
        if gammas is None:
            points.append((b, None))
        else:
            for gm in gammas:
                points.append((b, gm))

    def one(point: tuple[float, float | None]) -> OutputRecord:
        b, gm = point
        try:
            if gm is None:
                fn = gprime_any_beta if args.derivative else g_any_beta
                res = fn(params, b, method, tol)
            else:
                res = kappa(params, KappaQuery(gm, b), method, tol)
            return OutputRecord(args.alpha, args.rho, b, gm, res.method.value,
                                res.value, res.abs_error_bound,
                                res.terms_or_nodes_used, "ok")
        except _INVALID:
            return OutputRecord(args.alpha, args.rho, b, gm, args.method,
                                None, None, None, "invalid_params")
        except _NOCONV:
            return OutputRecord(args.alpha, args.rho, b, gm, args.method,
                                None, None, None, "convergence_failure")

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            records = list(pool.map(one, points))
    else:
        records = [one(pt) for pt in points]
    _emit(records, args.format)
    if any(r.status == "invalid_params" for r in records):
        return 1
    if any(r.status == "convergence_failure" for r in records):
        return 2
    return 0


def _applicable_methods(params: StableParams, beta: float, derivative: bool,
                        tol: Tolerance):
    """(name -> EvalResult) plus (name -> skip reason), deterministic order."""
    results: dict[str, EvalResult] = {}
    skipped: dict[str, str] = {}
    aclass = classify(params.alpha, tol, min(beta, 1.0 / beta) if beta > 1 else beta)

    if derivative:
        results["quadrature"] = gprime_quad(params, beta, QuadConfig(
            abs_tol=tol.abs_tol, max_refinements=tol.max_quad_refinements))
    else:
        results["quadrature"] = g_quad(params, beta, QuadConfig(
            abs_tol=tol.abs_tol, max_refinements=tol.max_quad_refinements))

    if aclass.kind is AlphaKind.IRRATIONAL:
        try:
            fn = gprime_any_beta if derivative else g_any_beta
            results["series"] = fn(params, beta, MethodChoice.SERIES, tol)
        except _NOCONV:
            skipped["series"] = "skipped: did not converge"
    elif aclass.kind is AlphaKind.ILL_CONDITIONED:
        skipped["series"] = "skipped: ill-conditioned"
    else:
        skipped["series"] = "skipped: rational alpha"

    if derivative:
        if aclass.kind is AlphaKind.RATIONAL and 0.0 < beta < 1.0:
            results["rational"] = gprime_rational(
                RationalAlpha(aclass.p, aclass.q), params.rho, beta, tol)
        else:
            skipped["rational"] = "skipped: needs rational alpha and beta in (0, 1)"
        skipped["doney"] = "skipped: closed form covers g only"
    else:
        case = find_doney_case(params)
        if case is not None:
            try:
                results["doney"] = g_any_beta(params, beta, MethodChoice.DONEY, tol)
            except _INVALID:
                skipped["doney"] = "skipped: not applicable at this beta"
        else:
            skipped["doney"] = "skipped: no (k, l) with rho + k = l/alpha"
    return results, skipped


def cmd_compare(args) -> int:
    try:
        params = validate(args.alpha, args.rho)
        tol = _tolerance(args)
        results, skipped = _applicable_methods(params, args.beta,
                                               args.derivative, tol)
    except _INVALID as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except _NOCONV as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    names = list(results)
    max_delta = 0.0
    worst_pair = ""
    bound_sum_of_worst = 0.0
    deltas: list[tuple[str, float, float]] = []
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            d = abs(results[a].value - results[b].value)
            bs = results[a].abs_error_bound + results[b].abs_error_bound
            deltas.append((f"{a}-{b}", d, bs))
            if d > max_delta:
                max_delta = d
                worst_pair = f"{a}-{b}"
                bound_sum_of_worst = bs
    agree = all(d <= bs + 1e-15 for _, d, bs in deltas)

    if args.format == "json":
        payload = {
            "alpha": args.alpha, "rho": args.rho, "beta": args.beta,
            "derivative": args.derivative,
            "methods": {
                name: {"value": res.value, "abs_error_bound": res.abs_error_bound,
                       "terms_or_nodes_used": res.terms_or_nodes_used}
                for name, res in results.items()
            },
            "skipped": skipped,
            "pairwise_delta": {pair: d for pair, d, _ in deltas},
            "max_delta": max_delta,
            "worst_pair": worst_pair,
            "agree": agree,
        }
        print(json.dumps(payload))
    else:
        target = "g'" if args.derivative else "g"
        print(f"compare {target} at alpha={args.alpha!r} rho={args.rho!r} "
              f"beta={args.beta!r}")
        for name, res in results.items():
            print(f"  {name:<11} value={res.value!r} bound={res.abs_error_bound:.3e} "
                  f"n={res.terms_or_nodes_used}")
        for name, reason in skipped.items():
            print(f"  {name:<11} {reason}")
        for pair, d, bs in deltas:
            print(f"  |{pair}| = {d:.3e} (bound sum {bs:.3e})")
        print(f"  max delta = {max_delta:.3e} -> {'agree' if agree else 'DISAGREE'}")
    return 0 if agree else 2


def cmd_classify(args) -> int:
    try:
        tol = _tolerance(args)
        cf = cf_expand(args.alpha, 64)
        aclass = classify(args.alpha, tol, args.beta)
    except _INVALID as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        nhat = estimate_exponent(cf)
    except InsufficientDataError:
        nhat = None
    try:
        params = StableParams(args.alpha, args.rho) if args.rho is not None else None
    except _INVALID:
        params = None
    if params is not None and find_doney_case(params) is not None:
        recommended = "doney"
    elif aclass.kind is AlphaKind.IRRATIONAL:
        recommended = "series"
    else:
        recommended = "quadrature"

    payload = {
        "alpha": args.alpha,
        "quotients": list(cf.quotients),
        "convergents": [[p, q] for p, q in cf.convergents],
        "exact": cf.exact,
        "kind": aclass.kind.value,
        "p": aclass.p,
        "q": aclass.q,
        "exponent_estimate": aclass.exponent_estimate,
        "cf_exponent_estimate": nhat,
        "floor_constant": aclass.floor_constant,
        "conditioning_beta": args.beta,
        "recommended_method": recommended,
    }
    if args.format == "json":
        print(json.dumps(payload))
    else:
        for key, val in payload.items():
            print(f"{key}: {val}")
    return 0


def _selftest_checks(tol_override: float | None):
    """Deterministic identity checks: (group, name, error, threshold)."""
    checks: list[tuple[str, str, float, float]] = []

    def add(group: str, name: str, err: float, thr: float) -> None:
        checks.append((group, name, err, tol_override if tol_override else thr))

    ps, cf = kernel_alt_sine(1.0, 0.3, 100000)
    add("kernels", "alt-sine z=1 w=0.3 M=1e5", abs(ps - cf), 1e-3)
    pneg, cneg = kernel_alt_sine(-1.0, 0.3, 1000)
    ppos, cpos = kernel_alt_sine(1.0, 0.3, 1000)
    add("kernels", "alt-sine antisymmetry", abs(pneg + ppos) + abs(cneg + cpos), 1e-15)
    ps, cf = kernel_cosecant(0.5, 10000)
    add("kernels", "cosecant z=1/2 K=1e4", abs(ps - cf), 1e-7)
    ps, cf = kernel_cosecant(1.0 / 3.0, 10000)
    add("kernels", "cosecant z=1/3 K=1e4", abs(ps - cf), 1e-7)
    rng = random.Random(20240811)
    worst = 0.0
    for _ in range(100):
        p = rng.uniform(-0.95, 0.95)
        x = rng.uniform(0.05, 3.0)
        n = rng.randint(1, 20)
        fs, cl = kernel_geom_sine(p, x, n)
        worst = max(worst, abs(fs - cl))
    add("kernels", "geometric-sine 100 random", worst, 1e-12)
    ps, cf = kernel_poisson(0.5, 1.0, 60)
    add("kernels", "poisson x=0.5 z=1 M=60", abs(ps - cf), 1e-12)

    r = aux_int0b(1.0, 0.5)
    add("integrals", "int0b(1, 1/2)", abs(r.value - (0.5 - math.log(1.5))), 1e-10)
    r = aux_intbinfty(0.5, 1.0)
    add("integrals", "intbinfty(1/2, 1)", abs(r.value - math.pi / 2.0), 1e-10)
    r = aux_intbinfty(1.0, 0.5)
    add("integrals", "intbinfty(1, 1/2)", abs(r.value - math.log(3.0)), 1e-10)
    base = aux_intbinfty(2.0, 0.5).value
    drift = [abs(aux_intbinfty(2.0 + e, 0.5).value - base) for e in (1e-3, 1e-4, 1e-5)]
    add("integrals", "intbinfty branch continuity", drift[2],
        10.0 * 1e-5 * (1.0 + abs(base)))

    for alpha, rho in ((math.sqrt(2.0), 0.5), (0.8, 0.25)):
        params = StableParams(alpha, rho)
        worst = 0.0
        for beta in (1.5, 2.0, 5.0):
            big = g_quad(params, beta, QuadConfig(abs_tol=1e-11))
            small = g_quad(params, 1.0 / beta, QuadConfig(abs_tol=1e-11))
            resid = abs(big.value - small.value - alpha * rho * math.log(beta))
            worst = max(worst, resid)
        add("reflection", f"alpha={alpha:.4f}", worst, 1e-9)

    rho, beta = 0.5, 0.4
    ref = gprime_rational(RationalAlpha(1, 2), rho, beta).value
    errs = []
    for j in (10, 40):
        aj = 0.5 + math.sqrt(2.0) / j
        rep = gprime_series(StableParams(aj, rho), beta, Tolerance(abs_tol=1e-11))
        errs.append(abs(rep.value - ref))
    add("resonance", "resonant limit err(40) < err(10)",
        errs[1] / errs[0], 1.0)
    add("resonance", "resonant limit err(40) sane", errs[1], 5e-2)
    return checks


def cmd_selftest(args) -> int:
    groups = set(args.only) if args.only else None
    checks = _selftest_checks(args.tol if args.tol_given else None)
    failures = 0
    ran = 0
    for group, name, err, thr in checks:
        if groups is not None and group not in groups:
            continue
        ran += 1
        ok = err <= thr
        if not ok:
            failures += 1
        print(f"{'PASS' if ok else 'FAIL'} {group}/{name}: err={err:.3e} tol={thr:.3e}")
    print(f"selftest: {ran - failures}/{ran} passed")
    return 0 if failures == 0 and ran > 0 else 2


def _build_parser() -> _Parser:
    parser = _Parser(prog="stablekappa",
                     description="Ladder-process Laplace exponent of stable "
                                 "processes by cross-validating methods")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate g (or g') at one point")
    _add_common(p, beta=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("kappa", help="evaluate kappa(gamma, beta) or the exit transform")
    _add_common(p)
    p.add_argument("--beta", type=float, default=None, help="space argument")
    p.add_argument("--gamma", type=float, default=1.0, help="time argument")
    p.add_argument("--transform", type=float, nargs=3, default=None,
                   metavar=("ETA", "GAMMA", "THETA"),
                   help="evaluate 1/((theta+gamma) kappa(eta,gamma) kappa(eta,theta))")
    p.set_defaults(func=cmd_kappa)

    p = sub.add_parser("table", help="sweep beta (and optionally gamma)")
    _add_common(p)
    p.add_argument("--beta-start", type=float, required=True)
    p.add_argument("--beta-stop", type=float, required=True)
    p.add_argument("--beta-count", type=int, required=True)
    p.add_argument("--gamma-start", type=float, default=None)
    p.add_argument("--gamma-stop", type=float, default=None)
    p.add_argument("--gamma-count", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1, help="worker threads")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("compare", help="run every applicable method at one point")
    _add_common(p, beta=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("classify", help="continued fraction and conditioning of alpha")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--rho", type=float, default=None,
                   help="optional, enables the method recommendation")
    p.add_argument("--beta", type=float, default=0.9,
                   help="beta at which conditioning is projected")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-terms", type=int, default=10000, dest="max_terms")
    p.add_argument("--format", choices=["json", "csv", "text"], default="text")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("selftest", help="run the identity self-test suite")
    p.add_argument("--tol", type=float, default=None,
                   help="override every check threshold")
    p.add_argument("--only", action="append", default=None,
                   choices=["kernels", "integrals", "reflection", "resonance"],
                   help="restrict to one or more check groups")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help and friends
        return 0 if exc.code in (0, None) else 1
    if getattr(args, "func", None) is cmd_selftest:
        args.tol_given = args.tol is not None
        if args.tol is None:
            args.tol = 0.0
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except _INVALID as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except _NOCONV as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
