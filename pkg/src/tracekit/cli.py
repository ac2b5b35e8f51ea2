"""Command-line interface.

Subcommands:
    verify kloosterman | bessel | measures   -- fixed verification batteries, CSV out
    petersson                                -- one truncated average, JSON out
    thm1 / thm2                              -- weight-sequence experiments

Exit codes: 0 all asserted checks pass, 1 any failure, 2 usage error.
A config file of KEY=VALUE lines can set precision_bits, max_k, out, format.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from .balls import Ball, precision
from .bessel import bessel_j, bessel_j_backward, transition_eval, verify_ratio_bound
from .chebyshev import chebyshev_x, derivative_bound_check, poly_q, verify_composition
from .cyclotomic import CyclotomicElement, is_zero_exact
from .experiments import (
    DEFAULT_MAX_K,
    emit_report,
    theorem1_experiment,
    theorem2_experiment,
)
from .kloosterman import brute_force_kloosterman, decompose, salie_evaluate, verify_decomposition
from .measures import (
    cdf,
    integrate_poly,
    moment_exact,
    mu_infinity,
    mu_infinity_2,
    mu_p,
    mu_p_squared,
    quadrature_moment,
)
from .modarith import mobius
from .petersson import asymptotic_check, delta_truncated, window_holds


def _write_text(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


# -- verify batteries ---------------------------------------------------------


def _verify_kloosterman(precision_bits: int):
    rows, ok = [], True

    def push(m, n, c, expect_int=None):
        nonlocal ok
        r = brute_force_kloosterman(m, n, c, precision_bits)
        zero = r.certificate.is_zero
        if expect_int is not None:
            match = is_zero_exact(r.exact - CyclotomicElement.integer(c, expect_int))
            ok = ok and match
        rows.append([m, n, c, repr(float(r.numeric.midpoint)), repr(float(r.numeric.radius)),
                     str(zero).lower(), r.certificate.name])
        return r

    for m, n, c, want in [(1, 1, 2, 1), (1, 1, 4, -2), (1, 1, 8, 0)]:
        push(m, n, c, want)
    for N in range(1, 31):
        push(1, 0, N, mobius(N))
    # decomposition spot checks
    for p, n, N in [(7, 1, 15), (3, 1, 20), (7, 2, 45)]:
        ok = ok and verify_decomposition(decompose(p, n, N))
        push(1, p ** (2 * n), N)
    # closed form vs brute force samples
    for a, b, q, beta in [(1, 1, 3, 2), (1, 4, 3, 2), (2, 8, 5, 2), (1, 1, 7, 2)]:
        s = salie_evaluate(a, b, q, beta, precision_bits)
        r = push(a, b, q**beta)
        ok = ok and s.intersects(r.numeric)
    return _csv_text(["m", "n", "c", "value_mid", "value_rad", "is_zero", "certificate"], rows), ok


def _verify_bessel(precision_bits: int):
    rows, ok = [], True

    def push(a, x_mid, value, method, check, passed):
        nonlocal ok
        ok = ok and passed
        rows.append([a, repr(float(x_mid)), repr(float(value.midpoint)),
                     repr(float(value.radius)), method, check, str(bool(passed)).lower()])

    for a in (10, 50, 100, 200, 400):
        for x in (0.1, 0.25, 0.5, 0.75, 0.9, 1.0):
            passed = verify_ratio_bound(a, x, precision_bits)
            ev = bessel_j(a, Ball(a) * Ball(x), precision_bits)
            push(a, a * x, ev.value, ev.method, "lemma_ratio_bound", passed)
    for a in (50, 100, 200, 400, 800, 1600, 2000):
        ev = bessel_j(a, a, precision_bits)
        with precision(precision_bits):
            scaled = ev.value * Ball(a).cbrt()
        passed = 0.3 <= float(scaled.lower) and float(scaled.upper) <= 0.5
        push(a, a, ev.value, ev.method, "transition_scaling", passed)
    for a in (64, 216, 512, 1000, 1728):
        for d in (-0.9, -0.5, 0.0, 0.5, 0.9):
            val = transition_eval(a, d, precision_bits)
            with precision(precision_bits):
                scaled = val * Ball(a).cbrt()
            passed = 0.1 <= float(scaled.lower) and float(scaled.upper) <= 0.8
            push(a, a + d * a ** (1 / 3), val, "series", "transition_window", passed)
    for a, x in [(0, 2), (3, 7), (100, 100), (301, 295)]:
        s = bessel_j(a, x, precision_bits)
        b = bessel_j_backward(a, x, precision_bits)
        push(a, x, b.value, b.method, "cross_method_overlap", s.value.intersects(b.value))
    return _csv_text(["a", "x_mid", "value_mid", "value_rad", "method", "lemma_check", "pass"], rows), ok


def _verify_measures(precision_bits: int):
    rows, ok = [], True

    def push(check, measure, param, value, expected, passed):
        nonlocal ok
        ok = ok and passed
        mid = float(value.midpoint) if isinstance(value, Ball) else float(value)
        rad = float(value.radius) if isinstance(value, Ball) else 0.0
        rows.append([check, measure, param, repr(mid), repr(rad), expected,
                     str(bool(passed)).lower()])

    one = chebyshev_x(0)
    for spec, label in [(mu_infinity(), "mu_inf"), (mu_p(3), "mu_p(3)"),
                        (mu_p(5), "mu_p(5)"), (mu_p(7), "mu_p(7)"),
                        (mu_p_squared(3), "mu_p2(3)"), (mu_infinity_2(), "mu_inf2")]:
        mass = integrate_poly(one, spec, precision_bits)
        push("mass", label, "", mass, "1", abs(float(mass.midpoint) - 1) < 1e-10
             and float(mass.radius) < 1e-10)
    for n in range(0, 13):
        mom = integrate_poly(chebyshev_x(n), mu_infinity(), precision_bits)
        want = 1 if n == 0 else 0
        push("moment_X", "mu_inf", str(n), mom, str(want),
             abs(float(mom.midpoint) - want) < 1e-10 and float(mom.radius) < 1e-10)
    for n in range(0, 6):
        mom = integrate_poly(poly_q(2 * n + 1), mu_infinity_2(), precision_bits)
        push("moment_Q_odd", "mu_inf2", str(2 * n + 1), mom, "0",
             abs(float(mom.midpoint)) < 1e-10 and float(mom.radius) < 1e-10)
    for m in (1, 2, 10, 20):
        push("composition", "", str(m), Ball(1 if verify_composition(m) else 0), "1",
             verify_composition(m))
    # quadrature cross-check of the exact moments
    for spec, label in [(mu_p(3), "mu_p(3)"), (mu_p_squared(5), "mu_p2(5)")]:
        poly = chebyshev_x(4)
        exact = float(moment_exact(poly, spec))
        quad = quadrature_moment(poly, spec)
        push("quadrature_vs_exact", label, "X_4", Ball(quad), repr(exact),
             abs(quad - exact) < 1e-9)
    half = cdf(mu_infinity(), 0, precision_bits)
    push("cdf", "mu_inf", "0", half, "0.5", abs(float(half.midpoint) - 0.5) < 1e-12)
    for spec, label in [(mu_infinity(), "mu_inf"), (mu_p(5), "mu_p(5)"),
                        (mu_p_squared(5), "mu_p2(5)"), (mu_infinity_2(), "mu_inf2")]:
        end = cdf(spec, spec.support[1], precision_bits)
        push("cdf_right_end", label, str(spec.support[1]), end, "1",
             abs(float(end.midpoint) - 1) < 1e-10)
    q_ratio, q3_ratio = derivative_bound_check(20)
    push("q_derivative_ratio", "", "20", Ball(q_ratio), "<cap", q_ratio < 10.0)
    push("q_value_ratio", "", "20", Ball(q3_ratio), "<cap", q3_ratio < 10.0)
    return _csv_text(["check", "measure", "param", "value_mid", "value_rad",
                      "expected", "pass"], rows), ok


# -- petersson subcommand -------------------------------------------------------


def _petersson_json(args) -> str:
    value = delta_truncated(args.k, args.N, args.m, args.n, B=args.trunc,
                            precision_bits=args.precision_bits)
    window = window_holds(args.k, args.N, args.m, args.n, args.precision_bits)
    payload = {
        "value_mid": float(value.value.midpoint),
        "value_rad": float(value.value.radius),
        "tail_bound": float(value.tail_bound),
        "window_ok": window,
        "main_term_mid": None,
        "remainder_mid": None,
        "envelope": None,
    }
    if args.k >= 28:
        check = asymptotic_check(args.k, args.N, args.m, args.n,
                                 args.precision_bits, B=args.trunc)
        payload["main_term_mid"] = float(check.main_term.midpoint)
        payload["remainder_mid"] = float(check.remainder.midpoint)
        payload["envelope"] = check.error_envelope
    return json.dumps(payload, indent=2) + "\n"


# -- argument plumbing ---------------------------------------------------------


def _load_config(path: str) -> dict:
    out = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#") or "=" not in line:
                continue
            key, _, value = line.partition("=")
            out[key.strip()] = value.strip()
    return out


def _add_common(p: argparse.ArgumentParser) -> None:
    # SUPPRESS defaults let the global flags appear before or after the
    # subcommand without the subparser resetting them
    p.add_argument("--precision-bits", type=int, default=argparse.SUPPRESS)
    p.add_argument("--max-k", type=int, default=argparse.SUPPRESS)
    p.add_argument("--out", default=argparse.SUPPRESS)
    p.add_argument("--format", choices=["csv", "json", "svg"], default=argparse.SUPPRESS)
    p.add_argument("--config", default=argparse.SUPPRESS, help="KEY=VALUE defaults file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tracekit",
                                     description="certified Kloosterman/Bessel/Petersson toolkit")
    _add_common(parser)
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run a fixed verification battery")
    verify.add_argument("target", choices=["kloosterman", "bessel", "measures"])
    _add_common(verify)

    pet = sub.add_parser("petersson", help="one truncated Petersson average")
    pet.add_argument("--k", type=int, required=True)
    pet.add_argument("--N", type=int, required=True)
    pet.add_argument("--m", type=int, required=True)
    pet.add_argument("--n", type=int, required=True)
    pet.add_argument("--trunc", type=int, default=None, help="truncation B (series over c=bN, b<B)")
    _add_common(pet)

    for name in ("thm1", "thm2"):
        t = sub.add_parser(name, help=f"{name} weight-sequence experiment")
        t.add_argument("--p", type=int, required=True)
        t.add_argument("--N", type=int, required=True)
        t.add_argument("--n-max", type=int, required=True)
        _add_common(t)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        # config supplies defaults; explicit command-line flags win
        cfg = _load_config(args.config)
        supplied = set(argv if argv is not None else sys.argv[1:])
        if "precision_bits" in cfg and "--precision-bits" not in supplied:
            args.precision_bits = int(cfg["precision_bits"])
        if "max_k" in cfg and "--max-k" not in supplied:
            args.max_k = int(cfg["max_k"])
        if "out" in cfg and "--out" not in supplied:
            args.out = cfg["out"]
        if "format" in cfg and "--format" not in supplied:
            args.format = cfg["format"]

    if args.command == "verify":
        runner = {"kloosterman": _verify_kloosterman,
                  "bessel": _verify_bessel,
                  "measures": _verify_measures}[args.target]
        text, ok = runner(args.precision_bits)
        _write_text(text, args.out)
        return 0 if ok else 1

    if args.command == "petersson":
        _write_text(_petersson_json(args), args.out)
        return 0

    runner = theorem1_experiment if args.command == "thm1" else theorem2_experiment
    report = runner(args.p, args.N, args.n_max,
                    precision_bits=args.precision_bits, max_k=args.max_k)
    emit_report(report, args.format, args.out)
    return 0 if report.all_asserted_pass() else 1


if __name__ == "__main__":
    sys.exit(main())
