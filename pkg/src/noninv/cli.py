"""Command-line interface.

Exit codes: 0 = success (all verifications passed), 1 = at least one
verification mismatch, 2 = usage or input error.  Text output is
line-oriented, one record per line; ``--json`` emits a single JSON
document per invocation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .bounds import compare_bounds, check_composition_bound
from .closed_form import (
    ChainSpec,
    closed_multinomial_power_sum,
    expected_degree_chain,
    expected_degree_q,
    power_sum_stirling_form,
    stirling_identity_sum,
)
from .combinatorics import StirlingTable, stirling_transform
from .errors import NoninvError
from .functions import load_function
from .montecarlo import (
    SamplerConfig,
    estimate_expected_degree_chain,
    estimate_max_fiber_mean,
)
from .oracle import (
    DEFAULT_BUDGET,
    EnumerationBudget,
    VerificationReport,
    brute_expected_degree_chain,
    brute_expected_degree_q,
    check_square_moment_identity,
    enumerate_functions,
    multinomial_expected_degree_chain,
    multinomial_power_sum,
)

__all__ = ["run", "main"]


# --------------------------------------------------------------------------
# formatting helpers


def _frac_str(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _frac_decimal(x: Fraction, places: int) -> str:
    """Exact decimal expansion to ``places`` digits, round half away."""
    x = Fraction(x)
    sign = "-" if x < 0 else ""
    num, den = abs(x.numerator), x.denominator
    if places <= 0:
        scaled, rem = divmod(num, den)
        if 2 * rem >= den:
            scaled += 1
        return sign + str(scaled)
    scaled, rem = divmod(num * 10**places, den)
    if 2 * rem >= den:
        scaled += 1
    digits = str(scaled).rjust(places + 1, "0")
    return sign + digits[:-places] + "." + digits[-places:]


def _frac_json(x: Fraction, decimals: int | None = None) -> dict:
    x = Fraction(x)
    out = {"numerator": x.numerator, "denominator": x.denominator}
    out["decimal"] = _frac_decimal(x, decimals) if decimals else None
    return out


def _report_json(check: str, report: VerificationReport) -> dict:
    return {
        "check": check,
        "parameters": dict(report.parameters),
        "oracle": _frac_json(report.oracle_value),
        "closed": _frac_json(report.closed_value),
        "match": report.match,
    }


def _report_line(check: str, report: VerificationReport) -> str:
    params = " ".join(f"{k}={v}" for k, v in report.parameters.items())
    return (
        f"check={check} {params} oracle={_frac_str(report.oracle_value)} "
        f"closed={_frac_str(report.closed_value)} "
        f"match={'true' if report.match else 'false'}"
    )


def _emit_envelope(args, parameters: dict, results: list,
                   lines: list[str], all_match: bool | None) -> None:
    if args.json:
        envelope = {
            "command": args.command_path,
            "parameters": parameters,
            "results": results,
        }
        if all_match is not None:
            envelope["all_match"] = all_match
        print(json.dumps(envelope, indent=2))
    else:
        for line in lines:
            print(line)


def _parse_sizes(text: str) -> tuple[int, ...]:
    try:
        sizes = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise NoninvError(
            f"sizes must be comma-separated integers, got {text!r}"
        ) from None
    return sizes


def _parse_parts(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise NoninvError(
            f"parts must be comma-separated integers, got {text!r}"
        ) from None


# --------------------------------------------------------------------------
# command handlers


def _cmd_deg(args) -> int:
    f = load_function(args.file)
    value = f.degree_q(args.q)
    text = _frac_str(value)
    if args.decimals:
        text += f" ({_frac_decimal(value, args.decimals)})"
    _emit_envelope(
        args,
        {"file": args.file, "q": args.q},
        [
            {
                "domain": f.domain_size,
                "codomain": f.codomain_size,
                "q": args.q,
                "degree": _frac_json(value, args.decimals),
                "max_fiber": f.max_fiber(),
            }
        ],
        [text],
        None,
    )
    return 0


def _cmd_expected(args) -> int:
    spec = ChainSpec(_parse_sizes(args.sizes))
    value = expected_degree_chain(spec)
    text = _frac_str(value)
    if args.decimals:
        text += f" ({_frac_decimal(value, args.decimals)})"
    _emit_envelope(
        args,
        {"sizes": list(spec.sizes)},
        [{"expected_degree": _frac_json(value, args.decimals)}],
        [text],
        None,
    )
    return 0


def _cmd_expected_q(args) -> int:
    value = expected_degree_q(args.n, args.m, args.q)
    text = _frac_str(value)
    if args.decimals:
        text += f" ({_frac_decimal(value, args.decimals)})"
    _emit_envelope(
        args,
        {"n": args.n, "m": args.m, "q": args.q},
        [{"expected_degree_q": _frac_json(value, args.decimals)}],
        [text],
        None,
    )
    return 0


def _finish_verify(args, parameters, named_reports, skipped) -> int:
    all_match = all(r.match for _, r in named_reports)
    results = [_report_json(name, r) for name, r in named_reports]
    lines = [_report_line(name, r) for name, r in named_reports]
    for name, reason in skipped:
        results.append({"check": name, "skipped": reason})
        lines.append(f"check={name} skipped={reason}")
    _emit_envelope(args, parameters, results, lines, all_match)
    return 0 if all_match else 1


def _cmd_verify_chain(args) -> int:
    spec = ChainSpec(_parse_sizes(args.sizes))
    budget = EnumerationBudget(args.budget)
    closed = expected_degree_chain(spec)
    params = {"sizes": ",".join(str(s) for s in spec.sizes)}
    reports = []
    skipped = []
    try:
        brute = brute_expected_degree_chain(spec, budget)
        reports.append(
            (
                "chain-enumeration",
                VerificationReport.compare(params, brute, closed),
            )
        )
    except NoninvError as exc:
        skipped.append(("chain-enumeration", str(exc)))
    nested = multinomial_expected_degree_chain(spec, budget)
    reports.append(
        (
            "chain-multinomial",
            VerificationReport.compare(params, nested, closed),
        )
    )
    return _finish_verify(args, {"sizes": list(spec.sizes)}, reports, skipped)


def _cmd_verify_degq(args) -> int:
    budget = EnumerationBudget(args.budget)
    n, m = args.n, args.m
    reports = []
    skipped = []
    for q in range(1, args.qmax + 1):
        params = {"n": n, "m": m, "q": q}
        closed = expected_degree_q(n, m, q)
        try:
            brute = brute_expected_degree_q(n, m, q, budget)
            reports.append(
                (
                    "degq-enumeration",
                    VerificationReport.compare(params, brute, closed),
                )
            )
        except NoninvError as exc:
            skipped.append(("degq-enumeration", str(exc)))
        power = multinomial_power_sum(n, m, q, budget)
        reports.append(
            (
                "degq-power-sum",
                VerificationReport.compare(
                    params, power, n * m**n * closed
                ),
            )
        )
    return _finish_verify(
        args, {"n": n, "m": m, "qmax": args.qmax}, reports, skipped
    )


def _cmd_verify_en(args) -> int:
    parts = _parse_parts(args.parts)
    report = check_square_moment_identity(args.m, parts)
    return _finish_verify(
        args,
        {"m": args.m, "parts": list(parts)},
        [("square-moment", report)],
        [],
    )


def _cmd_verify_corollary(args) -> int:
    reports = []
    for q in range(1, args.qmax + 1):
        reports.append(
            (
                "stirling-identity",
                VerificationReport.compare(
                    {"q": q}, stirling_identity_sum(q), 1
                ),
            )
        )
    budget = EnumerationBudget(args.budget)
    for n in range(1, args.nmax + 1):
        for q in range(1, min(args.qmax, 6) + 1):
            reports.append(
                (
                    "power-sum-form",
                    VerificationReport.compare(
                        {"n": n, "q": q},
                        multinomial_power_sum(n, n, q, budget),
                        power_sum_stirling_form(n, q),
                    ),
                )
            )
    return _finish_verify(
        args, {"qmax": args.qmax, "nmax": args.nmax}, reports, []
    )


def _bound_report_json(report) -> dict:
    new_sq, old_sq = report.old_bound_squared_scaled
    return {
        "deg_composition": _frac_json(report.deg_composition),
        "new_bound": _frac_json(report.new_bound),
        "new_bound_squared": _frac_json(new_sq),
        "old_bound_squared": _frac_json(old_sq),
        "new_holds": report.new_holds,
        "chain_holds": report.chain_holds,
    }


def _bound_report_line(label: str, report) -> str:
    new_sq, old_sq = report.old_bound_squared_scaled
    return (
        f"{label} deg_composition={_frac_str(report.deg_composition)} "
        f"new_bound={_frac_str(report.new_bound)} "
        f"new_bound_sq={_frac_str(new_sq)} old_bound_sq={_frac_str(old_sq)} "
        f"new_holds={'true' if report.new_holds else 'false'} "
        f"chain_holds={'true' if report.chain_holds else 'false'}"
    )


def _cmd_bounds(args) -> int:
    if args.exhaustive:
        if args.n is None:
            raise NoninvError("--exhaustive requires --n")
        pairs = 0
        new_violations = 0
        chain_violations = 0
        fns = list(enumerate_functions(args.n, args.n))
        for f in fns:
            for g in fns:
                report = compare_bounds(f, g)
                pairs += 1
                new_violations += not report.new_holds
                chain_violations += not report.chain_holds
        ok = new_violations == 0 and chain_violations == 0
        _emit_envelope(
            args,
            {"n": args.n, "exhaustive": True},
            [
                {
                    "pairs": pairs,
                    "new_violations": new_violations,
                    "chain_violations": chain_violations,
                }
            ],
            [
                f"pairs={pairs} new_violations={new_violations} "
                f"chain_violations={chain_violations}"
            ],
            ok,
        )
        return 0 if ok else 1
    if not args.outer or not args.inner:
        raise NoninvError("provide OUTER and INNER function files, "
                          "or --exhaustive --n N")
    f = load_function(args.outer)
    g = load_function(args.inner)
    endo = (
        f.domain_size == f.codomain_size == g.domain_size == g.codomain_size
    )
    report = compare_bounds(f, g) if endo else check_composition_bound(f, g)
    ok = report.new_holds and (report.chain_holds or not endo)
    _emit_envelope(
        args,
        {"outer": args.outer, "inner": args.inner},
        [_bound_report_json(report)],
        [_bound_report_line("bound", report)],
        ok,
    )
    return 0 if ok else 1


def _cmd_stirling(args) -> int:
    if args.transform is not None:
        seq = list(_parse_parts(args.transform))
        out = stirling_transform(seq)
        _emit_envelope(
            args,
            {"transform": seq},
            [{"transformed": out}],
            [" ".join(str(v) for v in out)],
            None,
        )
        return 0
    table = StirlingTable(args.rows)
    rows = []
    for n in range(args.rows + 1):
        if args.kind == "second":
            row = list(table.second_row(n))
        elif args.kind == "first":
            row = list(table.first_row(n))
        else:
            row = [table.first_signed(n, k) for k in range(n + 1)]
        rows.append(row)
    _emit_envelope(
        args,
        {"kind": args.kind, "rows": args.rows},
        [{"triangle": rows}],
        [f"{n}: " + " ".join(str(v) for v in row)
         for n, row in enumerate(rows)],
        None,
    )
    return 0


def _estimate_json(report) -> dict:
    out = {
        "mean": report.mean,
        "std_error": report.std_error,
        "samples": report.samples,
        "seed": report.seed,
    }
    out["closed_form"] = (
        _frac_json(report.closed_form)
        if report.closed_form is not None
        else None
    )
    out["z_score"] = report.z_score
    if report.theta_ratio is not None:
        out["theta_ratio"] = report.theta_ratio
    return out


def _cmd_simulate_chain(args) -> int:
    spec = ChainSpec(_parse_sizes(args.sizes))
    config = SamplerConfig(seed=args.seed, samples=args.samples, sizes=spec)
    report = estimate_expected_degree_chain(config, threads=args.threads)
    closed = _frac_str(report.closed_form)
    z = "none" if report.z_score is None else repr(report.z_score)
    _emit_envelope(
        args,
        {
            "sizes": list(spec.sizes),
            "samples": args.samples,
            "seed": args.seed,
        },
        [_estimate_json(report)],
        [
            f"mean={report.mean!r} std_error={report.std_error!r} "
            f"closed={closed} z={z} samples={report.samples} "
            f"seed={report.seed}"
        ],
        None,
    )
    return 0


def _cmd_simulate_maxfiber(args) -> int:
    config = SamplerConfig(seed=args.seed, samples=args.samples)
    report = estimate_max_fiber_mean(args.n, config, threads=args.threads)
    _emit_envelope(
        args,
        {"n": args.n, "samples": args.samples, "seed": args.seed},
        [_estimate_json(report)],
        [
            f"mean={report.mean!r} std_error={report.std_error!r} "
            f"theta_ratio={report.theta_ratio!r} "
            f"samples={report.samples} seed={report.seed}"
        ],
        None,
    )
    return 0


# --------------------------------------------------------------------------
# parser


def _add_common(parser, decimals=False):
    parser.add_argument("--json", action="store_true",
                        help="emit a single JSON document")
    if decimals:
        parser.add_argument(
            "--decimals", type=int, default=0, metavar="K",
            help="also print a K-digit decimal approximation",
        )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="noninv",
        description="Exact degrees of noninvertibility of finite "
        "functions: closed forms, independent verification paths, "
        "bounds and seeded Monte Carlo estimates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("deg", help="degree of a function read from a file")
    p.add_argument("--file", required=True,
                   help="function file (text 'n m : images' one-based, "
                   "or JSON zero-based)")
    p.add_argument("--q", type=int, default=2,
                   help="fiber power (default 2, the degree)")
    _add_common(p, decimals=True)
    p.set_defaults(handler=_cmd_deg, command_path="deg")

    p = sub.add_parser("expected",
                       help="exact expected degree of a composition chain")
    p.add_argument("--sizes", required=True,
                   help="comma-separated set sizes n1,...,n_{t+1}")
    _add_common(p, decimals=True)
    p.set_defaults(handler=_cmd_expected, command_path="expected")

    p = sub.add_parser("expected-q",
                       help="exact expected generalized degree")
    p.add_argument("--n", type=int, required=True, help="domain size")
    p.add_argument("--m", type=int, required=True, help="codomain size")
    p.add_argument("--q", type=int, required=True, help="fiber power")
    _add_common(p, decimals=True)
    p.set_defaults(handler=_cmd_expected_q, command_path="expected-q")

    v = sub.add_parser("verify",
                       help="check closed forms against independent paths")
    vsub = v.add_subparsers(dest="verify_command", required=True)

    p = vsub.add_parser("chain", help="chain expectation, three paths")
    p.add_argument("--sizes", required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET.max_states)
    _add_common(p)
    p.set_defaults(handler=_cmd_verify_chain, command_path="verify chain")

    p = vsub.add_parser("degq", help="generalized-degree expectation")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--qmax", type=int, default=6)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET.max_states)
    _add_common(p)
    p.set_defaults(handler=_cmd_verify_degq, command_path="verify degq")

    p = vsub.add_parser("en", help="square-moment multinomial identity")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--parts", required=True,
                   help="comma-separated nonnegative weights")
    _add_common(p)
    p.set_defaults(handler=_cmd_verify_en, command_path="verify en")

    p = vsub.add_parser("corollary",
                        help="Stirling identity sweep and power-sum form")
    p.add_argument("--qmax", type=int, default=30)
    p.add_argument("--nmax", type=int, default=5)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET.max_states)
    _add_common(p)
    p.set_defaults(handler=_cmd_verify_corollary,
                   command_path="verify corollary")

    p = sub.add_parser("stirling",
                       help="print Stirling triangles or a transform")
    p.add_argument("--kind", choices=["second", "first", "first-signed"],
                   default="second")
    p.add_argument("--rows", type=int, default=10)
    p.add_argument("--transform", default=None,
                   help="comma-separated sequence to transform")
    _add_common(p)
    p.set_defaults(handler=_cmd_stirling, command_path="stirling")

    p = sub.add_parser("bounds", help="composition bound reports")
    p.add_argument("outer", nargs="?", default=None,
                   help="file for the outer function f of f(g(x))")
    p.add_argument("inner", nargs="?", default=None,
                   help="file for the inner function g")
    p.add_argument("--exhaustive", action="store_true",
                   help="sweep all endofunction pairs on an n-set")
    p.add_argument("--n", type=int, default=None)
    _add_common(p)
    p.set_defaults(handler=_cmd_bounds, command_path="bounds")

    s = sub.add_parser("simulate", help="seeded Monte Carlo estimates")
    ssub = s.add_subparsers(dest="simulate_command", required=True)

    p = ssub.add_parser("chain", help="sample random composition chains")
    p.add_argument("--sizes", required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--threads", type=int, default=1)
    _add_common(p)
    p.set_defaults(handler=_cmd_simulate_chain,
                   command_path="simulate chain")

    p = ssub.add_parser("maxfiber",
                        help="sample max fiber sizes of endofunctions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--threads", type=int, default=1)
    _add_common(p)
    p.set_defaults(handler=_cmd_simulate_maxfiber,
                   command_path="simulate maxfiber")

    return parser


def run(argv=None) -> int:
    """Parse argv and dispatch; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.handler(args)
    except (NoninvError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
