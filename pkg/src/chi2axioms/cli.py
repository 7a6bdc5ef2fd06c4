"""Command-line entry point.

Exit codes: 0 success, 1 a check failed (witness emitted), 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path
from typing import Any, Sequence

from . import axioms as ax
from .errors import Chi2Error
from .exactnum import CountVector, ReferencePoint, format_rational, parse_rational
from .measures import MEASURE_NAMES, MeasureSpec, by_name, evaluate
from .reconstruction import derive_gamma, fit_quadratic_form, reproduces_scaled_chi2, chi2_form_coefficients, verify_gamma_constancy
from .report import (
    check_report_to_dict,
    envelope,
    form_to_dict,
    measure_to_dict,
    phi_entries_from_json,
    rationals,
    reference_from_json,
    test_result_to_dict,
    witness_to_dict,
)
from .stats import pearson_test

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INPUT_ERROR = 0, 1, 2


class InputError(Chi2Error):
    pass


def read_observed(path: str | Path) -> CountVector:
    """Counts from a CSV file: one per line, or a single comma-separated row."""
    text = Path(path).read_text()
    fields = [f.strip() for line in text.splitlines() for f in line.split(",")]
    fields = [f for f in fields if f]
    try:
        counts = tuple(int(f) for f in fields)
    except ValueError as exc:
        raise InputError(f"{path}: counts must be integers") from exc
    return CountVector(counts)


def read_reference(path: str | Path) -> ReferencePoint:
    data = json.loads(Path(path).read_text())
    if not isinstance(data, dict) or "pi" not in data:
        raise InputError(f'{path}: expected an object {{"pi": [...]}}')
    return reference_from_json(data["pi"])


def read_phi(path: str | Path):
    data = json.loads(Path(path).read_text())
    if not isinstance(data, dict) or "phi" not in data:
        raise InputError(f'{path}: expected an object {{"phi": [{{"pi": [...], "value": "p/q"}}]}}')
    return phi_entries_from_json(data["phi"])


def write_atomic(path: str | Path, payload: dict[str, Any]) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(payload: dict[str, Any], out: str | None) -> None:
    if out:
        write_atomic(out, payload)
    else:
        json.dump(payload, sys.stdout, indent=2)
        sys.stdout.write("\n")


def _measure(args: argparse.Namespace) -> MeasureSpec:
    phi_table = None
    if args.measure == "phi":
        phi_table = read_phi(args.phi) if args.phi else ax.default_phi_table(range(2, max(getattr(args, "n", 4), 4) + 1))
    return by_name(args.measure, args.gamma, phi_table)


def _suite_config(args: argparse.Namespace) -> ax.SuiteConfig:
    multiples = []
    k = 1
    while k <= args.kmax:
        multiples.append(k)
        k *= 2
    return ax.SuiteConfig(n_range=tuple(range(2, args.n + 1)), k_multiples=tuple(multiples), limit=args.limit)


def cmd_eval(args: argparse.Namespace) -> int:
    m = _measure(args)
    value = evaluate(m, read_observed(args.observed), read_reference(args.reference))
    print(f"{format_rational(value)} (≈{float(value):.10f})")
    return EXIT_OK


def cmd_test(args: argparse.Namespace) -> int:
    x, pi = read_observed(args.observed), read_reference(args.reference)
    result = pearson_test(x, pi, args.gamma)
    inputs = {"observed": list(x.counts), "reference": rationals(pi), "gamma": format_rational(args.gamma)}
    _emit(envelope("test", inputs, test_result_to_dict(result)), args.out)
    return EXIT_OK


def _characterizing_axioms(m: MeasureSpec) -> tuple[ax.AxiomId, ...]:
    return (ax.AxiomId("H", m.degree), ax.DEVIATIONS_BALANCEDNESS, ax.INVERSE_EFFECTS, ax.RESTRICTED_INVERSE_EFFECTS)


def cmd_axioms(args: argparse.Namespace) -> int:
    m = _measure(args)
    config = _suite_config(args)
    selected = ax.ALL_AXIOMS if args.all else _characterizing_axioms(m)
    reports = ax.run_axiom_suite(m, config, selected)
    inputs = {
        "measure": measure_to_dict(m),
        "n_range": list(config.n_range),
        "k_multiples": list(config.k_multiples),
        "lambda_range": list(config.lambda_range),
        "limit": config.limit,
    }
    witnesses = [witness_to_dict(r.witness) for r in reports if r.witness is not None]
    _emit(envelope("axioms", inputs, [check_report_to_dict(r) for r in reports], witnesses), args.out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_CHECK_FAILED


def cmd_independence(args: argparse.Namespace) -> int:
    config = _suite_config(args)
    report = ax.independence_report(config)
    print(report.table())
    if args.out:
        rows = {
            m.name: {a.label: check_report_to_dict(r) for a, r in cells.items()} for m, cells in report.rows.items()
        }
        witnesses = [
            witness_to_dict(r.witness) for cells in report.rows.values() for r in cells.values() if r.witness is not None
        ]
        inputs = {"n_range": list(config.n_range), "k_multiples": list(config.k_multiples), "limit": config.limit}
        write_atomic(args.out, envelope("independence", inputs, {"matrix": rows, "as_expected": report.as_expected()}, witnesses))
    return EXIT_OK if report.as_expected() else EXIT_CHECK_FAILED


def cmd_reconstruct(args: argparse.Namespace) -> int:
    m = _measure(args)
    if args.reference:
        refs = [read_reference(args.reference)]
    else:
        refs = [pi for n in range(2, args.n + 1) for pi in ax.references_for(m, n)]
    results, witnesses = [], []
    ok = True
    for pi in refs:
        entry: dict[str, Any] = {"reference": rationals(pi)}
        try:
            form = fit_quadratic_form(m, pi)
        except Chi2Error as exc:
            entry["quadratic"] = False
            entry["error"] = str(exc)
            witnesses.append({"reference": rationals(pi), "reason": str(exc)})
            ok = False
            results.append(entry)
            continue
        gamma = derive_gamma(form, pi)
        matches = form == chi2_form_coefficients(pi, gamma) if gamma > 0 else False
        entry.update(
            quadratic=True,
            form=form_to_dict(form),
            positive_definite=form.is_positive_definite(),
            gamma=format_rational(gamma),
            matches_closed_form=matches,
            reproduces_scaled_chi2=reproduces_scaled_chi2(m, pi, gamma),
        )
        if not matches:
            ok = False
            witnesses.append({"reference": rationals(pi), "reason": "fitted form differs from gamma*chi2_0 coefficients"})
        results.append(entry)
    summary: dict[str, Any] = {"per_reference": results}
    by_n: dict[int, list[ReferencePoint]] = {}
    for pi in refs:
        by_n.setdefault(pi.n, []).append(pi)
    if ok:
        constancy = {}
        for n, group in by_n.items():
            if len(group) >= 2:
                gc = verify_gamma_constancy(m, group)
                constancy[str(n)] = {"constant": gc.constant, "gammas": [format_rational(g) for g in gc.gammas.values()]}
                if not gc.constant:
                    ok = False
                    witnesses.append({"n": n, "reason": "gamma varies with the reference point"})
        gammas = {format_rational(derive_gamma(fit_quadratic_form(m, pi), pi)) for pi in refs}
        summary["gamma_constancy"] = constancy
        summary["gamma_constant_overall"] = len(gammas) == 1
    inputs = {"measure": measure_to_dict(m), "references": [rationals(pi) for pi in refs]}
    _emit(envelope("reconstruct", inputs, summary, witnesses), args.out)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _rational_arg(text: str):
    try:
        value = parse_rational(text)
    except Chi2Error as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if value <= 0:
        raise argparse.ArgumentTypeError("gamma must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chi2axioms", description="Exact chi-squared dissimilarity toolkit.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def measure_opts(p: argparse.ArgumentParser, default: str = "chi2_1") -> None:
        p.add_argument("--measure", choices=MEASURE_NAMES, default=default)
        p.add_argument("--gamma", type=_rational_arg, default=parse_rational("1"), help="positive scale p/q")
        p.add_argument("--phi", help='JSON {"phi": [{"pi": [...], "value": "p/q"}]} for --measure phi')

    def suite_opts(p: argparse.ArgumentParser) -> None:
        p.add_argument("--n", type=int, default=4, help="largest number of categories (from 2)")
        p.add_argument("--kmax", type=int, default=4, help="largest k multiple; multiples are 1, 2, 4, ...")
        p.add_argument("--limit", type=int, default=500, help="DB pairs per (pi, k)")

    p = sub.add_parser("eval", help="evaluate a measure exactly")
    measure_opts(p)
    p.add_argument("--observed", required=True)
    p.add_argument("--reference", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("test", help="Pearson goodness-of-fit test")
    p.add_argument("--gamma", type=_rational_arg, default=parse_rational("1"))
    p.add_argument("--observed", required=True)
    p.add_argument("--reference", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("axioms", help="run the axiom suite for one measure")
    measure_opts(p, default="chi2_0")
    suite_opts(p)
    p.add_argument("--all", action="store_true", help="report both homogeneity degrees")
    p.add_argument("--out")
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("independence", help="independence matrix of the three axioms")
    suite_opts(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_independence)

    p = sub.add_parser("reconstruct", help="fit quadratic forms and recover gamma")
    measure_opts(p, default="chi2_0")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--reference")
    p.add_argument("--out")
    p.set_defaults(func=cmd_reconstruct)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "n", 4) < 2:
        print("error: --n must be at least 2", file=sys.stderr)
        return EXIT_INPUT_ERROR
    try:
        return args.func(args)
    except (Chi2Error, OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
