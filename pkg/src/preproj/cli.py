"""Command-line front end: verification commands and machine-readable reports.

Subcommands:

    verify (lemma | theorem | identities | corner-iso | inverse | all)
    reduce --algebra (pe6|re6) "<expr>"
    admissible (--theta t1=v,... | "<f-expr in x,y>")
    basis --algebra (pe6|re6) [--corner <vertex>] [--constants FILE]
    sample --seed <n> --trials <m> [--field <p>]

Global flags ``--json`` (machine-readable report on stdout) and
``--quiet`` (suppress per-check lines).  Exit codes: 0 when every
requested check passes, 1 on a check failure, 2 on usage or parse errors.

Reports are deterministic: identical inputs produce byte-identical JSON
up to the timing fields (``ms``, ``total_ms``).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .e6 import (
    DeformationParameters,
    VerificationReport,
    admissibility_residual,
    build_pe6,
    build_re6,
    get_algebra,
    lemma_coefficients,
    sample_check,
    verify_corner_iso,
    verify_identities,
    verify_inverse,
    verify_lemma,
    verify_theorem,
)
from .expr import ExprError, format_element, parse_element

JSON_REPORT_SCHEMA = {
    "type": "object",
    "required": ["version", "command", "algebra", "checks", "status"],
    "properties": {
        "version": {"type": "string"},
        "command": {"type": "string"},
        "algebra": {
            "type": "object",
            "required": ["name", "dimension", "nilpotency_degree"],
            "properties": {
                "name": {"type": "string"},
                "dimension": {"type": "integer"},
                "nilpotency_degree": {"type": "integer"},
            },
        },
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "status", "residual", "ms"],
                "properties": {
                    "name": {"type": "string"},
                    "status": {"enum": ["pass", "fail"]},
                    "residual": {"type": ["string", "null"]},
                    "ms": {"type": "number"},
                },
            },
        },
        "status": {"enum": ["pass", "fail"]},
    },
}


def _algebra_fingerprint(name: str) -> dict:
    algebra = get_algebra(name)
    return {
        "name": name,
        "dimension": algebra.dimension(),
        "nilpotency_degree": algebra.nilpotency_degree,
    }


def report_document(command: str, algebra: str, reports, total_ms: float) -> dict:
    checks = []
    prefix_titles = len(reports) > 1
    for rep in reports:
        for c in rep.checks:
            name = f"{rep.title}: {c.name}" if prefix_titles else c.name
            checks.append(
                {
                    "name": name,
                    "status": "pass" if c.passed else "fail",
                    "residual": c.residual,
                    "ms": round(c.ms, 3),
                }
            )
    status = "pass" if all(r.passed for r in reports) else "fail"
    return {
        "version": __version__,
        "command": command,
        "algebra": _algebra_fingerprint(algebra),
        "checks": checks,
        "status": status,
        "total_ms": round(total_ms, 3),
    }


def _emit(document: dict, reports, args) -> int:
    if args.json:
        print(json.dumps(document, indent=2, sort_keys=False))
    elif not args.quiet:
        fp = document["algebra"]
        print(
            f"{document['command']}  [{fp['name']}: dim {fp['dimension']}, "
            f"nilpotency degree {fp['nilpotency_degree']}]"
        )
        for rep in reports:
            good, total = rep.counts()
            print(f"-- {rep.title}: {good}/{total} passed")
            for c in rep.checks:
                mark = "PASS" if c.passed else "FAIL"
                line = f"  [{mark}] {c.name} ({c.ms:.1f} ms)"
                print(line)
                if not c.passed and c.residual:
                    print(f"         residual: {c.residual}")
        print(f"overall: {document['status']} ({document['total_ms']:.0f} ms)")
    elif document["status"] != "pass":
        print("FAIL", file=sys.stderr)
    return 0 if document["status"] == "pass" else 1


def cmd_verify(args) -> int:
    start = time.perf_counter()
    target = args.target
    if target == "lemma":
        reports, algebra = [verify_lemma()], "re6"
    elif target == "theorem":
        reports, algebra = [verify_theorem()], "pe6"
    elif target == "identities":
        reports, algebra = [verify_identities()], "pe6"
    elif target == "corner-iso":
        reports, algebra = [verify_corner_iso()], "pe6"
    elif target == "inverse":
        reports, algebra = [verify_inverse(args.mode)], "pe6"
    else:  # all
        reports = [
            verify_lemma(),
            verify_theorem(),
            verify_identities(),
            verify_corner_iso(),
            verify_inverse("corrected"),
        ]
        algebra = "pe6"
    total_ms = (time.perf_counter() - start) * 1000.0
    command = f"verify {target}" + (
        f" --mode {args.mode}" if target == "inverse" else ""
    )
    return _emit(report_document(command, algebra, reports, total_ms), reports, args)


def cmd_reduce(args) -> int:
    algebra = get_algebra(args.algebra)
    element = parse_element(args.expr, algebra.quiver)
    normal = algebra.normal_form(element)
    text = format_element(normal.lift())
    if args.json:
        document = {
            "version": __version__,
            "command": f"reduce --algebra {args.algebra}",
            "algebra": _algebra_fingerprint(args.algebra),
            "checks": [],
            "status": "pass",
            "input": args.expr,
            "normal_form": text,
        }
        print(json.dumps(document, indent=2))
    else:
        print(text)
    return 0


def _parse_theta(text: str) -> list[Fraction]:
    values = {i: Fraction(0) for i in range(1, 10)}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise ExprError(f"expected t<i>=<rational>, got {item!r}", 1, 1)
        key, _, raw = item.partition("=")
        key = key.strip()
        if not (key.startswith("t") and key[1:].isdigit() and 1 <= int(key[1:]) <= 9):
            raise ExprError(f"unknown theta key {key!r}", 1, 1)
        try:
            values[int(key[1:])] = Fraction(raw.strip())
        except (ValueError, ZeroDivisionError):
            raise ExprError(f"invalid rational {raw.strip()!r}", 1, 1) from None
    return [values[i] for i in range(1, 10)]


def _theta_from_expression(text: str) -> list[Fraction]:
    """Read f given as an expression in x, y; must lie in rad^2 of re6."""
    algebra = build_re6()
    element = parse_element(text, algebra.quiver)
    normal = algebra.normal_form(element)
    words = {str(p).replace("*", ""): p for p in algebra.basis}
    coords = dict(normal.coords)
    values = []
    from .e6 import THETA_MONOMIALS

    for word in THETA_MONOMIALS:
        poly = coords.pop(words[word], None)
        values.append(Fraction(0) if poly is None else poly.as_rational())
    if coords:
        leftover = ", ".join(str(p) for p in coords)
        raise ExprError(
            f"f must lie in rad^2 (unexpected support: {leftover})", 1, 1
        )
    return values


def cmd_admissible(args) -> int:
    start = time.perf_counter()
    if args.theta is not None:
        theta = _parse_theta(args.theta)
    else:
        theta = _theta_from_expression(args.f_expr)
    params = DeformationParameters.numeric(theta)
    c1_poly, c2_poly = lemma_coefficients()
    assignment = {i + 1: v for i, v in enumerate(theta)}
    c1 = c1_poly.evaluate(assignment)
    c2 = c2_poly.evaluate(assignment)
    report = VerificationReport("admissible", "re6")
    report.add("first condition: t1 + t2 - 2*t3 = 0", c1 == 0, str(c1) if c1 else None, 0.0)
    report.add(
        "second condition: 3*t4 - 2*t5 + t6 + t1^2 - t1*t2 + t2^2 - t3^2 = 0",
        c2 == 0,
        str(c2) if c2 else None,
        0.0,
    )
    residual = admissibility_residual(params)
    ms = (time.perf_counter() - start) * 1000.0
    report.add(
        "direct cube: (x + y + f)^3 = 0 in re6",
        residual.is_zero(),
        None if residual.is_zero() else str(residual),
        ms,
    )
    total_ms = (time.perf_counter() - start) * 1000.0
    document = report_document("admissible", "re6", [report], total_ms)
    verdict = "admissible" if report.passed else "not admissible"
    if not args.json and not args.quiet:
        print(f"f is {verdict}")
    code = _emit(document, [report], args)
    return code


def cmd_basis(args) -> int:
    algebra = get_algebra(args.algebra)
    if args.corner is not None:
        lines = [
            f"deg={len(p)} {p.source}->{p.target} {p}"
            for p in algebra.corner_basis(args.corner)
        ]
    else:
        lines = algebra.basis_listing().splitlines()
    if args.constants:
        with open(args.constants, "w") as handle:
            handle.write(algebra.structure_constants_csv() + "\n")
    if args.json:
        document = {
            "version": __version__,
            "command": f"basis --algebra {args.algebra}",
            "algebra": _algebra_fingerprint(args.algebra),
            "checks": [],
            "status": "pass",
            "basis": lines,
        }
        print(json.dumps(document, indent=2))
    elif not args.quiet:
        print(f"# quiver {algebra.quiver.name}")
        for arrow_line in algebra.quiver.adjacency_listing().splitlines():
            print(f"# {arrow_line}")
        for line in lines:
            print(line)
    return 0


def cmd_sample(args) -> int:
    start = time.perf_counter()
    report = sample_check(seed=args.seed, trials=args.trials, field=args.field)
    total_ms = (time.perf_counter() - start) * 1000.0
    command = f"sample --seed {args.seed} --trials {args.trials}" + (
        f" --field {args.field}" if args.field else ""
    )
    return _emit(report_document(command, "pe6", [report], total_ms), [report], args)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="preproj",
        description=(
            "Exact symbolic verification for the preprojective algebra of "
            "type E6 and its deformations."
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--quiet", action="store_true", help="suppress per-check output")

    p_verify = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p_verify.add_argument(
        "target",
        choices=["lemma", "theorem", "identities", "corner-iso", "inverse", "all"],
    )
    p_verify.add_argument(
        "--mode",
        choices=["printed", "corrected"],
        default="corrected",
        help="inverse formulas: verbatim printed form or documented corrections",
    )
    p_verify.set_defaults(func=cmd_verify)

    p_reduce = sub.add_parser(
        "reduce", parents=[common], help="normal form of an expression"
    )
    p_reduce.add_argument("--algebra", choices=["pe6", "re6"], required=True)
    p_reduce.add_argument("expr")
    p_reduce.set_defaults(func=cmd_reduce)

    p_adm = sub.add_parser(
        "admissible", parents=[common], help="decide admissibility of f"
    )
    group = p_adm.add_mutually_exclusive_group(required=True)
    group.add_argument("--theta", help="comma-separated t<i>=<rational> assignments")
    group.add_argument("f_expr", nargs="?", help="f as an expression in x and y")
    p_adm.set_defaults(func=cmd_admissible)

    p_basis = sub.add_parser(
        "basis", parents=[common], help="list the canonical basis"
    )
    p_basis.add_argument("--algebra", choices=["pe6", "re6"], required=True)
    p_basis.add_argument("--corner", type=int, help="restrict to loops at a vertex")
    p_basis.add_argument(
        "--constants", metavar="FILE", help="write structure constants as CSV"
    )
    p_basis.set_defaults(func=cmd_basis)

    p_sample = sub.add_parser(
        "sample", parents=[common], help="numeric cross-check of the theorem"
    )
    p_sample.add_argument("--seed", type=int, required=True)
    p_sample.add_argument("--trials", type=int, required=True)
    p_sample.add_argument("--field", type=int, help="prime p for GF(p) arithmetic")
    p_sample.set_defaults(func=cmd_sample)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ExprError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
