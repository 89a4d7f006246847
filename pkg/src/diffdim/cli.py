"""Command-line front end: validate, omega, oracle, compare."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .chains import InvalidChainError
from .compare import compare_ideals
from .dimension import DEFAULT_SUBSET_LIMIT, krull_oracle, normalize_leaders, omega
from .diffpoly import derivative_text, poly_text
from .numpoly import MINUS, binomial_text, standard_text
from .systemfile import ParseError, SystemFile, parse_system

SUBSET_LIMIT_ENV = "DIFFDIM_SUBSET_LIMIT"


class _UsageError(Exception):
    def __init__(self, parser: argparse.ArgumentParser, message: str):
        super().__init__(message)
        self.parser = parser


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(self, message)


def _build_parser() -> _ArgumentParser:
    parser = _ArgumentParser(
        prog="diffdim",
        description="Dimension polynomials and comparison of differential chains.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("validate", help="check triangularity and coherence of a chain")
    p.add_argument("file")
    p.add_argument("--chain", required=True)
    p.add_argument("--explain", action="store_true", help="show the obstruction reductions")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("omega", help="dimension polynomial of a chain")
    p.add_argument("file")
    p.add_argument("--chain", required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("oracle", help="tabulate the counting oracle against omega")
    p.add_argument("file")
    p.add_argument("--chain", required=True)
    p.add_argument("--max-order", required=True, type=int)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("compare", help="relate the ideals of two chains, smaller in larger")
    p.add_argument("file")
    p.add_argument("--smaller", required=True)
    p.add_argument("--larger", required=True)
    p.add_argument("--assert-containment", action="store_true")
    p.add_argument("--json", action="store_true")
    return parser


def _usage_failure(parser: argparse.ArgumentParser, message: str) -> int:
    parser.print_usage(sys.stderr)
    print(f"{parser.prog}: error: {message}", file=sys.stderr)
    return 64


def _subset_limit() -> int:
    raw = os.environ.get(SUBSET_LIMIT_ENV)
    if raw is None:
        return DEFAULT_SUBSET_LIMIT
    return int(raw)


def _get_chain(system: SystemFile, name: str, parser, sub: str):
    chain = system.chains.get(name)
    if chain is None:
        known = ", ".join(sorted(system.chains))
        raise _UsageError(parser, f"unknown chain {name!r} (file declares: {known})")
    return chain


def _cmd_validate(system: SystemFile, args) -> int:
    chain = system.chains[args.chain]
    report = chain.validation_report()
    names = chain.ring.indeterminate_names
    if args.json:
        payload = {"chain": args.chain, **report.to_json_dict()}
        if args.explain:
            payload["delta_traces"] = [
                {
                    "elements": [check.first, check.second],
                    "delta": poly_text(check.delta, names),
                    **check.trace.to_json_dict(names),
                }
                for check in report.delta_checks
            ]
        print(json.dumps(payload, indent=2))
    else:
        flags = ["yes" if report.triangular else "no", "yes" if report.coherent else "no"]
        print(f"chain {args.chain}: triangular: {flags[0]}; coherent: {flags[1]}")
        print(f"initial/separant regularity: {report.regularity_of_initials_and_separants}")
        for message in report.messages:
            print(f"  note: {message}")
        if args.explain:
            for check in report.delta_checks:
                print(
                    f"  obstruction({check.first},{check.second}) = "
                    f"{poly_text(check.delta, names)} -> remainder "
                    f"{poly_text(check.trace.remainder, names)}"
                )
    return 0 if report.accepted else 1


def _cmd_omega(system: SystemFile, args) -> int:
    chain = system.chains[args.chain]
    try:
        result = omega(chain, subset_limit=_subset_limit())
    except InvalidChainError as exc:
        print(f"diffdim: chain {args.chain!r} is not a valid chain: {exc}", file=sys.stderr)
        return 1
    if args.json:
        payload = {"chain": args.chain, **result.to_json_dict(chain.ring)}
        print(json.dumps(payload, indent=2))
    else:
        print(
            f"ω(ℓ) = {standard_text(result.omega)} = {binomial_text(result.omega)} "
            f"(stabilizes at ℓ ≥ {result.stabilization_bound})"
        )
        print(
            f"degree {result.degree}, differential dimension {result.differential_dimension}"
        )
    return 0


def _cmd_oracle(system: SystemFile, args) -> int:
    chain = system.chains[args.chain]
    try:
        result = omega(chain, subset_limit=_subset_limit())
        spec = normalize_leaders(chain)
    except InvalidChainError as exc:
        print(f"diffdim: chain {args.chain!r} is not a valid chain: {exc}", file=sys.stderr)
        return 1
    rows = []
    for order in range(args.max_order + 1):
        counted = krull_oracle(spec, order)
        predicted = result.omega.eval(order)
        rows.append((order, counted, predicted, counted == predicted))
    if args.json:
        payload = {
            "chain": args.chain,
            "stabilization_bound": result.stabilization_bound,
            "rows": [
                {"order": o, "count": c, "omega": p, "match": m} for o, c, p, m in rows
            ],
        }
        print(json.dumps(payload, indent=2))
    else:
        print("{:>4} {:>10} {:>10}  match".format("ℓ", "Ω(ℓ)", "ω(ℓ)"))
        for order, counted, predicted, match in rows:
            print("{:>4} {:>10} {:>10}  {}".format(order, counted, predicted, "yes" if match else "no"))
        print(f"stabilizes at ℓ ≥ {result.stabilization_bound}")
    return 0


def _cmd_compare(system: SystemFile, args) -> int:
    smaller = system.chains[args.smaller]
    larger = system.chains[args.larger]
    try:
        verdict = compare_ideals(smaller, larger, containment_asserted=args.assert_containment)
    except InvalidChainError as exc:
        print(f"diffdim: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(verdict.to_json_dict(smaller.ring), indent=2))
    else:
        print(f"relation: {verdict.relation.value}")
        print(f"containment: {verdict.containment}")
        if verdict.assumed_relation is not None:
            print(f"relation if containment held: {verdict.assumed_relation.value}")
        print(f"ω smaller ({args.smaller}): {standard_text(verdict.omega_smaller)}")
        print(f"ω larger ({args.larger}): {standard_text(verdict.omega_larger)}")
        names = smaller.ring.indeterminate_names
        for x in sorted(verdict.leader_report):
            small, large = verdict.leader_report[x]
            left = MINUS if small is None else str(small)
            right = MINUS if large is None else str(large)
            print(
                f"leader {derivative_text(x, names)}: degree {left} in smaller, "
                f"{right} in larger"
            )
        a, b = verdict.degree_products
        print(f"degree products: {a} vs {b}")
    return verdict.exit_code


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        return _usage_failure(exc.parser, str(exc))
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        with open(args.file, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        print(f"diffdim: {exc}", file=sys.stderr)
        return 66
    try:
        system = parse_system(text)
    except ParseError as exc:
        print(f"diffdim: {args.file}: {exc}", file=sys.stderr)
        return 65
    try:
        if args.command == "compare":
            _get_chain(system, args.smaller, parser, "compare")
            _get_chain(system, args.larger, parser, "compare")
        else:
            _get_chain(system, args.chain, parser, args.command)
        if args.command == "oracle" and args.max_order < 0:
            raise _UsageError(parser, "--max-order must be nonnegative")
        try:
            _subset_limit()
        except ValueError:
            raise _UsageError(parser, f"{SUBSET_LIMIT_ENV} must be an integer")
    except _UsageError as exc:
        return _usage_failure(exc.parser, str(exc))
    handler = {
        "validate": _cmd_validate,
        "omega": _cmd_omega,
        "oracle": _cmd_oracle,
        "compare": _cmd_compare,
    }[args.command]
    return handler(system, args)


def main() -> None:
    sys.exit(run(sys.argv[1:]))
