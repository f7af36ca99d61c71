"""
Command-line entry point.

Machine-readable results go to stdout as one JSON object per line; human
diagnostics go to stderr.  Exit codes are fixed:

    0  pass / found
    1  negative result (verification failed, search exhausted)
    2  precondition or usage error
    3  I/O or file-format error
    4  search budget exceeded
"""

from __future__ import annotations

import argparse
import json
import sys

from .demos import z2n_example, z10n_example
from .errors import NilfactorError
from .factorize import (
    construct_complete_factorization,
    factorization_from_json,
    verify_complete_factorization,
    verify_factorization,
)
from .groupspec import parse_group_spec
from .probe import PROBE_NODE_BUDGET, probe_report
from .search import (
    DEFAULT_NODE_BUDGET,
    DEFAULT_TIME_BUDGET,
    SearchProblem,
    Status,
    search_complete_factorization,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_PRECONDITION = 2
EXIT_IO = 3
EXIT_BUDGET = 4


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")
    sys.stdout.flush()


def _fail(exc: Exception, code: int) -> int:
    print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
    return code


def _sizes(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.replace(" ", "").split(",") if tok]
    except ValueError:
        raise argparse.ArgumentTypeError(f"sizes must be comma-separated integers, got {text!r}")


def cmd_construct(args) -> int:
    try:
        g = parse_group_spec(args.group)
        fact = construct_complete_factorization(g, args.sizes)
    except (NilfactorError, OSError) as exc:
        return _fail(exc, EXIT_IO if isinstance(exc, OSError) else EXIT_PRECONDITION)
    report = verify_complete_factorization(g, fact.blocks)
    doc = fact.to_json()
    if args.no_trace:
        doc.pop("trace", None)
    if args.output:
        try:
            with open(args.output, "w") as fh:
                json.dump(doc, fh)
                fh.write("\n")
        except OSError as exc:
            return _fail(exc, EXIT_IO)
    _emit(doc)
    if not report.passed:
        print(f"self-check failed: {report.to_json()}", file=sys.stderr)
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        g = parse_group_spec(args.group)
    except OSError as exc:
        return _fail(exc, EXIT_IO)
    except NilfactorError as exc:
        return _fail(exc, EXIT_PRECONDITION)
    try:
        with open(args.file) as fh:
            blocks = factorization_from_json(json.load(fh))
        for b in blocks:
            g.check_set(b)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        return _fail(exc, EXIT_IO)
    verify = verify_factorization if args.plain else verify_complete_factorization
    report = verify(g, blocks)
    _emit(report.to_json())
    if not report.passed:
        print("factorization check failed", file=sys.stderr)
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_search(args) -> int:
    try:
        g = parse_group_spec(args.group)
        problem = SearchProblem(
            g,
            tuple(args.sizes),
            mode=args.mode,
            node_budget=args.budget_nodes,
            time_budget=args.budget_secs if args.budget_secs > 0 else None,
            canonicalize=args.canonicalize,
        )
    except OSError as exc:
        return _fail(exc, EXIT_IO)
    except NilfactorError as exc:
        return _fail(exc, EXIT_PRECONDITION)
    outcome = search_complete_factorization(problem, threads=args.threads)
    _emit(outcome.to_json())
    return {
        Status.FOUND: EXIT_OK,
        Status.EXHAUSTED: EXIT_NEGATIVE,
        Status.BUDGET_EXCEEDED: EXIT_BUDGET,
    }[outcome.status]


def cmd_examples(args) -> int:
    build = {"z2n": z2n_example, "z10n": z10n_example}[args.which]
    try:
        g, fact = build(args.n)
    except NilfactorError as exc:
        return _fail(exc, EXIT_PRECONDITION)
    report = verify_complete_factorization(g, fact.blocks)
    doc = fact.to_json()
    doc["verified"] = report.passed
    _emit(doc)
    return EXIT_OK if report.passed else EXIT_NEGATIVE


def cmd_probe(args) -> int:
    sys.stdout.write(probe_report(max_order=args.max_order, node_budget=args.budget_nodes,
                                  min_parts=args.min_parts))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nilfactor",
        description="Complete factorizations of finite groups: construct, verify, search.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a complete factorization of a nilpotent group")
    p.add_argument("--group", required=True, help="group spec, e.g. 'elem-abelian:2^4'")
    p.add_argument("--sizes", required=True, type=_sizes, help="block sizes, e.g. 2,2,2,2")
    p.add_argument("--output", help="also write the factorization JSON here")
    p.add_argument("--no-trace", action="store_true", help="omit the construction trace")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a factorization JSON file")
    p.add_argument("--group", required=True)
    p.add_argument("file")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--complete", action="store_true", help="require disjoint blocks (default)")
    mode.add_argument("--plain", action="store_true", help="only require unique products")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="exhaustive search for a complete factorization")
    p.add_argument("--group", required=True)
    p.add_argument("--sizes", required=True, type=_sizes)
    p.add_argument("--mode", choices=["first", "count", "exists"], default="exists")
    p.add_argument("--budget-nodes", type=int, default=DEFAULT_NODE_BUDGET)
    p.add_argument("--budget-secs", type=float, default=DEFAULT_TIME_BUDGET,
                   help="wall-clock budget; 0 disables it")
    p.add_argument("--threads", type=int, default=1)
    canon = p.add_mutually_exclusive_group()
    canon.add_argument("--canonicalize", dest="canonicalize", action="store_true", default=None)
    canon.add_argument("--no-canonicalize", dest="canonicalize", action="store_false")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("examples", help="rebuild the Z_2^n or Z_(10^n) worked example")
    p.add_argument("which", choices=["z2n", "z10n"])
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_examples)

    p = sub.add_parser("probe", help="search report for small supersolvable non-nilpotent groups")
    p.add_argument("--max-order", type=int, default=24)
    p.add_argument("--budget-nodes", type=int, default=PROBE_NODE_BUDGET)
    p.add_argument("--min-parts", type=int, default=2)
    p.set_defaults(func=cmd_probe)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
