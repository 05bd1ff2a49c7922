"""``gks`` command-line interface.

Exit codes: 0 success/PASS, 1 verification failure, 2 usage error,
3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .block import structural_verify_block
from .code_table import load_table, serialize_table, verify_table
from .compose import exponent, theorem2
from .errors import BudgetExceeded, DescriptorError, DomainError, TableError, TableFormatError
from .game import FloodStrategy, Sampled, verify_augmented, verify_exhaustive
from .report import VerificationReport
from .search import Found, SearchProblem, Timeout, search_table, search_table_parallel
from .simulate import interactive_play, load_verified_table, simulate_batch

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def _emit(report: VerificationReport, as_json: bool) -> int:
    print(report.to_json() if as_json else report.to_text())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_verify(args) -> int:
    try:
        table = load_table(args.table)
    except (OSError, TableFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    report = VerificationReport("verify")
    report.merge(verify_table(table))
    report.merge(structural_verify_block(table))
    return _emit(report, args.json)


def cmd_selftest(args) -> int:
    report = VerificationReport(f"selftest[{args.level}]")
    max_flood = 8 if args.level == "full" else 6
    for n in range(1, max_flood + 1):
        report.merge(verify_exhaustive(FloodStrategy(n)))
    report.merge(verify_augmented(FloodStrategy(5), "exhaustive"))
    table = load_verified_table(None)
    report.merge(structural_verify_block(table, 10_000 if args.level == "full" else 1_000))
    samples = 1000 if args.level == "full" else 100
    report.merge(verify_augmented(theorem2(table), Sampled(samples, 0)))
    return _emit(report, args.json)


def cmd_simulate(args) -> int:
    report = simulate_batch(args.strategy, args.adversary, args.trials, args.seed)
    print(report.to_json() if args.json else report.to_text())
    return EXIT_OK if report.wins == report.games else EXIT_FAIL


def cmd_play(args) -> int:
    result = interactive_play(args.strategy, sys.stdin, sys.stdout, args.record)
    if result is None:
        return EXIT_USAGE
    return EXIT_OK if result.win else EXIT_FAIL


def cmd_search(args) -> int:
    problem = SearchProblem(args.m, args.u, seed=args.seed, budget_ms=args.budget_ms)
    outcome = search_table_parallel(problem) if args.parallel else search_table(problem)
    summary = outcome.summary()
    if isinstance(outcome, Found) and args.out:
        with open(args.out, "w") as fh:
            fh.write(serialize_table(outcome.table))
        summary["out"] = args.out
    print(json.dumps(summary, indent=2))
    if isinstance(outcome, Found) and not args.out:
        print(serialize_table(outcome.table), end="")
    return EXIT_BUDGET if isinstance(outcome, Timeout) else EXIT_OK


def cmd_exponent(args) -> int:
    print(f"{exponent(args.k, args.n):#.10g}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gks", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify a UCODE table and the block protocol over it")
    p.add_argument("--table", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("selftest", help="exhaustive and structural self checks")
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_selftest)

    p = sub.add_parser("simulate", help="batch games against an adversary")
    p.add_argument("--strategy", required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--adversary", choices=("random", "sweep"), default="random")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("play", help="play Merlin interactively")
    p.add_argument("--strategy", required=True)
    p.add_argument("--record", metavar="FILE")
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("search", help="search for an underlined-codeword table")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--budget-ms", type=float, required=True)
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--parallel", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("exponent", help="print ln K / ln N")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_exponent)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (DescriptorError, DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
