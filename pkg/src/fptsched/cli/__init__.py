"""Command-line interface: ``fptsched solve|verify|gen|bench|oracle``.

Exit codes: 0 solved / feasible / verified, 1 infeasible / verification
failed, 2 input error.
"""
from __future__ import annotations

import argparse
import sys

from ..oracle import BudgetExceededError, DEFAULT_BUDGET
from . import generate
from .bench import run_bench
from .commands import (
    EXIT_INPUT,
    EXIT_OK,
    SOLVE_KINDS,
    oracle_document,
    solve_document,
    verify_document,
)
from .documents import dumps, instance_doc, load


def _int_csv(text):
    return [int(v) for v in text.split(",")] if text else None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fptsched", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance document")
    p.add_argument("kind", choices=sorted(SOLVE_KINDS))
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.add_argument("--pivot", type=int, help="try only this pivot size (partition)")
    p.add_argument("--trace", action="store_true", help="include greedy phase records")

    p = sub.add_parser("verify", help="check an instance document with an assignment")
    p.add_argument("input")
    p.add_argument("-o", "--output")

    p = sub.add_parser("gen", help="generate an instance document")
    p.add_argument("kind", choices=["feasible-partition", "uniform-random"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--pmax", type=int, default=5)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--smax", type=int, default=3)
    p.add_argument("--sizes", help="comma-separated distinct sizes (overrides --d/--pmax)")
    p.add_argument("--counts", help="comma-separated multiplicities (overrides --n)")
    p.add_argument("-o", "--output")

    p = sub.add_parser("bench", help="solve every instance in a directory")
    p.add_argument("corpus")
    p.add_argument("--repetitions", type=int, default=1)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("-o", "--output")

    p = sub.add_parser("oracle", help="solve by exhaustive search")
    p.add_argument("kind", choices=sorted(SOLVE_KINDS))
    p.add_argument("input")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("-o", "--output")
    return parser


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "solve":
            code, doc = solve_document(args.kind, load(args.input), pivot=args.pivot, trace=args.trace)
            _emit(dumps(doc), args.output)
            return code
        if args.command == "verify":
            code, doc = verify_document(load(args.input))
            _emit(dumps(doc), args.output)
            return code
        if args.command == "oracle":
            code, doc = oracle_document(args.kind, load(args.input), args.budget)
            _emit(dumps(doc), args.output)
            return code
        if args.command == "gen":
            sizes, counts = _int_csv(args.sizes), _int_csv(args.counts)
            common = dict(seed=args.seed, d=args.d, p_max=args.pmax, m=args.m, n=args.n,
                          sizes=sizes, counts=counts)
            if args.kind == "feasible-partition":
                inst = generate.feasible_partition(**common)
            else:
                inst = generate.uniform_random(s_max=args.smax, **common)
            _emit(dumps(instance_doc(inst)), args.output)
            return EXIT_OK
        if args.command == "bench":
            _emit(run_bench(args.corpus, args.repetitions, args.format), args.output)
            return EXIT_OK
    except ValueError as exc:  # DocumentError, InvalidInstanceError, bad --pivot
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceededError as exc:
        print(f"error: {exc} (raise --budget)", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_INPUT

