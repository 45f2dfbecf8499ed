"""Command line entry point: ``homobent {experiment,verify,enumerate}``."""

from __future__ import annotations

import argparse
import itertools
import sys
from pathlib import Path

from . import harness
from .boolfun import ParseError

SCENARIO_DEFAULTS = {
    1: {"encoding": ["ga", "gp"], "fitness": ["fit1"]},
    2: {"encoding": ["ga", "gar", "gp"], "fitness": ["fit2", "fit3", "fit4"]},
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="homobent", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    exp = sub.add_parser("experiment", help="run a grid of EA configurations")
    exp.add_argument("--scenario", type=int, choices=(1, 2), default=2)
    exp.add_argument("--n", type=int, nargs="+", default=[6])
    exp.add_argument("--d", type=int, nargs="+", default=[2, 3])
    exp.add_argument("--encoding", nargs="+", choices=("ga", "gar", "gp"))
    exp.add_argument("--fitness", nargs="+", choices=("fit1", "fit2", "fit3", "fit4"))
    exp.add_argument("--runs", type=int, default=10)
    exp.add_argument("--seed", type=int, default=0)
    exp.add_argument("--evaluations", type=int, default=100_000)
    exp.add_argument("--population", type=int, default=500)
    exp.add_argument("--out", type=Path, default=Path("results"))
    exp.add_argument("--jobs", type=int, default=1)

    ver = sub.add_parser("verify", help="report the properties of one function")
    ver.add_argument("function", help="hex truth table, ANF ('x1*x2 + x3') or expression ('XOR(x1,x2)')")
    ver.add_argument("--format", choices=("auto", "hex", "anf", "expr"), default="auto")
    ver.add_argument("--n", type=int, help="variable count for ANF/expression input")

    enum = sub.add_parser("enumerate", help="census of all degree-d homogeneous ANFs")
    enum.add_argument("n", type=int)
    enum.add_argument("d", type=int)
    return parser


def cmd_experiment(args) -> int:
    defaults = SCENARIO_DEFAULTS[args.scenario]
    spec = harness.ExperimentSpec(
        scenario=args.scenario,
        grid=tuple(itertools.product(args.n, args.d)),
        encodings=tuple(args.encoding or defaults["encoding"]),
        fitnesses=tuple(args.fitness or defaults["fitness"]),
        runs=args.runs,
        seed=args.seed,
        out=args.out,
        evaluations=args.evaluations,
        population=args.population,
    )
    spec.cells()

    def progress(cell):
        print(f"n={cell.n} d={cell.d} {cell.encoding}/{cell.fitness}: "
              f"{cell.successes}/{len(cell.records)}", file=sys.stderr, flush=True)

    results = harness.run_experiment(spec, jobs=args.jobs, progress=progress)
    try:
        harness.write_results(results, args.out)
    except OSError as exc:
        print(f"error: cannot write results to {exc.filename or args.out}: {exc.strerror}", file=sys.stderr)
        return 1
    print(harness.format_table(results))
    return 0


def cmd_verify(args) -> int:
    try:
        tt = harness.parse_function(args.function, args.format, args.n)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    print("\n".join(harness.verify(tt).lines()))
    return 0


def cmd_enumerate(args) -> int:
    print("\n".join(harness.enumerate_restricted(args.n, args.d).lines()))
    return 0


COMMANDS = {"experiment": cmd_experiment, "verify": cmd_verify, "enumerate": cmd_enumerate}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
