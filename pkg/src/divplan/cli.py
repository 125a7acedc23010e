"""Command-line entry point: ``divplan {solve,validate,oracle,bench,grid}``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .bench import run_bench, to_csv
from .grid import GridError, render_grid
from .oracle import OracleLimitError, oracle_enumerate
from .plan import GoalNotReachedError, InapplicableActionError, plan_from_json, plan_to_json
from .planner import Status
from .report import DiversityReport, InputError, RunConfig, load_inputs, run_solve
from .smt.session import SolverError
from .validate import CostBoundError, validate_plan

EXIT = {Status.SOLVED: 0, Status.EXHAUSTED: 2, Status.BUDGET: 3, Status.ERROR: 5}
EXIT_INVALID_PLAN = 1
EXIT_INPUT = 4


def _k(text: str):
    if text.lower() in ("inf", "infinity", "all"):
        return "inf"
    k = int(text)
    if k < 1:
        raise argparse.ArgumentTypeError("k must be >= 1")
    return k


def _positive_fraction(text: str) -> Fraction:
    try:
        q = Fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text}") from None
    if q <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return q


def _emit(text: str, output: Path | None) -> None:
    if output:
        Path(output).write_text(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _budget_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--timeout", type=float, metavar="SECS", help="wall-clock budget for the whole run")
    p.add_argument("--memory", type=int, metavar="MB", help="address-space cap for the solver process")
    p.add_argument("--seed", type=int, metavar="N", help="solver random seed")


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors, not "exhausted" (argparse's default exit 2)
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="divplan", description="Diverse planning over behaviour spaces.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="generate a diverse plan set")
    s.add_argument("domain", type=Path)
    s.add_argument("problem", type=Path)
    s.add_argument("--features", type=Path, metavar="FILE")
    s.add_argument("--k", type=_k, help="number of plans, or 'inf'")
    bound = s.add_mutually_exclusive_group()
    bound.add_argument("--quality", type=_positive_fraction, metavar="Q", help="cost bound = round(Q * optimal length)")
    bound.add_argument("--cost-bound", type=int, metavar="C")
    s.add_argument("--length", type=int, metavar="L", help="known optimal length; skips the horizon search")
    s.add_argument("--max-horizon", type=int, default=100)
    s.add_argument("--naive", action="store_true", help="plain plan forbidding with no behaviour constraints")
    s.add_argument("--backend", choices=("smtlib", "mock"), default="smtlib")
    s.add_argument("--output", type=Path, metavar="FILE")
    _budget_args(s)

    v = sub.add_parser("validate", help="check plans by simulation")
    v.add_argument("domain", type=Path)
    v.add_argument("problem", type=Path)
    v.add_argument("plans", type=Path, help="plan JSON, a list of plans, or a solve report")
    v.add_argument("--features", type=Path, metavar="FILE")
    v.add_argument("--cost-bound", type=int, metavar="C")

    o = sub.add_parser("oracle", help="enumerate every plan up to a horizon by brute force")
    o.add_argument("domain", type=Path)
    o.add_argument("problem", type=Path)
    o.add_argument("--horizon", type=int, required=True)
    o.add_argument("--cost-bound", type=int, metavar="C")
    o.add_argument("--features", type=Path, metavar="FILE")
    o.add_argument("--node-cap", type=int, default=200_000)
    o.add_argument("--output", type=Path, metavar="FILE")

    b = sub.add_parser("bench", help="compare fbi and the naive baseline over a suite")
    b.add_argument("suite", type=Path)
    b.add_argument("--k", type=_k, nargs="+", default=[5, 10])
    b.add_argument("--quality", type=_positive_fraction, nargs="+", default=[Fraction(1)], metavar="Q")
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--output", type=Path, metavar="FILE", help="per-task rows as CSV")
    _budget_args(b)

    g = sub.add_parser("grid", help="render a report's behaviours on two dimensions as CSV")
    g.add_argument("report", type=Path)
    g.add_argument("--dims", type=int, nargs=2, default=[0, 1], metavar=("ROW", "COL"))
    g.add_argument("--output", type=Path, metavar="FILE")
    return ap


def _cmd_solve(a) -> int:
    cfg = RunConfig(
        a.domain, a.problem, a.features,
        k=None if a.k == "inf" else a.k, quality=a.quality, cost_bound=a.cost_bound,
        timeout=a.timeout, memory=a.memory, seed=a.seed, output=a.output, naive=a.naive,
        length=a.length, max_horizon=a.max_horizon, backend=a.backend, unbounded=a.k == "inf",
    )
    report = run_solve(cfg)
    _emit(report.dumps(), a.output)
    print(f"{report.status.value}: {len(report.plans)} plans, BC={report.bc}", file=sys.stderr)
    return EXIT[report.status]


def _plans_in(data) -> list:
    if isinstance(data, dict) and "plans" in data:
        return [p["actions"] if isinstance(p, dict) else p for p in data["plans"]]
    if isinstance(data, list) and data and isinstance(data[0], list):
        return data
    return [data]


def _cmd_validate(a) -> int:
    task, _ = load_inputs(RunConfig(a.domain, a.problem, a.features))
    try:
        plans = _plans_in(json.loads(a.plans.read_text()))
        ground_plans = [plan_from_json(task, p) for p in plans]
    except (OSError, ValueError, KeyError, TypeError) as e:
        raise InputError(f"bad plan file: {e}") from e
    bad = 0
    for i, plan in enumerate(ground_plans):
        try:
            validate_plan(task, plan, a.cost_bound)
            print(f"plan {i + 1}: valid ({len(plan)} actions)")
        except (InapplicableActionError, GoalNotReachedError, CostBoundError) as e:
            bad += 1
            print(f"plan {i + 1}: invalid: {e}")
    return EXIT_INVALID_PLAN if bad else 0


def _cmd_oracle(a) -> int:
    task, _ = load_inputs(RunConfig(a.domain, a.problem, a.features))
    try:
        plans = oracle_enumerate(task, a.horizon, a.cost_bound, a.node_cap)
    except OracleLimitError as e:
        print(str(e), file=sys.stderr)
        return EXIT[Status.BUDGET]
    _emit(json.dumps([plan_to_json(p) for p in plans], indent=1), a.output)
    print(f"{len(plans)} plans", file=sys.stderr)
    return 0 if plans else EXIT[Status.EXHAUSTED]


def _cmd_bench(a) -> int:
    ks = [None if k == "inf" else k for k in a.k]
    rows, agg = run_bench(a.suite, ks, a.quality, a.timeout, a.memory, a.seed, a.workers)
    if a.output:
        a.output.write_text(to_csv(rows))
    sys.stdout.write(to_csv(agg))
    return 0


def _cmd_grid(a) -> int:
    try:
        report = DiversityReport.from_json(json.loads(a.report.read_text()))
        _emit(render_grid(report, tuple(a.dims)), a.output)
    except (OSError, ValueError, KeyError, GridError) as e:
        raise InputError(str(e)) from e
    return 0


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:  # usage errors and --help
        return e.code
    handler = {
        "solve": _cmd_solve,
        "validate": _cmd_validate,
        "oracle": _cmd_oracle,
        "bench": _cmd_bench,
        "grid": _cmd_grid,
    }[args.command]
    try:
        return handler(args)
    except InputError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except SolverError as e:
        print(f"solver error: {e}", file=sys.stderr)
        return EXIT[Status.ERROR]


if __name__ == "__main__":
    sys.exit(main())
