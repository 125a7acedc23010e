"""Desk-scale benchmark: FBI against the plan-forbidding baseline over a task suite."""

from __future__ import annotations

import csv
import io
import json
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .planner import Budget, BudgetExhausted, SolverConfig, Status, find_optimal_length
from .report import InputError, RunConfig, load_inputs, run_solve

MODES = ("fbi", "naive")


@dataclass(frozen=True)
class SuiteTask:
    name: str
    domain: Path
    problem: Path
    features: Path | None


def load_suite(path: Path) -> list[SuiteTask]:
    """A suite is a JSON file (or a directory of them) listing tasks.

    Each entry has ``domain``, ``problem`` and optionally ``features`` and
    ``name``; relative paths resolve against the file's directory.
    """
    path = Path(path)
    files = sorted(path.glob("*.json")) if path.is_dir() else [path]
    tasks = []
    for f in files:
        data = json.loads(f.read_text())
        entries = data["tasks"] if isinstance(data, dict) and "tasks" in data else data
        if isinstance(entries, dict):
            entries = [entries]
        for i, e in enumerate(entries):
            base = f.parent
            feats = e.get("features")
            tasks.append(
                SuiteTask(
                    e.get("name") or f"{f.stem}-{i}",
                    base / e["domain"],
                    base / e["problem"],
                    None if feats is None else base / feats,
                )
            )
    return tasks


def _run_one(args) -> list[dict]:
    task, ks, qs, timeout, memory, seed, backend = args
    rows = []
    try:
        ground_task, _ = load_inputs(RunConfig(task.domain, task.problem, task.features))
        length = find_optimal_length(ground_task, budget=Budget(timeout), solver=SolverConfig(backend, seed, memory))
    except (InputError, BudgetExhausted) as e:
        status = Status.ERROR if isinstance(e, InputError) else Status.BUDGET
        return [_row(task, m, k, q, status, message=str(e)) for m in MODES for k in ks for q in qs]
    for q in qs:
        for k in ks:
            for mode in MODES:
                if length is None:
                    rows.append(_row(task, mode, k, q, Status.EXHAUSTED, message="unsolvable"))
                    continue
                cfg = RunConfig(
                    task.domain, task.problem, task.features, k=k, quality=q, timeout=timeout,
                    memory=memory, seed=seed, naive=mode == "naive", length=length, backend=backend,
                )
                try:
                    rep = run_solve(cfg)
                except Exception as e:  # one task failing must not sink the suite
                    rows.append(_row(task, mode, k, q, Status.ERROR, message=f"{type(e).__name__}: {e}"))
                    traceback.print_exc()
                    continue
                rows.append(_row(task, mode, k, q, rep.status, len(rep.plans), rep.bc, length, rep.cost_bound,
                                 rep.timings.get("generation", 0.0)))
    return rows


def _row(task, mode, k, q, status, plans=0, bc=0, length=None, c=None, seconds=0.0, message=""):
    return {
        "task": task.name,
        "mode": mode,
        "k": k,
        "q": str(q),
        "status": status.value,
        "plans": plans,
        "bc": bc,
        "l": "" if length is None else length,
        "c": "" if c is None else c,
        "seconds": round(seconds, 3),
        "message": message,
    }


def covered(row: dict) -> bool:
    return row["status"] in (Status.SOLVED.value, Status.EXHAUSTED.value) and row["plans"] > 0


def run_bench(
    suite: list[SuiteTask] | Path,
    ks=(5, 10),
    qs=(Fraction(1),),
    timeout: float | None = 60,
    memory: int | None = None,
    seed: int | None = None,
    workers: int = 1,
    backend: str = "smtlib",
) -> tuple[list[dict], list[dict]]:
    """Run both planner modes on every task; return per-task rows and aggregates.

    Aggregates give coverage and summed BC per (mode, k, q).
    """
    tasks = load_suite(suite) if isinstance(suite, (str, Path)) else list(suite)
    jobs = [(t, tuple(ks), tuple(qs), timeout, memory, seed, backend) for t in tasks]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]
    rows = [r for rs in results for r in rs]
    agg: dict[tuple, dict] = {}
    for r in rows:
        key = (r["mode"], r["k"], r["q"])
        a = agg.setdefault(key, {"mode": r["mode"], "k": r["k"], "q": r["q"], "coverage": 0, "bc": 0, "tasks": 0})
        a["tasks"] += 1
        if covered(r):
            a["coverage"] += 1
            a["bc"] += r["bc"]
    return rows, [agg[k] for k in sorted(agg, key=lambda t: (t[2], t[1], t[0]))]


def to_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    out = io.StringIO()
    w = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return out.getvalue()
