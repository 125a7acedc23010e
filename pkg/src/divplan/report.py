"""End-to-end orchestration of one diverse-planning run and its JSON report."""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .dimensions import (
    GOAL_ORDER,
    UTILITY,
    BehaviourSpace,
    DimensionError,
    behaviour_count,
    build_behaviour_space,
    goal_order_label,
    value_to_json,
)
from .features import FeatureConfig, FeatureConfigError, parse_addinfo
from .grounding import GroundingLimitError, GroundTask, ground
from .metrics import maxsum
from .pddl import PDDLError, parse_domain, parse_problem
from .plan import plan_from_json, plan_to_json
from .planner import Budget, BudgetExhausted, SolverConfig, Status, compute_cost_bound, fbi_k, find_optimal_length, naive
from .validate import compute_utility, validate_plan

DEFAULT_K = 5
MAX_GOAL_ORDER_AXIS = 4


class InputError(ValueError):
    """Unreadable or invalid input files or options."""


@dataclass
class RunConfig:
    domain: Path
    problem: Path
    features: Path | None = None
    k: int | None = None
    quality: Fraction | None = None
    cost_bound: int | None = None
    timeout: float | None = None
    memory: int | None = None
    seed: int | None = None
    output: Path | None = None
    naive: bool = False
    length: int | None = None
    max_horizon: int = 100
    backend: str = "smtlib"
    unbounded: bool = False  # k = infinity

    def __post_init__(self):
        if self.k is not None and self.k < 1:
            raise InputError("k must be >= 1")
        if self.quality is not None and self.cost_bound is not None:
            raise InputError("give either a quality factor or a cost bound, not both")
        if self.quality is not None and Fraction(self.quality) <= 0:
            raise InputError("quality factor must be positive")


@dataclass
class DiversityReport:
    status: Status
    task: str = ""
    domain: str = ""
    k: int | None = None
    quality: Fraction | None = None
    cost_bound: int | None = None
    optimal_length: int | None = None
    plans: list[dict] = field(default_factory=list)
    bc: int = 0
    dimensions: list[dict] = field(default_factory=list)
    metrics: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    naive: bool = False
    message: str = ""

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "task": self.task,
            "domain": self.domain,
            "mode": "naive" if self.naive else "fbi",
            "k": self.k,
            "quality": None if self.quality is None else float(self.quality),
            "cost_bound": self.cost_bound,
            "optimal_length": self.optimal_length,
            "bc": self.bc,
            "dimensions": self.dimensions,
            "plans": self.plans,
            "metrics": self.metrics,
            "timings": {k: round(v, 4) for k, v in self.timings.items()},
            "message": self.message,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False)

    @classmethod
    def from_json(cls, data: dict) -> "DiversityReport":
        return cls(
            status=Status(data["status"]),
            task=data.get("task", ""),
            domain=data.get("domain", ""),
            k=data.get("k"),
            quality=None if data.get("quality") is None else Fraction(str(data["quality"])),
            cost_bound=data.get("cost_bound"),
            optimal_length=data.get("optimal_length"),
            plans=data.get("plans", []),
            bc=data.get("bc", 0),
            dimensions=data.get("dimensions", []),
            metrics=data.get("metrics", {}),
            timings=data.get("timings", {}),
            naive=data.get("mode") == "naive",
            message=data.get("message", ""),
        )


def goal_short_names(task: GroundTask, goals) -> dict[int, str]:
    """Compact goal labels: predicate names with their shared prefix and suffix removed, when unambiguous."""
    preds = [task.atoms[g].name for g in goals]
    if len(set(preds)) != len(preds) or len(preds) < 2:
        return {g: str(task.atoms[g]) for g in goals}
    pre = len(_common_prefix(preds))
    suf = len(_common_prefix([p[::-1] for p in preds]))
    short = [p[pre : len(p) - suf] if len(p) - suf > pre else p for p in preds]
    if len(set(short)) != len(short) or not all(short):
        short = preds
    return dict(zip(goals, short))


def _common_prefix(words: list[str]) -> str:
    out = []
    for chars in zip(*words):
        if len(set(chars)) != 1:
            break
        out.append(chars[0])
    return "".join(out)


def dimension_info(space: BehaviourSpace, c: int) -> list[dict]:
    """Per-dimension metadata for reports: kind, label, and the axis values when listable."""
    task = space.task
    info = []
    for dim in space.dimensions:
        entry: dict = {"kind": dim.kind, "label": dim.label}
        if dim.kind == GOAL_ORDER:
            names = goal_short_names(task, dim.goals)
            entry["goals"] = [names[g] for g in dim.goals]
            if len(dim.goals) <= MAX_GOAL_ORDER_AXIS:
                entry["domain"] = ["-".join(names[g] for g in perm) for perm in itertools.permutations(dim.goals)]
            else:
                entry["domain"] = None
        elif dim.kind == UTILITY:
            entry["domain"] = [value_to_json(dim, task, v) for v in dim.domain()] if len(dim.goals) <= 12 else None
        else:
            entry["domain"] = dim.domain(c)
        info.append(entry)
    return info


def cell_labels(space: BehaviourSpace, behaviour) -> list[str]:
    labels = []
    for dim, value in zip(space.dimensions, behaviour):
        if dim.kind == GOAL_ORDER:
            names = goal_short_names(space.task, dim.goals)
            labels.append(goal_order_label(dim, space.task, value, short=lambda a, n=names, t=space.task: n[t.atom_index(a)]))
        else:
            labels.append(str(value_to_json(dim, space.task, value)))
    return labels


def load_inputs(cfg: RunConfig) -> tuple[GroundTask, FeatureConfig]:
    try:
        features = parse_addinfo(Path(cfg.features).read_text()) if cfg.features else FeatureConfig()
        dom = parse_domain(Path(cfg.domain).read_text())
        prob = parse_problem(Path(cfg.problem).read_text(), dom, features)
        task = ground(dom, prob)
    except (OSError, PDDLError, FeatureConfigError, GroundingLimitError) as e:
        raise InputError(str(e)) from e
    return task, features


def run_solve(cfg: RunConfig) -> DiversityReport:
    """Parse, ground, bound the cost, generate diverse plans, and validate them.

    Budget breaches produce a partial report with status ``budget``.
    """
    timings: dict[str, float] = {}
    t0 = time.monotonic()
    task, features = load_inputs(cfg)
    timings["ground"] = time.monotonic() - t0
    k = None if cfg.unbounded else (cfg.k or features.k or DEFAULT_K)
    c = cfg.cost_bound if cfg.cost_bound is not None else (None if cfg.quality is not None else features.cost_bound)
    q = None if c is not None else Fraction(cfg.quality if cfg.quality is not None else (features.quality_q or 1))
    report = DiversityReport(Status.ERROR, task=task.name, domain=task.domain_name, k=k, quality=q, naive=cfg.naive)
    try:
        space = build_behaviour_space(features, task)
    except DimensionError as e:
        raise InputError(str(e)) from e
    budget = Budget(cfg.timeout)
    solver = SolverConfig(backend=cfg.backend, seed=cfg.seed, memory_mb=cfg.memory)

    length = cfg.length
    if c is None and length is None:
        t1 = time.monotonic()
        try:
            length = find_optimal_length(task, cfg.max_horizon, budget, solver)
        except BudgetExhausted as e:
            report.status, report.message = Status.BUDGET, f"optimal-length search: {e}"
            return report
        finally:
            timings["length_search"] = time.monotonic() - t1
            report.timings = timings
        if length is None:
            report.status, report.message = Status.EXHAUSTED, f"no plan within {cfg.max_horizon} steps"
            return report
    report.optimal_length = length
    if c is None:
        c = compute_cost_bound(q, length)
    report.cost_bound = c
    report.dimensions = dimension_info(space, c)

    t2 = time.monotonic()
    run = naive if cfg.naive else fbi_k
    psi = run(task, space, k, c, budget, solver)
    timings["generation"] = time.monotonic() - t2
    behaviour_phase = [e.elapsed for e in psi.entries if e.phase == "behaviour"]
    if behaviour_phase:
        timings["behaviour_phase"] = behaviour_phase[-1] - (timings.get("length_search") or 0)

    for i, entry in enumerate(psi.entries):
        trace = validate_plan(task, entry.actions, cost_bound=c)
        record = {
            "id": f"P{i + 1}",
            "phase": entry.phase,
            "cost": len(entry.actions),
            "actions": plan_to_json(entry.actions),
            "behaviour": None
            if entry.behaviour is None
            else [value_to_json(d, task, v) for d, v in zip(space.dimensions, entry.behaviour)],
            "cell": None if entry.behaviour is None else cell_labels(space, entry.behaviour),
        }
        if task.utilities:
            u = compute_utility(task, trace)
            record["utility"] = int(u) if u.denominator == 1 else float(u)
        report.plans.append(record)
    report.bc = psi.bc
    report.metrics = {"maxsum_stability": float(maxsum(psi.plans)), "plans": len(psi)}
    report.status = psi.status
    report.timings = timings
    if psi.status is Status.BUDGET:
        report.message = "budget exhausted during generation"
    return report


def recompute_bc(report: DiversityReport, task: GroundTask, space: BehaviourSpace) -> int:
    """Behaviour count recomputed from the report's own plans."""
    plans = [plan_from_json(task, p["actions"]) for p in report.plans]
    return behaviour_count(space, plans)
