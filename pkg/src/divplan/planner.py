"""Horizon search, cost bounds, and the behaviour-forbidding generation loops."""

from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .dimensions import (
    BehaviourSpace,
    behaviour_or_none,
    encode_space,
    forbid_behaviour,
    model_behaviour,
    plan_behaviour,
)
from .encoding import EncodedTask, EncodingError, encode_task, extract_plan, forbid_plan, reconstruct_trace
from .grounding import GroundTask, reachable_atoms
from .pddl import Mode
from .smt.session import CheckResult, SolverSession, open_session


class Status(str, enum.Enum):
    SOLVED = "solved"
    EXHAUSTED = "exhausted"
    BUDGET = "budget"
    ERROR = "error"


class BudgetExhausted(RuntimeError):
    pass


class Budget:
    """A wall-clock allowance shared by every solver call of one run."""

    def __init__(self, seconds: float | None = None):
        self.seconds = seconds
        self.start = time.monotonic()

    def remaining(self) -> float | None:
        if self.seconds is None:
            return None
        return max(0.0, self.seconds - (time.monotonic() - self.start))

    def expired(self) -> bool:
        r = self.remaining()
        return r is not None and r <= 0

    def elapsed(self) -> float:
        return time.monotonic() - self.start


@dataclass
class SolverConfig:
    backend: str = "smtlib"
    seed: int | None = None
    memory_mb: int | None = None
    binary: str | None = None

    def open(self) -> SolverSession:
        kw: dict = {"seed": self.seed}
        if self.backend == "smtlib":
            kw["memory_mb"] = self.memory_mb
            if self.binary:
                kw["binary"] = self.binary
        return open_session(self.backend, **kw)


def _check(session: SolverSession, budget: Budget | None) -> CheckResult:
    if budget is not None and budget.expired():
        return CheckResult.UNKNOWN
    return session.check(None if budget is None else budget.remaining())


# ------------------------------------------------------------------ horizon


def find_optimal_length(
    task: GroundTask,
    max_horizon: int = 100,
    budget: Budget | None = None,
    solver: SolverConfig | None = None,
) -> int | None:
    """Least ``n`` such that a plan of exactly ``n`` actions exists.

    Returns ``None`` when every horizon up to ``max_horizon`` is unsatisfiable
    and raises :class:`BudgetExhausted` when a check comes back unknown.
    """
    solver = solver or SolverConfig()
    if task.soft_goals:
        task = replace(task, mode=Mode.CLASSICAL)
    if not set(task.goal) <= reachable_atoms(task):
        return None
    for n in range(max_horizon + 1):
        with solver.open() as s:
            encode_task(task, n, s, exact_length=True)
            r = _check(s, budget)
        if r is CheckResult.SAT:
            return n
        if r is CheckResult.UNKNOWN:
            raise BudgetExhausted(f"unknown at horizon {n}")
    return None


def compute_cost_bound(q, length: int) -> int:
    """``round(q * length)`` with halves rounded away from zero."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError("quality factor must be positive")
    return math.floor(q * length + Fraction(1, 2))


# ----------------------------------------------------------------- plan sets


BEHAVIOUR_PHASE = "behaviour"
PLAN_PHASE = "plan"


@dataclass
class PlanEntry:
    actions: tuple
    behaviour: tuple | None
    phase: str
    elapsed: float


@dataclass
class PlanSet:
    entries: list[PlanEntry] = field(default_factory=list)
    status: Status = Status.EXHAUSTED
    reason: str = ""

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def plans(self) -> list[tuple]:
        return [e.actions for e in self.entries]

    @property
    def behaviours(self) -> list[tuple]:
        return [e.behaviour for e in self.entries]

    @property
    def bc(self) -> int:
        # plans whose numeric values fall outside a configured range carry no behaviour
        return len({e.behaviour for e in self.entries if e.behaviour is not None})

    def behaviour_phase(self) -> list[PlanEntry]:
        return [e for e in self.entries if e.phase == BEHAVIOUR_PHASE]


@dataclass
class Outcome:
    """Result of a generator call: a plan, or ``None`` with the reason."""

    plan: tuple | None
    behaviour: tuple | None = None
    status: Status = Status.SOLVED


def open_diverse_encoding(
    task: GroundTask, space: BehaviourSpace | None, c: int, solver: SolverConfig
) -> EncodedTask:
    """Fresh session holding the horizon-``c`` formula, plus the behaviour variables when ``space`` is given."""
    session = solver.open()
    enc = encode_task(task, c, session, cost_bound=c)
    if space is not None:
        encode_space(space, enc)
    return enc


def behaviour_generator(
    task: GroundTask, space: BehaviourSpace, psi: PlanSet, enc: EncodedTask, budget: Budget | None = None
) -> Outcome:
    """One new plan whose behaviour is not yet in ``psi``; its behaviour is then forbidden."""
    for b in dict.fromkeys(psi.behaviours):
        if b not in enc.forbidden_behaviours:
            forbid_behaviour(enc, b)
    r = _check(enc.session, budget)
    if r is CheckResult.UNSAT:
        return Outcome(None, status=Status.EXHAUSTED)
    if r is CheckResult.UNKNOWN:
        return Outcome(None, status=Status.BUDGET)
    model = enc.session.model()
    plan = extract_plan(model, enc)
    trace = reconstruct_trace(model, enc)
    b = model_behaviour(enc, model)
    if b != plan_behaviour(space, plan, trace):
        raise EncodingError(f"model behaviour {b} disagrees with extraction {plan_behaviour(space, plan, trace)}")
    forbid_behaviour(enc, b)
    return Outcome(plan, b)


def plan_generator(task: GroundTask, psi: PlanSet, enc: EncodedTask, budget: Budget | None = None) -> Outcome:
    """One plan not in ``psi``, found in a session without behaviour constraints."""
    for p in psi.plans:
        if p not in enc.forbidden_plans:
            forbid_plan(enc, p)
    r = _check(enc.session, budget)
    if r is CheckResult.UNSAT:
        return Outcome(None, status=Status.EXHAUSTED)
    if r is CheckResult.UNKNOWN:
        return Outcome(None, status=Status.BUDGET)
    model = enc.session.model()
    plan = extract_plan(model, enc)
    reconstruct_trace(model, enc)
    forbid_plan(enc, plan)
    return Outcome(plan)


def _finish(psi: PlanSet, k: int | None, status: Status) -> PlanSet:
    if k is not None and len(psi) >= k:
        psi.status = Status.SOLVED
    else:
        psi.status = status
    return psi


def fbi(
    task: GroundTask,
    space: BehaviourSpace,
    k: int | None,
    c: int,
    budget: Budget | None = None,
    solver: SolverConfig | None = None,
) -> PlanSet:
    """Collect plans with pairwise-distinct behaviours until ``k`` or exhaustion.

    ``k=None`` runs until the behaviour space is exhausted.
    """
    if k is not None and k < 1:
        raise ValueError("k must be >= 1")
    solver = solver or SolverConfig()
    budget = budget or Budget()
    psi = PlanSet()
    enc = open_diverse_encoding(task, space, c, solver)
    try:
        while k is None or len(psi) < k:
            out = behaviour_generator(task, space, psi, enc, budget)
            if out.plan is None:
                return _finish(psi, k, out.status)
            psi.entries.append(PlanEntry(out.plan, out.behaviour, BEHAVIOUR_PHASE, budget.elapsed()))
    finally:
        enc.session.close()
    return _finish(psi, k, Status.SOLVED)


def fbi_k(
    task: GroundTask,
    space: BehaviourSpace,
    k: int | None,
    c: int,
    budget: Budget | None = None,
    solver: SolverConfig | None = None,
) -> PlanSet:
    """:func:`fbi`, then plain plan forbidding to top the set up to ``k`` plans."""
    solver = solver or SolverConfig()
    budget = budget or Budget()
    psi = fbi(task, space, k, c, budget, solver)
    if psi.status is not Status.EXHAUSTED:
        return psi
    enc = open_diverse_encoding(task, None, c, solver)
    try:
        while k is None or len(psi) < k:
            out = plan_generator(task, psi, enc, budget)
            if out.plan is None:
                return _finish(psi, k, out.status)
            b = behaviour_or_none(space, out.plan)
            psi.entries.append(PlanEntry(out.plan, b, PLAN_PHASE, budget.elapsed()))
    finally:
        enc.session.close()
    return _finish(psi, k, Status.SOLVED)


def naive(task, space, k, c, budget=None, solver=None) -> PlanSet:
    """Pure plan forbidding; behaviours are still measured in ``space``."""
    psi = fbi_k(task, BehaviourSpace(task, ()), k, c, budget, solver)
    for e in psi.entries:
        e.behaviour = behaviour_or_none(space, e.actions)
    return psi


__all__ = [
    "Budget",
    "BudgetExhausted",
    "Outcome",
    "PlanEntry",
    "PlanSet",
    "SolverConfig",
    "Status",
    "behaviour_generator",
    "compute_cost_bound",
    "fbi",
    "fbi_k",
    "find_optimal_length",
    "naive",
    "plan_generator",
]
