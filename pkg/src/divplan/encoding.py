"""Sequential planning-as-satisfiability encoding with explanatory frame axioms.

Each step selects at most one action; a step may be empty, in which case the
frame axioms carry the state forward. Empty steps are only allowed at the end
of the horizon, so every action sequence of length <= n has exactly one
satisfying step assignment. The goal is asserted at the final step.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .grounding import GroundTask, LinExpr, LinearCondition
from .plan import InapplicableActionError, StateTrace, simulate
from .smt.session import SolverModel, SolverSession
from .smt.terms import (
    FALSE,
    REAL,
    And,
    Bool,
    Eq,
    Ge,
    Gt,
    Implies,
    Iff,
    Le,
    Lt,
    Not,
    Or,
    Real,
    RealVal,
    Scale,
    Sum,
    Term,
)

DEFAULT_HORIZON_CAP = 500


class EncodingError(RuntimeError):
    """A model contradicts the encoding's own invariants (an encoding bug)."""


class HorizonError(ValueError):
    pass


@dataclass
class EncodedTask:
    task: GroundTask
    n: int
    session: SolverSession
    cost_bound: int
    dimensions: list = field(default_factory=list)  # (Dimension, handle)
    forbidden_behaviours: list = field(default_factory=list)
    forbidden_plans: list = field(default_factory=list)

    def action(self, a: int, i: int) -> Term:
        return Bool(f"a{a}_{i}")

    def atom(self, p: int, i: int) -> Term:
        return Bool(f"p{p}_{i}")

    def fluent(self, f: int, i: int) -> Term:
        return Real(f"f{f}_{i}")

    def step_used(self, i: int) -> Term:
        """True iff some action is selected at step ``i``."""
        return Bool(f"w_{i}")

    def linear(self, e: LinExpr, i: int) -> Term:
        parts = [Scale(c, self.fluent(f, i)) for f, c in e.terms]
        if e.const != 0 or not parts:
            parts.append(RealVal(e.const))
        return Sum(parts, REAL)

    def condition(self, c: LinearCondition, i: int) -> Term:
        lhs = self.linear(c.expr, i)
        zero = RealVal(0)
        return {"<": Lt, "<=": Le, "=": Eq, ">=": Ge, ">": Gt}[c.comparator](lhs, zero)


def at_most_one(xs: list[Term], prefix: str) -> list[Term]:
    """Sequential-counter encoding; ``s_j`` means some of ``xs[0..j]`` is true."""
    if len(xs) <= 4:
        return [Not(And(a, b)) for k, a in enumerate(xs) for b in xs[k + 1 :]]
    out = []
    s = [Bool(f"{prefix}_{j}") for j in range(len(xs) - 1)]
    out.append(Implies(xs[0], s[0]))
    for j in range(1, len(xs) - 1):
        out.append(Implies(xs[j], s[j]))
        out.append(Implies(s[j - 1], s[j]))
        out.append(Implies(xs[j], Not(s[j - 1])))
    out.append(Implies(xs[-1], Not(s[-1])))
    return out


def encode_task(
    task: GroundTask,
    n: int,
    session: SolverSession,
    cost_bound: int | None = None,
    exact_length: bool = False,
    horizon_cap: int = DEFAULT_HORIZON_CAP,
) -> EncodedTask:
    """Assert the ``n``-step formula for ``task`` into ``session``.

    With ``exact_length`` every step must select an action, so a model is a
    plan of length exactly ``n``.
    """
    if n < 0:
        raise HorizonError("horizon must be >= 0")
    if n > horizon_cap:
        raise HorizonError(f"horizon {n} exceeds cap {horizon_cap}")
    c = n if cost_bound is None else cost_bound
    if c > n:
        raise HorizonError(f"cost bound {c} exceeds horizon {n}")
    enc = EncodedTask(task, n, session, c)
    add = session.add
    atoms = range(len(task.atoms))

    add(*(enc.atom(p, 0) if p in task.init else Not(enc.atom(p, 0)) for p in atoms))
    add(*(Eq(enc.fluent(f, 0), RealVal(v)) for f, v in enumerate(task.fluent_init)))

    adders: dict[int, list[int]] = {p: [] for p in atoms}
    deleters: dict[int, list[int]] = {p: [] for p in atoms}
    updaters: dict[int, list[int]] = {f: [] for f in range(len(task.fluents))}
    for a in task.actions:
        for p in a.add:
            adders[p].append(a.id)
        for p in a.delete:
            deleters[p].append(a.id)
        for u in a.num_eff:
            updaters[u.fluent].append(a.id)

    for i in range(n):
        acts = [enc.action(a.id, i) for a in task.actions]
        add(*at_most_one(acts, f"amo{i}"))
        add(Iff(enc.step_used(i), Or(*acts)))
        if i + 1 < n:
            add(Implies(enc.step_used(i + 1), enc.step_used(i)))
        for a in task.actions:
            x = enc.action(a.id, i)
            pre = [enc.atom(p, i) for p in sorted(a.pre_pos)]
            pre += [Not(enc.atom(p, i)) for p in sorted(a.pre_neg)]
            pre += [enc.condition(cond, i) for cond in a.num_pre]
            eff = [enc.atom(p, i + 1) for p in sorted(a.add)]
            eff += [Not(enc.atom(p, i + 1)) for p in sorted(a.delete)]
            eff += [Eq(enc.fluent(u.fluent, i + 1), enc.linear(u.value, i)) for u in a.num_eff]
            if pre or eff:
                add(Implies(x, And(*pre, *eff)))
        for p in atoms:
            now, nxt = enc.atom(p, i), enc.atom(p, i + 1)
            add(Implies(And(nxt, Not(now)), Or(*(enc.action(a, i) for a in adders[p]))))
            add(Implies(And(now, Not(nxt)), Or(*(enc.action(a, i) for a in deleters[p]))))
        for f, ups in updaters.items():
            add(Or(Eq(enc.fluent(f, i + 1), enc.fluent(f, i)), *(enc.action(a, i) for a in ups)))
    if exact_length and n > 0:
        add(enc.step_used(n - 1))
    if not task.soft_goals:
        add(*(enc.atom(g, n) for g in task.goal))
        add(*(enc.condition(cond, n) for cond in task.goal_numeric))
    return enc


def forbid_plan(enc: EncodedTask, plan) -> None:
    """Exclude exactly this step assignment: ``plan`` followed by empty steps."""
    if len(plan) > enc.n:
        return
    parts = [enc.action(a.id, i) for i, a in enumerate(plan)]
    if len(plan) < enc.n:
        parts.append(Not(enc.step_used(len(plan))))
    enc.session.add(Not(And(*parts)) if parts else FALSE)
    enc.forbidden_plans.append(tuple(plan))


def extract_plan(model: SolverModel, enc: EncodedTask) -> tuple:
    """The selected actions in step order, skipping empty steps."""
    plan = []
    task = enc.task
    for i in range(enc.n):
        chosen = [a for a in task.actions if model.get(enc.action(a.id, i).name)]
        if len(chosen) > 1:
            raise EncodingError(f"step {i} selects {len(chosen)} actions: {[a.name for a in chosen]}")
        plan.extend(chosen)
    return tuple(plan)


def read_trace(model: SolverModel, enc: EncodedTask) -> StateTrace:
    task = enc.task
    atoms, values = [], []
    for i in range(enc.n + 1):
        atoms.append(frozenset(p for p in range(len(task.atoms)) if model.get(enc.atom(p, i).name)))
        values.append(tuple(Fraction(model.get(enc.fluent(f, i).name, 0)) for f in range(len(task.fluents))))
    return StateTrace(tuple(atoms), tuple(values))


def reconstruct_trace(model: SolverModel, enc: EncodedTask) -> StateTrace:
    """Read the state trace from the model and cross-check it by simulation."""
    trace = read_trace(model, enc)
    plan = extract_plan(model, enc)
    try:
        expected = simulate(enc.task, plan).padded(enc.n)
    except InapplicableActionError as e:
        raise EncodingError(f"model selects an inapplicable action: {e}") from None
    if trace != expected:
        for i, (got, want) in enumerate(zip(trace.atoms, expected.atoms)):
            if got != want or trace.fluents[i] != expected.fluents[i]:
                raise EncodingError(f"model state at step {i} disagrees with simulation")
        raise EncodingError("model trace disagrees with simulation")
    return trace

