"""Behaviour dimensions: construction, formula encoding, and value extraction.

Every dimension has three faces that must agree: a finite value domain, an
extraction function computing the value of a plan from its state trace, and
solver variables whose model value is the same number.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .encoding import EncodedTask
from .features import DimensionSpec, FeatureConfig
from .grounding import GroundTask
from .pddl import parse_ground_atom
from .plan import StateTrace, simulate
from .smt.terms import (
    INT,
    REAL,
    And,
    Bool,
    Eq,
    Ge,
    Iff,
    Implies,
    Int,
    IntVal,
    Ite,
    Le,
    Lt,
    Not,
    Or,
    Real,
    RealVal,
    Sum,
    Term,
)

COST, RESOURCE, GOAL_ORDER, UTILITY, NUMERIC = (
    "cost_bound",
    "resource_utilisation",
    "goal_order",
    "utility_value",
    "numeric_fluent",
)


class DimensionError(ValueError):
    pass


class OutOfRangeError(DimensionError):
    pass


@dataclass(frozen=True)
class Dimension:
    kind: str
    index: int
    spec: DimensionSpec
    resources: tuple[str, ...] = ()
    fluent: int | None = None
    goals: tuple[int, ...] = ()
    utilities: dict[int, Fraction] = field(default_factory=dict)

    @property
    def label(self) -> str:
        if self.kind == NUMERIC:
            return f"{NUMERIC}:{self.spec.fluent}"
        return self.kind

    @property
    def box_count(self) -> int:
        return self.spec.box_count

    def domain(self, n: int | None = None):
        """The value domain, materialised when finite and small enough to list."""
        if self.kind == COST:
            if n is None:
                raise DimensionError("cost domain needs the horizon")
            return list(range(n + 1))
        if self.kind == RESOURCE:
            return list(range(len(self.resources) + 1))
        if self.kind == NUMERIC:
            return list(range(self.box_count))
        if self.kind == UTILITY:
            vals = {sum((self.utilities[g] for g in h), Fraction(0)) for r in range(len(self.goals) + 1)
                    for h in itertools.combinations(self.goals, r)}
            return sorted(vals)
        raise DimensionError("goal-order domain is not materialised")


@dataclass(frozen=True)
class BehaviourSpace:
    task: GroundTask
    dimensions: tuple[Dimension, ...] = ()

    def __len__(self) -> int:
        return len(self.dimensions)

    def __iter__(self):
        return iter(self.dimensions)


# ---------------------------------------------------------------- construction


def _resolve_fluent(task: GroundTask, name: str) -> int:
    name = name.strip().lower()
    for i, f in enumerate(task.fluents):
        if name in (str(f), "_".join((f.name,) + f.args), " ".join((f.name,) + f.args)):
            return i
    raise DimensionError(f"no numeric fluent {name!r} in task (static fluents are compiled away)")


def build_behaviour_space(cfg: FeatureConfig, task: GroundTask) -> BehaviourSpace:
    """Resolve the configured dimensions against ``task`` in configuration order."""
    dims = []
    table = cfg.utility_table()
    for idx, spec in enumerate(cfg.dimensions):
        if spec.kind == COST:
            dims.append(Dimension(COST, idx, spec))
        elif spec.kind == RESOURCE:
            for r in spec.resources:
                if r.lower() not in task.objects:
                    raise DimensionError(f"resource {r!r} is not an object of the problem")
            dims.append(Dimension(RESOURCE, idx, spec, resources=tuple(r.lower() for r in spec.resources)))
        elif spec.kind == GOAL_ORDER:
            dims.append(Dimension(GOAL_ORDER, idx, spec, goals=tuple(task.goal)))
        elif spec.kind == UTILITY:
            utils: dict[int, Fraction] = {g: Fraction(0) for g in task.goal}
            source = spec.utilities or table
            if source:
                for key, value in source.items():
                    atom = parse_ground_atom(key)
                    try:
                        g = task.atom_index(atom)
                    except KeyError:
                        g = None
                    if g is None or g not in task.goal:
                        raise DimensionError(f"utility for non-goal atom {key}")
                    utils[g] = value
            elif task.utilities:
                utils.update(task.utilities)
            else:
                raise DimensionError("utility dimension needs a utility table")
            dims.append(Dimension(UTILITY, idx, spec, goals=tuple(task.goal), utilities=utils))
        elif spec.kind == NUMERIC:
            if not task.fluents:
                raise DimensionError(f"numeric_fluent dimension on a task without numeric fluents ({task.mode.value})")
            dims.append(Dimension(NUMERIC, idx, spec, fluent=_resolve_fluent(task, spec.fluent)))
        else:
            raise DimensionError(f"unknown dimension kind {spec.kind!r}")
    return BehaviourSpace(task, tuple(dims))


# -------------------------------------------------------------------- encoding


def _ind(b: Term) -> Term:
    return Ite(b, IntVal(1), IntVal(0))


def encode_dimension(dim: Dimension, enc: EncodedTask) -> list[Term]:
    """Append the dimension's constraints to ``enc`` and return its value variables."""
    task, n, add = enc.task, enc.n, enc.session.add
    tag = f"d{dim.index}"
    if dim.kind == COST:
        cvalue = Int(f"{tag}_cvalue")
        add(Eq(cvalue, Sum([_ind(enc.step_used(i)) for i in range(n)], INT)))
        add(Le(cvalue, IntVal(enc.cost_bound)))
        return [cvalue]
    if dim.kind == RESOURCE:
        used = []
        for r in dim.resources:
            u = Bool(f"{tag}_used_{r}")
            acts = [enc.action(a.id, i) for a in task.actions if r in a.args for i in range(n)]
            add(Iff(u, Or(*acts)))
            used.append(u)
        ru = Int(f"{tag}_ru")
        add(Eq(ru, Sum([_ind(u) for u in used], INT)))
        return [ru]
    if dim.kind == GOAL_ORDER:
        pstep = {}
        for g in dim.goals:
            ps = Int(f"{tag}_pstep_{g}")
            pstep[g] = ps
            for i in range(n + 1):
                first = And(enc.atom(g, i), *(Not(enc.atom(g, j)) for j in range(i)))
                add(Iff(Eq(ps, IntVal(i)), first))
            add(Iff(Eq(ps, IntVal(-1)), And(*(Not(enc.atom(g, j)) for j in range(n + 1)))))
            add(Ge(ps, IntVal(-1)), Le(ps, IntVal(n)))
        order = []
        for a, b in itertools.permutations(dim.goals, 2):
            to = Bool(f"{tag}_to_{a}_{b}")
            add(Iff(to, Le(pstep[a], pstep[b])))
            order.append(to)
        return order
    if dim.kind == UTILITY:
        uv = Real(f"{tag}_uv")
        terms = [Ite(enc.atom(g, n), RealVal(dim.utilities[g]), RealVal(0)) for g in dim.goals]
        add(Eq(uv, Sum(terms, REAL)))
        return [uv]
    if dim.kind == NUMERIC:
        if not task.fluents:
            raise DimensionError("numeric_fluent dimension on a task without numeric fluents")
        spec = dim.spec
        box = Int(f"{tag}_box")
        var = enc.fluent(dim.fluent, n)
        count = dim.box_count
        add(Ge(var, RealVal(spec.min)), Le(var, RealVal(spec.max)))
        add(Ge(box, IntVal(0)), Le(box, IntVal(count - 1)))
        for i in range(count):
            lo = spec.min + i * spec.epsilon
            hi = spec.min + (i + 1) * spec.epsilon
            upper = Le(var, RealVal(spec.max)) if i == count - 1 else Lt(var, RealVal(hi))
            add(Implies(And(Ge(var, RealVal(lo)), upper), Eq(box, IntVal(i))))
        return [box]
    raise DimensionError(f"unknown dimension kind {dim.kind!r}")


def encode_space(space: BehaviourSpace, enc: EncodedTask) -> None:
    for dim in space.dimensions:
        enc.dimensions.append((dim, encode_dimension(dim, enc)))


# ------------------------------------------------------------------ extraction


def first_achievement(trace: StateTrace, g: int) -> int:
    for i, atoms in enumerate(trace.atoms):
        if g in atoms:
            return i
    return -1


def order_matrix(steps: list[int]) -> tuple[tuple[bool, ...], ...]:
    return tuple(tuple(a <= b for b in steps) for a in steps)


def extract_dimension_value(dim: Dimension, plan, trace: StateTrace):
    """Compute the dimension's value for ``plan`` from its simulated ``trace``."""
    if dim.kind == COST:
        return len(plan)
    if dim.kind == RESOURCE:
        return sum(1 for r in dim.resources if any(r in a.args for a in plan))
    if dim.kind == GOAL_ORDER:
        return order_matrix([first_achievement(trace, g) for g in dim.goals])
    if dim.kind == UTILITY:
        final = trace.final_atoms
        return sum((dim.utilities[g] for g in dim.goals if g in final), Fraction(0))
    if dim.kind == NUMERIC:
        return box_index(dim.spec, trace.final_fluents[dim.fluent])
    raise DimensionError(f"unknown dimension kind {dim.kind!r}")


def box_index(spec: DimensionSpec, value: Fraction) -> int:
    if value < spec.min or value > spec.max:
        raise OutOfRangeError(f"{spec.fluent} = {value} outside [{spec.min}, {spec.max}]")
    return min(int((value - spec.min) // spec.epsilon), spec.box_count - 1)


def read_dimension_value(dim: Dimension, handle: list[Term], model):
    """The value a solver model assigns to the dimension's variables."""
    if dim.kind == GOAL_ORDER:
        goals = dim.goals
        pairs = dict(zip(itertools.permutations(range(len(goals)), 2), handle))
        return tuple(
            tuple(True if a == b else bool(model[pairs[a, b]]) for b in range(len(goals))) for a in range(len(goals))
        )
    value = model[handle[0]]
    return Fraction(value) if dim.kind == UTILITY else int(value)


def plan_behaviour(space: BehaviourSpace, plan, trace: StateTrace | None = None) -> tuple:
    if trace is None:
        trace = simulate(space.task, plan)
    return tuple(extract_dimension_value(d, plan, trace) for d in space.dimensions)


def behaviour_or_none(space: BehaviourSpace, plan, trace: StateTrace | None = None) -> tuple | None:
    """Like :func:`plan_behaviour`, but ``None`` for plans outside a numeric dimension's range."""
    try:
        return plan_behaviour(space, plan, trace)
    except OutOfRangeError:
        return None


def model_behaviour(enc: EncodedTask, model) -> tuple:
    return tuple(read_dimension_value(d, h, model) for d, h in enc.dimensions)


def behaviour_term(enc: EncodedTask, behaviour: tuple) -> Term:
    """Conjunction pinning every dimension variable to the behaviour's value."""
    parts = []
    for (dim, handle), value in zip(enc.dimensions, behaviour):
        if dim.kind == GOAL_ORDER:
            idx = {(a, b): k for k, (a, b) in enumerate(itertools.permutations(range(len(dim.goals)), 2))}
            for (a, b), k in idx.items():
                parts.append(handle[k] if value[a][b] else Not(handle[k]))
        elif dim.kind == UTILITY:
            parts.append(Eq(handle[0], RealVal(value)))
        else:
            parts.append(Eq(handle[0], IntVal(value)))
    return And(*parts)


def forbid_behaviour(enc: EncodedTask, behaviour: tuple) -> None:
    if len(behaviour) != len(enc.dimensions):
        raise DimensionError("behaviour arity does not match the encoded dimensions")
    enc.session.add(Not(behaviour_term(enc, behaviour)))
    enc.forbidden_behaviours.append(behaviour)


def behaviour_count(space: BehaviourSpace, plans) -> int:
    """Distinct behaviours among ``plans``; plans without a behaviour do not count."""
    return len({b for p in plans if (b := behaviour_or_none(space, p)) is not None})


# --------------------------------------------------------------- serialisation


def goal_order_pairs(dim: Dimension, task: GroundTask, matrix) -> list[str]:
    names = [str(task.atoms[g]) for g in dim.goals]
    return sorted(f"{names[a]}≤{names[b]}" for a in range(len(names)) for b in range(len(names)) if a != b and matrix[a][b])


def goal_order_label(dim: Dimension, task: GroundTask, matrix, short=None) -> str:
    """Human-readable order, e.g. ``R-I-S``; simultaneous goals are joined by ``=``."""
    names = [short(task.atoms[g]) if short else str(task.atoms[g]) for g in dim.goals]
    k = len(names)
    rank = [sum(1 for b in range(k) if matrix[b][a] and not matrix[a][b]) for a in range(k)]
    groups: dict[int, list[str]] = {}
    for a in range(k):
        groups.setdefault(rank[a], []).append(names[a])
    return "-".join("=".join(sorted(groups[r])) for r in sorted(groups))


def value_to_json(dim: Dimension, task: GroundTask, value):
    if dim.kind == GOAL_ORDER:
        return goal_order_pairs(dim, task, value)
    if dim.kind == UTILITY:
        v = Fraction(value)
        return int(v) if v.denominator == 1 else float(v)
    return int(value)


def behaviour_to_json(space: BehaviourSpace, behaviour: tuple) -> list:
    return [value_to_json(d, space.task, v) for d, v in zip(space.dimensions, behaviour)]
