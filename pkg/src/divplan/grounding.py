"""Grounding of a parsed domain/problem pair into a propositional task."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .pddl import (
    Atom,
    DomainModel,
    Mode,
    NumExpr,
    NumericCondition,
    PDDLSemanticError,
    ProblemModel,
    UnsupportedFeatureError,
    format_number,
)

DEFAULT_ACTION_CAP = 200_000


class GroundingLimitError(RuntimeError):
    """Raised when grounding would exceed the configured action cap."""


@dataclass(frozen=True)
class LinExpr:
    """``const + sum(coeff * fluent)`` over fluent indices."""

    terms: tuple[tuple[int, Fraction], ...] = ()
    const: Fraction = Fraction(0)

    def evaluate(self, values) -> Fraction:
        return self.const + sum((c * values[f] for f, c in self.terms), Fraction(0))

    def fluents(self) -> set[int]:
        return {f for f, _ in self.terms}

    def is_constant(self) -> bool:
        return not self.terms


def _lin_add(a: LinExpr, b: LinExpr, sign: int = 1) -> LinExpr:
    coeffs = dict(a.terms)
    for f, c in b.terms:
        coeffs[f] = coeffs.get(f, Fraction(0)) + sign * c
    return LinExpr(tuple(sorted((f, c) for f, c in coeffs.items() if c != 0)), a.const + sign * b.const)


def _lin_scale(a: LinExpr, k: Fraction) -> LinExpr:
    if k == 0:
        return LinExpr()
    return LinExpr(tuple((f, c * k) for f, c in a.terms), a.const * k)


def compare(comparator: str, value: Fraction) -> bool:
    """Evaluate ``value <comparator> 0``."""
    return {
        "<": value < 0,
        "<=": value <= 0,
        "=": value == 0,
        ">=": value >= 0,
        ">": value > 0,
    }[comparator]


@dataclass(frozen=True)
class LinearCondition:
    """``expr <comparator> 0``."""

    comparator: str
    expr: LinExpr

    def holds(self, values) -> bool:
        return compare(self.comparator, self.expr.evaluate(values))


@dataclass(frozen=True)
class LinearUpdate:
    """The fluent's value after the action, as a function of the state before it."""

    fluent: int
    value: LinExpr


@dataclass(frozen=True)
class GroundAction:
    id: int
    schema: str
    args: tuple[str, ...]
    pre_pos: frozenset[int] = frozenset()
    pre_neg: frozenset[int] = frozenset()
    add: frozenset[int] = frozenset()
    delete: frozenset[int] = frozenset()
    num_pre: tuple[LinearCondition, ...] = ()
    num_eff: tuple[LinearUpdate, ...] = ()

    @property
    def name(self) -> str:
        return "(" + " ".join((self.schema,) + self.args) + ")"

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class GroundTask:
    name: str
    atoms: tuple[Atom, ...]
    actions: tuple[GroundAction, ...]
    fluents: tuple[Atom, ...]
    fluent_init: tuple[Fraction, ...]
    init: frozenset[int]
    goal: tuple[int, ...]
    goal_numeric: tuple[LinearCondition, ...] = ()
    mode: Mode = Mode.CLASSICAL
    utilities: dict[int, Fraction] = field(default_factory=dict)
    objects: dict[str, str] = field(default_factory=dict)
    domain_name: str = ""

    def atom_index(self, atom: Atom) -> int:
        return self._atom_lookup()[atom]

    def fluent_index(self, fluent: Atom) -> int:
        return self.fluents.index(fluent)

    def _atom_lookup(self) -> dict[Atom, int]:
        cache = self.__dict__.get("_lookup")
        if cache is None:
            cache = {a: i for i, a in enumerate(self.atoms)}
            object.__setattr__(self, "_lookup", cache)
        return cache

    def action_by_name(self, name: str) -> GroundAction:
        for a in self.actions:
            if a.name == name:
                return a
        raise KeyError(name)

    @property
    def soft_goals(self) -> bool:
        return self.mode is Mode.OSP


# ------------------------------------------------------------------ linearise


def linearize(expr: NumExpr, fluent_index: dict[Atom, int], statics: dict[Atom, Fraction]) -> LinExpr:
    if isinstance(expr, Atom):
        if expr in statics:
            return LinExpr((), statics[expr])
        if expr not in fluent_index:
            raise PDDLSemanticError(f"fluent {expr} has no initial value")
        return LinExpr(((fluent_index[expr], Fraction(1)),), Fraction(0))
    if isinstance(expr, tuple):
        op, *args = expr
        parts = [linearize(a, fluent_index, statics) for a in args]
        if op == "-" and len(parts) == 1:
            return _lin_scale(parts[0], Fraction(-1))
        if op == "+":
            out = parts[0]
            for p in parts[1:]:
                out = _lin_add(out, p)
            return out
        if op == "-":
            return _lin_add(parts[0], parts[1], -1)
        if op == "*":
            out = parts[0]
            for p in parts[1:]:
                if p.is_constant():
                    out = _lin_scale(out, p.const)
                elif out.is_constant():
                    out = _lin_scale(p, out.const)
                else:
                    raise UnsupportedFeatureError("non-linear numeric expression")
            return out
        if op == "/":
            if not parts[1].is_constant() or parts[1].const == 0:
                raise UnsupportedFeatureError("division by a non-constant")
            return _lin_scale(parts[0], 1 / parts[1].const)
        raise UnsupportedFeatureError(op)
    return LinExpr((), Fraction(expr))


def _linear_condition(c: NumericCondition, fidx, statics) -> LinearCondition:
    return LinearCondition(c.comparator, _lin_add(linearize(c.lhs, fidx, statics), linearize(c.rhs, fidx, statics), -1))


# -------------------------------------------------------------------- grounding


def _objects_of_type(dom: DomainModel, prob: ProblemModel, typ: str) -> list[str]:
    return sorted(o for o, t in prob.objects.items() if dom.is_subtype(t, typ))


def _static_predicates(dom: DomainModel) -> set[str]:
    changed = {a.name for s in dom.schemas for a in s.add + s.delete}
    return set(dom.predicates) - changed


def _static_fluents(dom: DomainModel) -> set[str]:
    changed = {e.fluent.name for s in dom.schemas for e in s.num_eff}
    return set(dom.fluents) - changed


def _bindings(schema, dom, prob, static_preds, init_atoms):
    """Type-consistent parameter bindings satisfying the static preconditions."""
    params = [p for p, _ in schema.parameters]
    domains = [_objects_of_type(dom, prob, t) for _, t in schema.parameters]
    pos_checks: dict[int, list[Atom]] = {}
    neg_checks: dict[int, list[Atom]] = {}
    for atoms, checks in ((schema.pos_pre, pos_checks), (schema.neg_pre, neg_checks)):
        for a in atoms:
            if a.name not in static_preds:
                continue
            last = max((params.index(x) for x in a.args if x in params), default=-1)
            checks.setdefault(last, []).append(a)

    def ok(depth, binding):
        for a in pos_checks.get(depth, ()):
            if a.substitute(binding) not in init_atoms:
                return False
        for a in neg_checks.get(depth, ()):
            if a.substitute(binding) in init_atoms:
                return False
        return True

    if not ok(-1, {}):
        return

    def rec(depth, binding):
        if depth == len(params):
            yield tuple(binding[p] for p in params)
            return
        for obj in domains[depth]:
            binding[params[depth]] = obj
            if ok(depth, binding):
                yield from rec(depth + 1, binding)
        binding.pop(params[depth], None)

    yield from rec(0, {})


def _relaxed_fixpoint(init: set, actions) -> tuple[set, list]:
    """Delete-relaxed reachability ignoring negative and numeric preconditions."""
    reached = set(init)
    fired = [False] * len(actions)
    changed = True
    while changed:
        changed = False
        for i, (pre, add) in enumerate(actions):
            if not fired[i] and pre <= reached:
                fired[i] = True
                if not add <= reached:
                    reached |= add
                changed = True
    return reached, fired


def ground(
    dom: DomainModel,
    prob: ProblemModel,
    prune: bool = True,
    max_actions: int = DEFAULT_ACTION_CAP,
) -> GroundTask:
    """Instantiate every schema over the problem's objects.

    Static predicates and fluents are compiled away. With ``prune`` the
    actions whose (relaxed) preconditions are unreachable are dropped.
    """
    static_preds = _static_predicates(dom)
    static_fl = _static_fluents(dom)
    statics = {f: v for f, v in prob.init_fluents.items() if f.name in static_fl}
    dyn_fluents = sorted(f for f in prob.init_fluents if f.name not in static_fl)
    fidx = {f: i for i, f in enumerate(dyn_fluents)}

    raw = []  # (schema, args, pos, neg, add, del, numpre, numeff)
    for schema in sorted(dom.schemas, key=lambda s: s.name):
        params = [p for p, _ in schema.parameters]
        for args in _bindings(schema, dom, prob, static_preds, prob.init_atoms):
            b = dict(zip(params, args))
            num_pre = []
            feasible = True
            for c in schema.num_pre:
                lc = _linear_condition(
                    NumericCondition(c.comparator, _subst(c.lhs, b), _subst(c.rhs, b)), fidx, statics
                )
                if lc.expr.is_constant():
                    if not compare(lc.comparator, lc.expr.const):
                        feasible = False
                        break
                    continue
                num_pre.append(lc)
            if not feasible:
                continue
            num_eff = []
            for e in schema.num_eff:
                target = e.fluent.substitute(b)
                if target not in fidx:
                    raise PDDLSemanticError(f"fluent {target} has no initial value")
                rhs = linearize(_subst(e.expr, b), fidx, statics)
                cur = LinExpr(((fidx[target], Fraction(1)),))
                value = {"assign": rhs, "increase": _lin_add(cur, rhs), "decrease": _lin_add(cur, rhs, -1)}[e.kind]
                num_eff.append(LinearUpdate(fidx[target], value))
            if len({u.fluent for u in num_eff}) != len(num_eff):
                raise UnsupportedFeatureError(f"two updates of one fluent in {schema.name}{args}")
            pos = frozenset(a.substitute(b) for a in schema.pos_pre if a.name not in static_preds)
            neg = frozenset(a.substitute(b) for a in schema.neg_pre if a.name not in static_preds)
            add = frozenset(a.substitute(b) for a in schema.add)
            dele = frozenset(a.substitute(b) for a in schema.delete) - add
            if pos & neg:
                continue
            raw.append((schema.name, args, pos, neg, add, dele, tuple(num_pre), tuple(num_eff)))
            if len(raw) > max_actions:
                raise GroundingLimitError(f"grounding exceeds {max_actions} actions")

    init_dyn = {a for a in prob.init_atoms if a.name not in static_preds}
    goal_atoms = []
    for g in prob.goal:
        if g.name in static_preds and g in prob.init_atoms:
            continue
        goal_atoms.append(g)

    if prune:
        _, fired = _relaxed_fixpoint(init_dyn, [(r[2], r[4]) for r in raw])
        raw = [r for r, f in zip(raw, fired) if f]

    atom_set = set(init_dyn) | set(goal_atoms)
    for r in raw:
        atom_set |= r[2] | r[3] | r[4] | r[5]
    atoms = tuple(sorted(atom_set))
    aidx = {a: i for i, a in enumerate(atoms)}

    actions = tuple(
        GroundAction(
            i,
            r[0],
            r[1],
            frozenset(aidx[a] for a in r[2]),
            frozenset(aidx[a] for a in r[3]),
            frozenset(aidx[a] for a in r[4]),
            frozenset(aidx[a] for a in r[5]),
            r[6],
            r[7],
        )
        for i, r in enumerate(raw)
    )
    goal_num = []
    for c in prob.goal_numeric:
        lc = _linear_condition(c, fidx, statics)
        goal_num.append(lc)
    utilities = {aidx[g]: u for g, u in prob.utilities.items() if g in aidx}
    if prob.mode is Mode.OSP:
        for g in goal_atoms:
            utilities.setdefault(aidx[g], Fraction(0))
    return GroundTask(
        name=prob.name,
        atoms=atoms,
        actions=actions,
        fluents=tuple(dyn_fluents),
        fluent_init=tuple(prob.init_fluents[f] for f in dyn_fluents),
        init=frozenset(aidx[a] for a in init_dyn),
        goal=tuple(aidx[g] for g in goal_atoms),
        goal_numeric=tuple(goal_num),
        mode=prob.mode,
        utilities=utilities,
        objects=dict(prob.objects),
        domain_name=dom.name,
    )


def _subst(expr: NumExpr, binding: dict[str, str]) -> NumExpr:
    if isinstance(expr, Atom):
        return expr.substitute(binding)
    if isinstance(expr, tuple):
        return (expr[0], *(_subst(e, binding) for e in expr[1:]))
    return expr


def reachable_atoms(task: GroundTask) -> frozenset[int]:
    """Atoms true in some state of the delete relaxation from the initial state.

    Numeric and negative preconditions are treated as satisfiable, so the
    result over-approximates every reachable state.
    """
    reached, _ = _relaxed_fixpoint(set(task.init), [(a.pre_pos, a.add) for a in task.actions])
    return frozenset(reached)


def relevant_actions(task: GroundTask) -> list[GroundAction]:
    reached = reachable_atoms(task)
    return [a for a in task.actions if a.pre_pos <= reached]


def dump_task(task: GroundTask) -> str:
    """Line-oriented text dump; one atom, fluent or action per line."""

    def names(ids):
        return " ".join(str(task.atoms[i]) for i in sorted(ids))

    def lin(e: LinExpr):
        parts = [f"{format_number(c)}*{task.fluents[f]}" for f, c in e.terms]
        return " + ".join(parts + [format_number(e.const)])

    lines = [f"task {task.name} mode={task.mode.value}"]
    lines += [f"atom {i} {a}" + (" init" if i in task.init else "") for i, a in enumerate(task.atoms)]
    lines += [f"fluent {i} {f} = {format_number(v)}" for i, (f, v) in enumerate(zip(task.fluents, task.fluent_init))]
    for a in task.actions:
        s = f"action {a.id} {a.name} pre[{names(a.pre_pos)}] not[{names(a.pre_neg)}]"
        s += f" add[{names(a.add)}] del[{names(a.delete)}]"
        s += "".join(f" num[{lin(c.expr)} {c.comparator} 0]" for c in a.num_pre)
        s += "".join(f" set[{task.fluents[u.fluent]} := {lin(u.value)}]" for u in a.num_eff)
        lines.append(s)
    lines.append("goal " + names(task.goal))
    return "\n".join(lines) + "\n"
