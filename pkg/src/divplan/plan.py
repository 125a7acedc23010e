"""Plans, state traces and the reference semantics of a ground task."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .grounding import GroundAction, GroundTask

Plan = tuple  # tuple[GroundAction, ...]


@dataclass(frozen=True)
class StateTrace:
    """States ``0..n``: true atoms and fluent values at each step."""

    atoms: tuple[frozenset[int], ...]
    fluents: tuple[tuple[Fraction, ...], ...]

    def __len__(self) -> int:
        return len(self.atoms)

    @property
    def final_atoms(self) -> frozenset[int]:
        return self.atoms[-1]

    @property
    def final_fluents(self) -> tuple[Fraction, ...]:
        return self.fluents[-1]

    def padded(self, steps: int) -> "StateTrace":
        """Extend to ``steps + 1`` states by repeating the last one."""
        extra = steps + 1 - len(self.atoms)
        if extra < 0:
            raise ValueError("trace longer than requested horizon")
        return StateTrace(self.atoms + (self.atoms[-1],) * extra, self.fluents + (self.fluents[-1],) * extra)


def is_applicable(action: GroundAction, atoms: frozenset[int], values) -> bool:
    return (
        action.pre_pos <= atoms
        and not (action.pre_neg & atoms)
        and all(c.holds(values) for c in action.num_pre)
    )


def apply(action: GroundAction, atoms: frozenset[int], values: tuple) -> tuple[frozenset[int], tuple]:
    new_atoms = (atoms - action.delete) | action.add
    if not action.num_eff:
        return new_atoms, values
    new_values = list(values)
    for u in action.num_eff:
        new_values[u.fluent] = u.value.evaluate(values)
    return new_atoms, tuple(new_values)


class InapplicableActionError(ValueError):
    def __init__(self, step: int, action: GroundAction):
        super().__init__(f"action {action.name} is not applicable at step {step}")
        self.step = step
        self.action = action


class GoalNotReachedError(ValueError):
    pass


def simulate(task: GroundTask, plan) -> StateTrace:
    """Run ``plan`` from the initial state, raising on the first inapplicable action."""
    atoms = task.init
    values = tuple(task.fluent_init)
    trace_atoms, trace_vals = [atoms], [values]
    for i, a in enumerate(plan):
        if not is_applicable(a, atoms, values):
            raise InapplicableActionError(i, a)
        atoms, values = apply(a, atoms, values)
        trace_atoms.append(atoms)
        trace_vals.append(values)
    return StateTrace(tuple(trace_atoms), tuple(trace_vals))


def goal_satisfied(task: GroundTask, atoms, values) -> bool:
    return all(g in atoms for g in task.goal) and all(c.holds(values) for c in task.goal_numeric)


def plan_names(plan) -> tuple[str, ...]:
    return tuple(a.name for a in plan)


def plan_to_json(plan) -> list[dict]:
    return [{"name": a.schema, "args": list(a.args)} for a in plan]


def plan_from_json(task: GroundTask, data) -> tuple[GroundAction, ...]:
    lookup = {(a.schema, a.args): a for a in task.actions}
    out = []
    for step in data:
        if isinstance(step, str):
            name, *args = step.strip().strip("()").lower().split()
            key = (name, tuple(args))
        else:
            key = (step["name"].lower(), tuple(x.lower() for x in step["args"]))
        if key not in lookup:
            raise KeyError(f"unknown ground action ({' '.join((key[0],) + key[1])})")
        out.append(lookup[key])
    return tuple(out)
