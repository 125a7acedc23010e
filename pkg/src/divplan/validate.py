"""Independent plan validation by forward simulation."""

from __future__ import annotations

from fractions import Fraction

from .grounding import GroundTask
from .plan import GoalNotReachedError, InapplicableActionError, StateTrace, goal_satisfied, simulate

__all__ = [
    "CostBoundError",
    "GoalNotReachedError",
    "InapplicableActionError",
    "compute_plan_cost",
    "compute_utility",
    "validate_plan",
]


class CostBoundError(ValueError):
    pass


def validate_plan(task: GroundTask, plan, cost_bound: int | None = None) -> StateTrace:
    """Simulate ``plan`` and return its trace, or raise naming the first failure.

    The goal check is skipped for over-subscription tasks, whose goals are soft.
    """
    trace = simulate(task, plan)
    if not task.soft_goals and not goal_satisfied(task, trace.final_atoms, trace.final_fluents):
        missing = [str(task.atoms[g]) for g in task.goal if g not in trace.final_atoms]
        raise GoalNotReachedError(f"goal not satisfied at the final state; missing {missing or 'numeric goals'}")
    if cost_bound is not None and compute_plan_cost(plan) > cost_bound:
        raise CostBoundError(f"plan cost {len(plan)} exceeds bound {cost_bound}")
    return trace


def compute_plan_cost(plan) -> int:
    # unit action costs
    return len(plan)


def compute_utility(task: GroundTask, trace: StateTrace) -> Fraction:
    final = trace.final_atoms
    return sum((u for g, u in task.utilities.items() if g in final), Fraction(0))
