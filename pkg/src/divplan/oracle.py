"""Brute-force reference enumerators, independent of the solver path."""

from __future__ import annotations

from collections import deque

from .grounding import GroundTask
from .plan import apply, goal_satisfied, is_applicable

DEFAULT_NODE_CAP = 200_000


class OracleLimitError(RuntimeError):
    pass


def oracle_enumerate(task: GroundTask, n: int, c: int | None = None, node_cap: int = DEFAULT_NODE_CAP) -> list[tuple]:
    """Every action sequence of length <= min(n, c) ending in a goal state.

    In OSP mode every sequence qualifies. Output is in depth-first order with
    actions tried by id, so it is deterministic.
    """
    depth = n if c is None else min(n, c)
    out: list[tuple] = []
    nodes = 0
    osp = task.soft_goals
    stack = [(task.init, tuple(task.fluent_init), ())]
    # explicit stack, children pushed in reverse id order to keep DFS order by id
    while stack:
        atoms, values, prefix = stack.pop()
        nodes += 1
        if nodes > node_cap:
            raise OracleLimitError(f"oracle exceeded {node_cap} nodes")
        if osp or goal_satisfied(task, atoms, values):
            out.append(prefix)
        if len(prefix) == depth:
            continue
        for a in reversed(task.actions):
            if is_applicable(a, atoms, values):
                nxt, vals = apply(a, atoms, values)
                stack.append((nxt, vals, prefix + (a,)))
    return out


def bfs_optimal_length(task: GroundTask, max_depth: int = 50, node_cap: int = 2_000_000) -> int | None:
    """Shortest plan length by breadth-first search over distinct states."""
    start = (task.init, tuple(task.fluent_init))
    if goal_satisfied(task, *start):
        return 0
    seen = {start}
    frontier = deque([(start, 0)])
    while frontier:
        (atoms, values), d = frontier.popleft()
        if d >= max_depth:
            continue
        for a in task.actions:
            if not is_applicable(a, atoms, values):
                continue
            state = apply(a, atoms, values)
            if state in seen:
                continue
            if goal_satisfied(task, *state):
                return d + 1
            seen.add(state)
            if len(seen) > node_cap:
                raise OracleLimitError(f"bfs exceeded {node_cap} states")
            frontier.append((state, d + 1))
    return None
