"""Diverse planning over user-defined behaviour spaces via SMT encodings."""

from pathlib import Path

from .dimensions import BehaviourSpace, behaviour_count, build_behaviour_space, plan_behaviour
from .features import FeatureConfig, parse_addinfo
from .grounding import GroundTask, ground
from .pddl import parse_domain, parse_problem
from .planner import compute_cost_bound, fbi, fbi_k, find_optimal_length, naive
from .report import RunConfig, load_inputs, run_solve
from .validate import validate_plan

__version__ = "0.1.0"


def load_task(domain, problem, features=None) -> tuple[GroundTask, FeatureConfig]:
    """Parse and ground a domain/problem pair, with an optional feature file."""
    return load_inputs(RunConfig(Path(domain), Path(problem), None if features is None else Path(features)))


__all__ = [
    "BehaviourSpace",
    "FeatureConfig",
    "GroundTask",
    "RunConfig",
    "behaviour_count",
    "build_behaviour_space",
    "compute_cost_bound",
    "fbi",
    "fbi_k",
    "find_optimal_length",
    "ground",
    "load_task",
    "naive",
    "parse_addinfo",
    "parse_domain",
    "parse_problem",
    "plan_behaviour",
    "run_solve",
    "validate_plan",
]
