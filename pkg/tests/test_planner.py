from dataclasses import replace
from fractions import Fraction

import pytest

from conftest import load, requires_solver
from divplan.dimensions import build_behaviour_space, plan_behaviour
from divplan.oracle import bfs_optimal_length, oracle_enumerate
from divplan.planner import (
    PLAN_PHASE,
    Budget,
    BudgetExhausted,
    SolverConfig,
    Status,
    compute_cost_bound,
    fbi,
    fbi_k,
    find_optimal_length,
    naive,
)
from divplan.validate import validate_plan

pytestmark = requires_solver


@pytest.mark.parametrize("q,l,c", [(1, 10, 10), (Fraction(3, 2), 3, 5), (Fraction(5, 4), 2, 3), (2, 0, 0),
                                   (Fraction(1, 3), 1, 0), (Fraction(1, 2), 5, 3)])
def test_cost_bound(q, l, c):
    assert compute_cost_bound(q, l) == c


def test_cost_bound_rejects_nonpositive():
    with pytest.raises(ValueError):
        compute_cost_bound(0, 3)


def test_lengths(chain):
    assert find_optimal_length(chain) == 2
    assert find_optimal_length(replace(chain, goal=tuple(chain.init))) == 0
    unsolvable, _ = load("chain-domain", "unsolvable")
    assert find_optimal_length(unsolvable) is None


@pytest.mark.parametrize("domain,problem", [("switch-domain", "switch"), ("delivery-domain", "delivery-2"),
                                            ("counter-domain", "counter"), ("gripper-domain", "gripper-2")])
def test_lengths_agree_with_bfs(domain, problem):
    task, _ = load(domain, problem)
    assert find_optimal_length(task) == bfs_optimal_length(task)


def test_osp_length_uses_hard_goals():
    task, _ = load("chain-domain", "chain-two", "chain-osp")
    assert task.soft_goals
    # soft goals would allow the empty plan; the hard-goal version needs both chains
    assert find_optimal_length(task) == 4


def test_max_horizon_cap(chain):
    assert find_optimal_length(chain, max_horizon=1) is None


def test_expired_budget_raises(chain):
    b = Budget(0)
    with pytest.raises(BudgetExhausted):
        find_optimal_length(chain, budget=b)


TOYS = [
    ("chain-domain", "chain", "chain-order", 4),
    ("chain-domain", "chain-two", "chain-order", 4),
    ("switch-domain", "switch", "switch", 4),
    ("delivery-domain", "delivery-2", "delivery", 6),
    ("counter-domain", "counter", "counter", 4),
    ("chain-domain", "chain-two", "chain-osp", 3),
]


@pytest.mark.parametrize("domain,problem,features,c", TOYS)
def test_fbi_unbounded_matches_oracle(domain, problem, features, c):
    task, cfg = load(domain, problem, features)
    space = build_behaviour_space(cfg, task)
    psi = fbi(task, space, None, c)
    assert psi.status is Status.EXHAUSTED
    expected = {plan_behaviour(space, p) for p in oracle_enumerate(task, c)}
    assert set(psi.behaviours) == expected
    assert psi.bc == len(psi) == len(expected)
    for p in psi.plans:
        validate_plan(task, p, c)


@pytest.mark.parametrize("domain,problem,features,c", TOYS)
def test_fbi_k_enumerates_every_plan(domain, problem, features, c):
    task, cfg = load(domain, problem, features)
    space = build_behaviour_space(cfg, task)
    psi = fbi_k(task, space, None, c)
    assert sorted(map(tuple, psi.plans), key=repr) == sorted(oracle_enumerate(task, c), key=repr)
    # behaviour-phase plans come first
    phases = [e.phase for e in psi.entries]
    assert phases == sorted(phases, key=lambda p: p == PLAN_PHASE)


def test_fbi_stops_at_k():
    task, cfg = load("switch-domain", "switch", "switch")
    space = build_behaviour_space(cfg, task)
    psi = fbi(task, space, 2, 4)
    assert psi.status is Status.SOLVED and len(psi) == 2 and psi.bc == 2


def test_fbi_k_tops_up():
    task, cfg = load("chain-domain", "chain-two", "chain-order")
    space = build_behaviour_space(cfg, task)
    assert fbi(task, space, 5, 4).status is Status.EXHAUSTED
    psi = fbi_k(task, space, 3, 4)
    assert psi.status is Status.SOLVED and len(psi) == 3
    assert len(set(psi.plans)) == 3


def test_unsolvable_is_exhausted():
    task, cfg = load("chain-domain", "unsolvable")
    space = build_behaviour_space(cfg, task)
    psi = fbi_k(task, space, 3, 3)
    assert psi.status is Status.EXHAUSTED and len(psi) == 0


def test_naive_never_beats_fbi():
    task, cfg = load("delivery-domain", "delivery-2", "delivery")
    space = build_behaviour_space(cfg, task)
    for k in (2, 3, 5):
        assert fbi_k(task, space, k, 6).bc >= naive(task, space, k, 6).bc


def test_budget_exhaustion_reports_partial_set():
    task, cfg = load("rovers-domain", "rovers-two", "rovers-grid")
    space = build_behaviour_space(cfg, task)
    psi = fbi(task, space, 50, 10, budget=Budget(0.5))
    assert psi.status is Status.BUDGET
    assert psi.bc == len(psi)


def test_invalid_k(chain):
    with pytest.raises(ValueError):
        fbi(chain, build_behaviour_space(load("chain-domain", "chain")[1], chain), 0, 2)


def test_seeded_runs_are_reproducible():
    task, cfg = load("switch-domain", "switch", "switch")
    space = build_behaviour_space(cfg, task)
    s = SolverConfig(seed=7)
    assert fbi(task, space, 3, 4, solver=s).plans == fbi(task, space, 3, 4, solver=s).plans
