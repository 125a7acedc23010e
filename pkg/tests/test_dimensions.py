from fractions import Fraction

import pytest

from conftest import load, requires_solver
from divplan.dimensions import (
    DimensionError,
    OutOfRangeError,
    behaviour_count,
    behaviour_or_none,
    box_index,
    build_behaviour_space,
    encode_space,
    first_achievement,
    forbid_behaviour,
    goal_order_label,
    order_matrix,
    plan_behaviour,
)
from divplan.encoding import encode_task
from divplan.features import DimensionSpec, FeatureConfig, parse_addinfo
from divplan.oracle import oracle_enumerate
from divplan.plan import plan_from_json, simulate
from divplan.report import goal_short_names
from divplan.smt.session import CheckResult, open_session


def spec(lo, hi, eps):
    return DimensionSpec("numeric_fluent", fluent="foo", min=Fraction(lo), max=Fraction(hi), epsilon=Fraction(eps))


def test_box_examples():
    s = spec(0, 10, 3)
    assert s.box_count == 4
    assert box_index(s, Fraction(0)) == 0
    assert box_index(s, Fraction(3)) == 1
    assert box_index(s, Fraction(10)) == 3
    with pytest.raises(OutOfRangeError):
        box_index(s, Fraction(11))


def test_order_matrix():
    m = order_matrix([2, -1, 2])
    assert m[0][2] and m[2][0]
    assert m[1][0] and not m[0][1]



def _plan(task, names):
    return plan_from_json(task, list(names))


R2 = [
    "(calibrate rover0 camera0 objective1 waypoint3)",
    "(take_image rover0 waypoint3 objective1 camera0 high_res)",
    "(communicate_image_data rover0 general objective1 high_res waypoint3 waypoint0)",
    "(navigate rover1 waypoint0 waypoint3)",
    "(sample_rock rover1 rover1store waypoint3)",
    "(navigate rover0 waypoint3 waypoint1)",
    "(communicate_rock_data rover1 general waypoint3 waypoint3 waypoint0)",
    "(navigate rover0 waypoint1 waypoint2)",
    "(sample_soil rover0 rover0store waypoint2)",
    "(communicate_soil_data rover0 general waypoint2 waypoint2 waypoint0)",
]

SOLO = [
    "(calibrate rover0 camera0 objective1 waypoint3)",
    "(take_image rover0 waypoint3 objective1 camera0 high_res)",
    "(communicate_image_data rover0 general objective1 high_res waypoint3 waypoint0)",
    "(sample_rock rover0 rover0store waypoint3)",
    "(communicate_rock_data rover0 general waypoint3 waypoint3 waypoint0)",
    "(drop rover0 rover0store)",
    "(navigate rover0 waypoint3 waypoint1)",
    "(navigate rover0 waypoint1 waypoint2)",
    "(sample_soil rover0 rover0store waypoint2)",
    "(communicate_soil_data rover0 general waypoint2 waypoint2 waypoint0)",
]


def _label(space, b):
    dim = space.dimensions[0]
    names = goal_short_names(space.task, dim.goals)
    return goal_order_label(dim, space.task, b[0], short=lambda a: names[space.task.atom_index(a)])


def test_rover_grid_behaviours(rovers_two):
    task, cfg = rovers_two
    space = build_behaviour_space(cfg, task)
    b = plan_behaviour(space, _plan(task, R2))
    assert _label(space, b) == "image-rock-soil" and b[1] == 2
    b = plan_behaviour(space, _plan(task, SOLO))
    assert _label(space, b) == "image-rock-soil" and b[1] == 1


def test_goal_never_reached_is_minus_one(rovers_two):
    task, _ = rovers_two
    trace = simulate(task, ())
    assert all(first_achievement(trace, g) == -1 for g in task.goal)


def test_utility_dimension():
    task, cfg = load("chain-domain", "chain-two", "chain-osp")
    space = build_behaviour_space(cfg, task)
    plan = _plan(task, ["(act_a o1)", "(act_b o1)"])
    assert plan_behaviour(space, plan) == (Fraction(2), 2)
    assert space.dimensions[0].domain() == [0, 2, 3, 5]


def test_unknown_resource_rejected(chain):
    cfg = FeatureConfig((DimensionSpec("resource_utilisation", resources=("nobody",)),))
    with pytest.raises(DimensionError):
        build_behaviour_space(cfg, chain)


def test_unknown_fluent_rejected(chain):
    cfg = FeatureConfig((spec(0, 10, 5),))
    with pytest.raises(DimensionError):
        build_behaviour_space(cfg, chain)


def test_fluent_name_forms():
    task, _ = load("rovers-numeric-domain", "rovers-numeric")
    for name in ("(energy rover1)", "energy_rover1", "energy rover1"):
        cfg = parse_addinfo(f'{{"dimensions": [{{"kind": "numeric_fluent", "fluent": "{name}", "min": 0, "max": 100, "epsilon": 5}}]}}')
        assert build_behaviour_space(cfg, task).dimensions[0].fluent == 1


def test_behaviour_count():
    task, cfg = load("switch-domain", "switch", "switch")
    space = build_behaviour_space(cfg, task)
    plans = oracle_enumerate(task, 4)
    assert behaviour_count(space, []) == 0
    assert behaviour_count(space, plans[:1]) == 1
    assert behaviour_count(space, plans + plans) == behaviour_count(space, plans)


def test_out_of_range_plans_have_no_behaviour():
    task, _ = load("counter-domain", "counter")
    narrow = DimensionSpec("numeric_fluent", fluent="(level t1)", min=Fraction(0), max=Fraction(10), epsilon=Fraction(5))
    space = build_behaviour_space(FeatureConfig((narrow,)), task)
    over = _plan(task, ["(fill_large t1)", "(fill_large t1)", "(seal t1)"])
    with pytest.raises(OutOfRangeError):
        plan_behaviour(space, over)
    assert behaviour_or_none(space, over) is None
    assert behaviour_count(space, [over]) == 0


@requires_solver
def test_cost_dimension_respects_bound():
    task, cfg = load("switch-domain", "switch", "switch")
    space = build_behaviour_space(cfg, task)
    s = open_session("smtlib")
    enc = encode_task(task, 4, s, cost_bound=2)
    encode_space(space, enc)
    while s.check() is CheckResult.SAT:
        from divplan.dimensions import model_behaviour

        b = model_behaviour(enc, s.model())
        assert b[0] <= 2
        forbid_behaviour(enc, b)
    s.close()


@requires_solver
def test_forbidding_the_empty_behaviour_exhausts(chain):
    space = build_behaviour_space(FeatureConfig(), chain)
    s = open_session("smtlib")
    enc = encode_task(chain, 2, s)
    encode_space(space, enc)
    assert s.check() is CheckResult.SAT
    forbid_behaviour(enc, ())
    assert s.check() is CheckResult.UNSAT
    with pytest.raises(DimensionError):
        forbid_behaviour(enc, (1,))
    s.close()
