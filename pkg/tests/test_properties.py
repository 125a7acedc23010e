"""Randomised agreement checks between the solver path and the reference semantics."""

import random
from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import requires_solver
from divplan.dimensions import (
    GOAL_ORDER,
    behaviour_or_none,
    box_index,
    build_behaviour_space,
    encode_space,
    extract_dimension_value,
    first_achievement,
    forbid_behaviour,
    plan_behaviour,
    read_dimension_value,
)
from divplan.encoding import encode_task, extract_plan, read_trace
from divplan.features import DimensionSpec, FeatureConfig
from divplan.metrics import stability_distance
from divplan.oracle import oracle_enumerate
from divplan.pddl import Mode
from divplan.plan import plan_names, simulate
from divplan.planner import SolverConfig, compute_cost_bound, fbi_k
from divplan.smt.session import CheckResult
from divplan.smt.smtlib import SMTLibSession
from divplan.validate import validate_plan
from randtasks import random_instance

INSTANCES = 200


@requires_solver
@pytest.mark.parametrize("seed", range(INSTANCES))
def test_random_instance(seed):
    task, space, n = random_instance(seed)
    oracle = oracle_enumerate(task, n)
    oracle_names = {plan_names(p) for p in oracle}
    oracle_behaviours = {behaviour_or_none(space, p) for p in oracle} - {None}

    with SMTLibSession(seed=seed) as session:
        enc = encode_task(task, n, session, cost_bound=n)
        encode_space(space, enc)
        seen = []
        while True:
            result = session.check()
            assert result is not CheckResult.UNKNOWN
            if result is CheckResult.UNSAT:
                break
            model = session.model()
            for i in range(n):
                assert sum(bool(model[enc.action(a.id, i)]) for a in task.actions) <= 1
            plan = extract_plan(model, enc)
            trace = read_trace(model, enc)
            assert trace == simulate(task, plan).padded(n)
            for dim, handle in enc.dimensions:
                assert read_dimension_value(dim, handle, model) == extract_dimension_value(dim, plan, trace)
            behaviour = plan_behaviour(space, plan, trace)
            assert behaviour not in enc.forbidden_behaviours
            assert plan_names(plan) in oracle_names
            seen.append(behaviour)
            forbid_behaviour(enc, behaviour)
            assert len(seen) <= len(oracle_behaviours)
    assert set(seen) == oracle_behaviours

    k = random.Random(seed).choice([1, 3, 8, None])
    psi = fbi_k(task, space, k, n, solver=SolverConfig(seed=seed))
    names = [plan_names(p) for p in psi.plans]
    assert len(names) == len(set(names))
    assert len(psi) == (len(oracle) if k is None else min(k, len(oracle)))
    for p in psi.plans:
        validate_plan(task, p, cost_bound=n)


@requires_solver
@pytest.mark.parametrize("seed", range(0, INSTANCES, 7))
def test_pstep_well_formed(seed):
    task, _, n = random_instance(seed)
    task = replace(task, mode=Mode.OSP, goal_numeric=())  # no hard goal, so always satisfiable
    space = build_behaviour_space(FeatureConfig((DimensionSpec(GOAL_ORDER),)), task)
    with SMTLibSession(seed=seed) as session:
        enc = encode_task(task, n, session)
        encode_space(space, enc)
        assert session.check() is CheckResult.SAT
        model = session.model()
        trace = read_trace(model, enc)
        for g in space.dimensions[0].goals:
            step = model[f"d{space.dimensions[0].index}_pstep_{g}"]
            assert step == first_achievement(trace, g)


@given(st.lists(st.integers(0, 6)), st.lists(st.integers(0, 6)), st.lists(st.integers(0, 6)))
def test_stability_is_a_pseudometric(a, b, c):
    assert stability_distance(a, a) == 0
    assert stability_distance(a, b) == stability_distance(b, a)
    assert 0 <= stability_distance(a, b) <= 1
    # Jaccard distance obeys the triangle inequality
    assert stability_distance(a, c) <= stability_distance(a, b) + stability_distance(b, c)


@given(st.fractions(min_value=Fraction(1, 100), max_value=10), st.integers(0, 200))
def test_cost_bound_rounds_half_up(q, length):
    c = compute_cost_bound(q, length)
    assert abs(c - q * length) <= Fraction(1, 2)
    if q * length - int(q * length) == Fraction(1, 2):
        assert c == int(q * length) + 1


@settings(max_examples=300)
@given(
    st.fractions(min_value=-50, max_value=50),
    st.integers(1, 40),
    st.fractions(min_value=Fraction(1, 10), max_value=10),
    st.fractions(min_value=0, max_value=1),
)
def test_box_arithmetic(lo, width, eps, pos):
    hi = lo + width
    value = lo + pos * width
    spec = DimensionSpec("numeric_fluent", fluent="f", min=lo, max=hi, epsilon=eps)
    b = box_index(spec, value)
    assert 0 <= b < spec.box_count
    assert lo + b * eps <= value
    if b < spec.box_count - 1:
        assert value < lo + (b + 1) * eps
    else:
        assert value <= hi
