from fractions import Fraction

import pytest

from conftest import TOYS, load
from divplan.grounding import GroundingLimitError, dump_task, ground, reachable_atoms
from divplan.oracle import oracle_enumerate
from divplan.pddl import Atom, parse_domain, parse_problem
from divplan.plan import simulate


def test_chain_has_two_actions(chain):
    assert [a.name for a in chain.actions] == ["(act_a o1)", "(act_b o1)"]


def test_chain_reachable_atoms(chain):
    names = {str(chain.atoms[i]) for i in reachable_atoms(chain)}
    assert names == {"(p0 o1)", "(p1 o1)", "(p2 o1)"}


def test_rovers_two_has_actions_for_both_rovers():
    task, _ = load("rovers-domain", "rovers-two")
    for rover in ("rover0", "rover1"):
        schemas = {a.schema for a in task.actions if rover in a.args}
        assert {"navigate", "sample_rock", "communicate_rock_data"} <= schemas


def test_deterministic_ordering():
    a, _ = load("rovers-domain", "rovers-p01")
    b, _ = load("rovers-domain", "rovers-p01")
    assert [x.name for x in a.actions] == [x.name for x in b.actions]
    keys = [(x.schema, x.args) for x in a.actions]
    assert keys == sorted(keys)
    assert dump_task(a) == dump_task(b)


def test_empty_type_contributes_nothing():
    dom = parse_domain((TOYS / "delivery-domain.pddl").read_text())
    prob = parse_problem(
        "(define (problem x) (:domain delivery) (:objects a b - location p - package)"
        " (:init (pkg_at p a) (road a b)) (:goal (pkg_at p b)))",
        dom,
    )
    assert ground(dom, prob).actions == ()


def test_init_satisfied_goal_reachable():
    dom = parse_domain((TOYS / "chain-domain.pddl").read_text())
    prob = parse_problem("(define (problem x) (:domain chain) (:objects o - obj) (:init (p2 o)) (:goal (p2 o)))", dom)
    task = ground(dom, prob)
    assert task.init <= reachable_atoms(task)


def test_atom_without_achiever_excluded():
    task, _ = load("chain-domain", "unsolvable")
    goal = task.goal[0]
    assert goal not in reachable_atoms(task)


def test_action_cap():
    dom = parse_domain((TOYS / "delivery-domain.pddl").read_text())
    prob = parse_problem((TOYS / "delivery-3.pddl").read_text(), dom)
    with pytest.raises(GroundingLimitError):
        ground(dom, prob, max_actions=5)


def test_static_atoms_compiled_out():
    task, _ = load("rovers-domain", "rovers-p01")
    names = {a.name for a in task.atoms}
    assert "can_traverse" not in names and "visible" not in names


def test_numeric_updates_linearised():
    task, _ = load("counter-domain", "counter")
    fill = task.action_by_name("(fill_small t1)")
    assert fill.num_eff[0].value.evaluate((Fraction(3),)) == 8
    assert fill.num_pre[0].holds((Fraction(15),)) and not fill.num_pre[0].holds((Fraction(16),))


@pytest.mark.parametrize("problem,domain,n", [("chain-two", "chain-domain", 4), ("switch", "switch-domain", 4),
                                              ("delivery-2", "delivery-domain", 6)])
def test_pruning_is_sound(problem, domain, n):
    task, _ = load(domain, problem)
    unpruned = ground(parse_domain((TOYS / f"{domain}.pddl").read_text()),
                      parse_problem((TOYS / f"{problem}.pddl").read_text(), parse_domain((TOYS / f"{domain}.pddl").read_text())),
                      prune=False)
    reach = {task.atoms[i] for i in reachable_atoms(task)}
    for plan in oracle_enumerate(unpruned, n):
        for state in simulate(unpruned, plan).atoms:
            assert {unpruned.atoms[i] for i in state} <= reach


def test_fluent_lookup():
    task, _ = load("rovers-numeric-domain", "rovers-numeric")
    assert task.fluent_index(Atom("energy", ("rover1",))) == 1
