"""Acceptance criteria, one test each; every test prints a PASS/FAIL line with its wall time."""

import contextlib
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

from conftest import DATA, load, requires_solver
from divplan.bench import covered, run_bench
from divplan.dimensions import box_index, build_behaviour_space, plan_behaviour
from divplan.oracle import oracle_enumerate
from divplan.planner import SolverConfig, Status, compute_cost_bound, fbi, fbi_k, find_optimal_length
from divplan.report import cell_labels
from divplan.validate import compute_plan_cost, compute_utility, validate_plan

pytestmark = [requires_solver, pytest.mark.slow]

SEED = 11


@contextlib.contextmanager
def criterion(capsys, number, title, limit):
    start = time.monotonic()
    ok, detail = False, ""
    try:
        info = {}
        yield info
        elapsed = time.monotonic() - start
        ok = elapsed <= limit
        detail = info.get("detail", "")
        if not ok:
            detail += f" over the {limit:.0f} s limit"
    except AssertionError as e:
        detail = f"assertion: {e}".splitlines()[0]
        raise
    finally:
        elapsed = time.monotonic() - start
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({elapsed:.1f} s) {detail}".rstrip())
    assert ok, detail


def test_c1_optimal_length(capsys):
    task, _ = load("rovers-domain", "rovers-p01")
    with criterion(capsys, 1, "optimal length of rovers p01 is 10", 120) as info:
        length = find_optimal_length(task)
        info["detail"] = f"l={length}"
        assert length == 10


def test_c2_rover_grid(capsys):
    task, cfg = load("rovers-domain", "rovers-two", "rovers-grid")
    space = build_behaviour_space(cfg, task)
    with criterion(capsys, 2, "three rover plans in distinct grid cells", 180) as info:
        c = compute_cost_bound(1, find_optimal_length(task))
        psi = fbi(task, space, 3, c, solver=SolverConfig(seed=SEED))
        for p in psi.plans:
            validate_plan(task, p, c)
        cells = [tuple(cell_labels(space, b)) for b in psi.behaviours]
        info["detail"] = f"BC={psi.bc} cells={cells}"
        assert len(psi) == 3 and psi.bc == 3 and len(set(cells)) == 3


TOYS = [
    ("chain-domain", "chain", "chain-order", 4),
    ("chain-domain", "chain-two", "chain-order", 4),
    ("switch-domain", "switch", "switch", 4),
    ("delivery-domain", "delivery-2", "delivery", 6),
    ("counter-domain", "counter", "counter", 4),
    ("chain-domain", "chain-two", "chain-osp", 3),
]


@pytest.mark.parametrize("domain,problem,features,c", TOYS, ids=[f"{t[1]}-{t[2]}" for t in TOYS])
def test_c3_oracle_equivalence(capsys, domain, problem, features, c):
    task, cfg = load(domain, problem, features)
    space = build_behaviour_space(cfg, task)
    with criterion(capsys, 3, f"oracle equivalence on {problem}/{features}", 10) as info:
        psi = fbi(task, space, None, c)
        expected = {plan_behaviour(space, p) for p in oracle_enumerate(task, c)}
        info["detail"] = f"BC={psi.bc} oracle={len(expected)}"
        assert psi.bc == len(expected) and set(psi.behaviours) == expected


def _bench(q):
    rows, _ = run_bench(DATA / "suite.json", ks=(5, 10), qs=(Fraction(q),), timeout=300, seed=SEED, workers=4)
    by = {(r["task"], r["mode"], r["k"]): r for r in rows}
    tasks = sorted({r["task"] for r in rows})
    summary = {}
    for k in (5, 10):
        pairs = [(by[t, "fbi", k], by[t, "naive", k]) for t in tasks]
        summary[k] = {
            "weak": all(f["bc"] >= n["bc"] for f, n in pairs),
            "strict": sum(f["bc"] > n["bc"] for f, n in pairs),
            "covered": all(covered(f) and covered(n) for f, n in pairs),
            "bc": (sum(f["bc"] for f, _ in pairs), sum(n["bc"] for _, n in pairs)),
        }
    return tasks, summary


def test_c4_fbi_beats_naive(capsys):
    with criterion(capsys, 4, "fbi BC >= naive BC on the suite at q=2", 1800) as info:
        tasks, s = _bench(2)
        domains = {t.split("-")[0] for t in tasks}
        info["detail"] = "; ".join(f"k={k}: strict {v['strict']}/{len(tasks)} BC {v['bc'][0]} vs {v['bc'][1]}"
                                   for k, v in s.items())
        assert len(tasks) >= 10 and len(domains) >= 3
        for v in s.values():
            assert v["covered"] and v["weak"] and 2 * v["strict"] >= len(tasks)
    # the q=1 sweep is reported for information; its strict count is recorded in the notes
    _, s1 = _bench(1)
    with capsys.disabled():
        for k, v in s1.items():
            print(f"INFO criterion 4 at q=1, k={k}: weak={v['weak']} strict {v['strict']}/{len(tasks)} "
                  f"BC {v['bc'][0]} vs {v['bc'][1]}")


def test_c5_osp(capsys):
    task, cfg = load("rovers-domain", "rovers-p01", "rovers-osp")
    space = build_behaviour_space(cfg, task)
    with criterion(capsys, 5, "OSP plans with equal cost and different utility", 180) as info:
        psi = fbi(task, space, 7, cfg.cost_bound, solver=SolverConfig(seed=SEED))
        seen = {}
        for p in psi.plans:
            u = compute_utility(task, validate_plan(task, p, cfg.cost_bound))
            seen.setdefault(compute_plan_cost(p), set()).add(u)
        witness = {cost: sorted(map(int, us)) for cost, us in seen.items() if len(us) > 1}
        info["detail"] = f"plans={len(psi)} cost->utilities {witness}"
        assert len(psi) >= 2 and witness


def test_c6_numeric(capsys):
    task, cfg = load("rovers-numeric-domain", "rovers-numeric", "rovers-numeric")
    space = build_behaviour_space(cfg, task)
    with criterion(capsys, 6, "numeric plans in distinct energy boxes", 180) as info:
        c = compute_cost_bound(1, find_optimal_length(task))
        psi = fbi(task, space, cfg.k, c, solver=SolverConfig(seed=SEED))
        for plan, boxes in zip(psi.plans, psi.behaviours):
            final = validate_plan(task, plan, c).final_fluents
            assert boxes == tuple(box_index(d.spec, final[d.fluent]) for d in space.dimensions)
        info["detail"] = f"c={c} boxes={psi.behaviours}"
        assert len(psi) >= 2 and len(set(psi.behaviours)) == len(psi)


def test_c7_property_suite(capsys):
    with criterion(capsys, 7, "property suite on 200 random instances", 600) as info:
        r = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider",
                            str(Path(__file__).with_name("test_properties.py"))],
                           capture_output=True, text=True, cwd=Path(__file__).parent)
        info["detail"] = r.stdout.strip().splitlines()[-1] if r.stdout.strip() else r.stderr[-200:]
        assert r.returncode == 0 and "failed" not in info["detail"]
