"""Numeric rovers: each rover has an energy level, discretised into boxes of width 5 on [0, 100].

Distinct behaviours here are distinct pairs of final energy boxes. The script
replays each plan and recomputes the boxes from the final energy values.

Run: python3 demos/numeric.py   (the optimal-length search takes about 15 s)
"""

from _common import DATA

from divplan.dimensions import box_index, build_behaviour_space
from divplan.report import RunConfig, load_inputs, run_solve
from divplan.plan import plan_from_json
from divplan.validate import validate_plan

cfg = RunConfig(DATA / "rovers-numeric-domain.pddl", DATA / "rovers-numeric.pddl", DATA / "rovers-numeric.json", seed=1)
report = run_solve(cfg)
task, features = load_inputs(cfg)
space = build_behaviour_space(features, task)
print(f"optimal length {report.optimal_length}, cost bound {report.cost_bound}, BC {report.bc}\n")
for p in report.plans:
    final = validate_plan(task, plan_from_json(task, p["actions"])).final_fluents
    energies = [final[d.fluent] for d in space.dimensions]
    boxes = [box_index(d.spec, e) for d, e in zip(space.dimensions, energies)]
    print(f"{p['id']} ({p['phase']:>9}): energy {[int(e) for e in energies]} -> boxes {boxes}, reported {p['behaviour']}")
