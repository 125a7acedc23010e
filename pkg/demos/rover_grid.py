"""Two rovers, three goals: find plans that differ in goal order and in how many rovers they use.

Run: python3 demos/rover_grid.py
"""

from _common import DATA

from divplan.grid import render_grid
from divplan.report import RunConfig, run_solve

print("Rovers with two vehicles. Dimensions: order in which the goals are first reached,")
print("and how many of {rover0, rover1} appear in the plan.\n")

report = run_solve(RunConfig(DATA / "rovers-domain.pddl", DATA / "rovers-two.pddl", DATA / "rovers-grid.json", seed=1))
print(f"optimal length {report.optimal_length}, cost bound {report.cost_bound}, status {report.status.value}")
for p in report.plans:
    print(f"\n{p['id']}  cell {p['cell']}")
    for step in p["actions"]:
        print(f"    ({step['name']} {' '.join(step['args'])})")

print("\nBehaviour grid (rows: goal order, columns: rovers used):\n")
print(render_grid(report))
