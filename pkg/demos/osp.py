"""Soft goals with utilities: every plan within the cost bound is acceptable.

The two dimensions are plan cost and collected utility, so plans of the same
length that bring back different data land in different cells.

Run: python3 demos/osp.py
"""

from _common import DATA

from divplan.report import RunConfig, run_solve

report = run_solve(RunConfig(DATA / "rovers-domain.pddl", DATA / "rovers-p01.pddl", DATA / "rovers-osp.json",
                             k=8, seed=1))
print(f"cost bound {report.cost_bound}; utilities soil=1 rock=2 image=3\n")
print(f"{'plan':<5} {'cost':>4} {'utility':>7}  actions")
for p in report.plans:
    acts = ", ".join(s["name"] for s in p["actions"]) or "(empty)"
    print(f"{p['id']:<5} {p['cost']:>4} {p['utility']:>7}  {acts}")

by_cost = {}
for p in report.plans:
    by_cost.setdefault(p["cost"], set()).add(p["utility"])
print("\nutilities seen per cost:", {c: sorted(u) for c, u in sorted(by_cost.items())})
