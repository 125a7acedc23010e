"""FBI against plain plan forbidding on the bundled suite.

Both modes get the same cost bound; the naive run's plans are measured in the
same behaviour space afterwards. Pass a quality factor as the first argument
(default 2).

Run: python3 demos/bench.py [Q]
"""

import sys
from fractions import Fraction

from _common import DATA

from divplan.bench import run_bench, to_csv

q = Fraction(sys.argv[1]) if len(sys.argv) > 1 else Fraction(2)
rows, agg = run_bench(DATA / "suite.json", ks=(5, 10), qs=(q,), timeout=300, seed=11, workers=4)
print(f"{'task':<16} {'k':>3} {'fbi':>4} {'naive':>5}")
by = {(r["task"], r["mode"], r["k"]): r for r in rows}
for task in dict.fromkeys(r["task"] for r in rows):
    for k in (5, 10):
        f, n = by[task, "fbi", k], by[task, "naive", k]
        mark = " <" if f["bc"] > n["bc"] else ""
        print(f"{task:<16} {k:>3} {f['bc']:>4} {n['bc']:>5}{mark}")
print()
print(to_csv(agg))
