"""Two-dimensional behaviour grids rendered as CSV."""

from __future__ import annotations

import csv
import io

from .dimensions import GOAL_ORDER
from .report import DiversityReport


class GridError(ValueError):
    pass


def _axis(report: DiversityReport, d: int) -> list[str]:
    """Axis labels: the listed domain, extended by any observed value outside it."""
    info = report.dimensions[d]
    axis = [str(v) for v in (info.get("domain") or [])]
    for p in report.plans:
        if p.get("cell") is None:
            continue
        label = p["cell"][d]
        if label not in axis:
            axis.append(label)
    return axis


def render_grid(report: DiversityReport, dims: tuple[int, int] = (0, 1)) -> str:
    """CSV grid with rows over ``dims[0]`` values and columns over ``dims[1]`` values.

    Each cell lists the ids of the plans whose behaviour falls in it. A
    goal-order dimension over more than four goals is not expanded into an
    axis; the plans' order relations are listed instead.
    """
    if not report.plans:
        raise GridError("report has no plans")
    placed = [p for p in report.plans if p.get("cell") is not None]
    a, b = dims
    n = len(report.dimensions)
    if not (0 <= a < n and 0 <= b < n) or a == b:
        raise GridError(f"need two distinct dimension indices below {n}")
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    for d in dims:
        info = report.dimensions[d]
        if info["kind"] == GOAL_ORDER and info.get("domain") is None:
            w.writerow(["plan", info["label"], report.dimensions[b if d == a else a]["label"]])
            other = b if d == a else a
            for p in placed:
                w.writerow([p["id"], " ".join(p["behaviour"][d]), p["cell"][other]])
            return out.getvalue()
    rows, cols = _axis(report, a), _axis(report, b)
    cells: dict[tuple[str, str], list[str]] = {}
    for p in placed:
        cells.setdefault((p["cell"][a], p["cell"][b]), []).append(p["id"])
    w.writerow([f"{report.dimensions[a]['label']} \\ {report.dimensions[b]['label']}"] + cols)
    for r in rows:
        w.writerow([r] + [";".join(cells.get((r, c), [])) for c in cols])
    return out.getvalue()
