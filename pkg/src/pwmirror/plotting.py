"""Optional heatmaps of computed tables (matplotlib, Agg backend)."""

from __future__ import annotations

import re
from pathlib import Path

from .scenario import Report

# op -> (row label, column label, how to read (row, col, dim) from a result record)
_LAYOUTS = {
    "weight_graded": ("degree s", "weight w", lambda r: (r[0], r[2], r[3])),
    "nc_cohomology": ("degree s", "weight w", lambda r: (r[0], r[2], r[3])),
    "simplicial_weight": ("degree s", "weight w", lambda r: (r[0], r[2], r[3])),
    "perverse_e2": ("degree s", "perverse index", lambda r: (r[0], r[1], r[2])),
    "oracle_compare": ("degree s", "perverse index", lambda r: (r[0], r[1], r[2])),
}


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", text).strip("_") or "task"


def plot_report(report: Report, out_dir: str | Path) -> list[Path]:
    """Write one PNG per plottable task outcome; returns the written paths."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for o in report.outcomes:
        layout = _LAYOUTS.get(o.op)
        if layout is None or not isinstance(o.result, list) or not o.result:
            continue
        ylabel, xlabel, read = layout
        grid: dict = {}
        for rec in o.result:
            row, col, dim = read(rec)
            grid[(row, col)] = grid.get((row, col), 0) + dim
        rows = range(min(r for r, _ in grid), max(r for r, _ in grid) + 1)
        cols = range(min(c for _, c in grid), max(c for _, c in grid) + 1)
        data = [[grid.get((r, c), 0) for c in cols] for r in rows]
        fig, ax = plt.subplots(figsize=(1 + 0.6 * len(cols), 1 + 0.6 * len(rows)))
        ax.imshow(data, origin="lower", cmap="Blues", aspect="auto",
                  extent=(cols[0] - 0.5, cols[-1] + 0.5, rows[0] - 0.5, rows[-1] + 0.5))
        for (r, c), d in grid.items():
            if d:
                ax.text(c, r, str(d), ha="center", va="center")
        ax.set_xticks(list(cols))
        ax.set_yticks(list(rows))
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        ax.set_title(f"{o.name} [{o.status}]")
        path = out / f"{_slug(report.scenario)}__{_slug(o.name)}.png"
        fig.savefig(path, dpi=80, bbox_inches="tight")
        plt.close(fig)
        written.append(path)
    return written
