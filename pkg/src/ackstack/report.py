"""Grid reports: agreement of all evaluators over an (m, n) rectangle.

The report path writes a delimited table and renders small matplotlib
figures next to it, for eyeballing growth and step counts. Figures go to
files only; nothing here needs a display.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from .core import FuelExhausted, ResourceCapExceeded, ack_closed, ack_memo, ack_naive
from .machine import ackloop, acklist


@dataclass(frozen=True)
class GridCell:
    m: int
    n: int
    value: int | None  # agreed value, None when any route failed or disagreed
    naive_calls: int | None
    loop_steps: int | None
    agree: bool
    note: str


def equivalence_cell(m: int, n: int, fuel: int) -> GridCell:
    """Evaluate one grid point through every route and compare."""
    values: dict[str, int] = {}
    naive_calls = loop_steps = None
    failures = []
    try:
        r = ack_naive(m, n, fuel)
        values["naive"] = r.value
        naive_calls = r.calls
    except FuelExhausted:
        failures.append("naive:fuel")
    try:
        values["memo"] = ack_memo(m, n)
    except ResourceCapExceeded:
        failures.append("memo:cap")
    if m <= 3:
        values["closed"] = ack_closed(m, n)
    try:
        r2 = ackloop((n, m), fuel, record_trace=False)
        values["loop"] = r2.value
        loop_steps = r2.steps
    except FuelExhausted:
        failures.append("loop:fuel")
    try:
        values["list"] = acklist((n, m))
    except ResourceCapExceeded:
        failures.append("list:cap")

    distinct = set(values.values())
    agree = not failures and len(distinct) == 1
    note = "ok" if agree else (",".join(failures) or "disagree")
    value = distinct.pop() if len(distinct) == 1 and not failures else None
    return GridCell(m, n, value, naive_calls, loop_steps, agree, note)


def equivalence_grid(max_m: int, max_n: int, fuel: int) -> list[GridCell]:
    """Row-major agreement report over 0..max_m x 0..max_n."""
    return [equivalence_cell(m, n, fuel)
            for m in range(max_m + 1) for n in range(max_n + 1)]


def write_grid_csv(cells: list[GridCell], path: Path) -> Path:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["m", "n", "value", "naive_calls", "loop_steps", "agree", "note"])
        for c in cells:
            writer.writerow([c.m, c.n,
                             "" if c.value is None else c.value,
                             "" if c.naive_calls is None else c.naive_calls,
                             "" if c.loop_steps is None else c.loop_steps,
                             "yes" if c.agree else "no",
                             c.note])
    return path


def render_grid_figures(cells: list[GridCell], out_dir: Path) -> list[Path]:
    """Render a value heatmap and a step-count plot; returns written paths.

    Values and step counts are shown on a log2 scale since the raw numbers
    span dozens of binary orders of magnitude across one small grid.
    """
    import math

    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    import numpy as np

    max_m = max(c.m for c in cells)
    max_n = max(c.n for c in cells)

    values = np.full((max_m + 1, max_n + 1), np.nan)
    for c in cells:
        if c.value is not None:
            values[c.m, c.n] = math.log2(c.value + 3)

    written = []

    fig, ax = plt.subplots(figsize=(1.2 * (max_n + 2), 1.0 * (max_m + 2)))
    im = ax.imshow(values, origin="lower", cmap="viridis", aspect="auto")
    ax.set_xlabel("n")
    ax.set_ylabel("m")
    ax.set_title("log2(A(m, n) + 3)")
    ax.set_xticks(range(max_n + 1))
    ax.set_yticks(range(max_m + 1))
    fig.colorbar(im, ax=ax)
    for c in cells:
        if c.value is not None and c.value < 10**6:
            ax.text(c.n, c.m, str(c.value), ha="center", va="center", fontsize=8, color="white")
    heatmap = out_dir / "value_heatmap.png"
    fig.savefig(heatmap, dpi=120, bbox_inches="tight")
    plt.close(fig)
    written.append(heatmap)

    fig, ax = plt.subplots(figsize=(7, 4.5))
    for m in range(max_m + 1):
        xs = [c.n for c in cells if c.m == m and c.loop_steps]
        ys = [c.loop_steps for c in cells if c.m == m and c.loop_steps]
        if xs:
            ax.plot(xs, ys, marker="o", label=f"m={m}")
    ax.set_yscale("log", base=2)
    ax.set_xlabel("n")
    ax.set_ylabel("rewrite steps")
    ax.set_title("Steps to collapse the stack [n, m]")
    ax.legend()
    ax.grid(True, alpha=0.3)
    steps_plot = out_dir / "step_counts.png"
    fig.savefig(steps_plot, dpi=120, bbox_inches="tight")
    plt.close(fig)
    written.append(steps_plot)

    return written


def write_report(max_m: int, max_n: int, fuel: int, out_dir: Path) -> dict[str, object]:
    """Run the grid and write grid.csv plus figures into out_dir."""
    out_dir.mkdir(parents=True, exist_ok=True)
    cells = equivalence_grid(max_m, max_n, fuel)
    csv_path = write_grid_csv(cells, out_dir / "grid.csv")
    figures = render_grid_figures(cells, out_dir)
    return {
        "cells": cells,
        "all_agree": all(c.agree for c in cells),
        "csv": csv_path,
        "figures": figures,
    }
