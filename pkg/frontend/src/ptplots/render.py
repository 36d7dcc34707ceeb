"""Draw the five figure kinds from CSV/JSON artifacts.

Rendering never mutates inputs, and with a fixed style file the same inputs
produce byte-identical image files on repeat runs (the Agg backend is
deterministic and the PNG writer stamps no timestamps).
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .figspec import REQUIRED_COLUMNS, FigureSpec, SchemaError, load_summary, load_table

_DEFAULT_STYLE = str(Path(__file__).parent / "default.mplstyle")


def _empty_banner(ax, message):
    ax.text(0.5, 0.5, message, transform=ax.transAxes, ha="center", va="center",
            fontsize=11, color="#aa3311",
            bbox=dict(boxstyle="round", facecolor="#ffeecc", edgecolor="#aa3311"))


def _draw_index_traces(ax, spec):
    table = load_table(spec.inputs[0], REQUIRED_COLUMNS["index_traces"])
    if table["scan"].size == 0:
        _empty_banner(ax, "no index records")
        return
    machines = np.unique(table["machine"]).astype(int)
    for m in machines:
        mask = table["machine"] == m
        order = np.argsort(table["scan"][mask])
        lw = 2.2 if m == machines[-1] else 0.8
        alpha = 1.0 if m == machines[-1] else 0.55
        ax.step(table["scan"][mask][order], table["index"][mask][order],
                where="post", lw=lw, alpha=alpha)
    ax.set_xlabel("scan")
    ax.set_ylabel("chain index")
    ax.set_title("index-process trajectories")


def _draw_barrier_curve(ax, spec):
    table = load_table(spec.inputs[0], REQUIRED_COLUMNS["barrier_curve"])
    if table["beta"].size == 0:
        _empty_banner(ax, "no barrier grid")
        return
    ax.plot(table["beta"], table["lambda_hat"], label="local rate (estimated)")
    ax.plot(table["beta"], table["Lambda_hat"], label="cumulative (estimated)")
    summary_path = spec.extra.get("summary")
    if summary_path:
        summary = load_summary(summary_path)
        if summary.get("analytic_barrier") and "analytic_lambda_grid" in summary:
            grid = np.linspace(0.0, 1.0, len(summary["analytic_lambda_grid"]))
            ax.plot(grid, summary["analytic_lambda_grid"], "--",
                    label="local rate (closed form)")
            ax.plot(grid, summary["analytic_Lambda_grid"], "--",
                    label="cumulative (closed form)")
    ax.set_xlabel("annealing parameter")
    ax.set_ylabel("communication barrier")
    ax.legend()
    ax.set_title("communication barrier")


def _draw_schedule_evolution(ax, spec):
    table = load_table(spec.inputs[0], REQUIRED_COLUMNS["schedule_evolution"])
    if table["round"].size == 0:
        _empty_banner(ax, "no schedule rows")
        return
    chains = np.unique(table["chain"]).astype(int)
    for c in chains:
        mask = table["chain"] == c
        order = np.argsort(table["round"][mask])
        ax.plot(table["round"][mask][order], table["beta"][mask][order],
                marker=".", ms=3)
    positive = table["beta"][table["beta"] > 0]
    if positive.size:
        ax.set_yscale("log")
        ax.set_ylim(max(positive.min() * 0.5, 1e-12), 1.2)
    ax.set_xlabel("optimization round")
    ax.set_ylabel("annealing parameter (log scale)")
    ax.set_title("schedule evolution")


def _draw_acceptance_boxes(ax, spec):
    table = load_table(spec.inputs[0], REQUIRED_COLUMNS["acceptance_boxes"])
    if table["round"].size == 0:
        _empty_banner(ax, "no rejection records")
        return
    rounds = np.unique(table["round"]).astype(int)
    data = [1.0 - table["rhat"][table["round"] == r] for r in rounds]
    ax.boxplot(data, positions=rounds, widths=0.6)
    ax.set_xlabel("optimization round")
    ax.set_ylabel("per-pair swap acceptance")
    ax.set_ylim(-0.02, 1.02)
    ax.set_title("acceptance distribution per round")


def _draw_logz_progression(ax, spec):
    table = load_table(spec.inputs[0], REQUIRED_COLUMNS["logz_progression"])
    if table["round"].size == 0:
        _empty_banner(ax, "no estimates")
        return
    order = np.argsort(table["round"])
    ax.plot(table["round"][order], table["estimate"][order], marker="o", ms=3)
    ax.set_xlabel("optimization round")
    ax.set_ylabel("log normalizing-constant estimate")
    ax.set_title("normalizing-constant progression")


_DRAWERS = {
    "index_traces": _draw_index_traces,
    "barrier_curve": _draw_barrier_curve,
    "schedule_evolution": _draw_schedule_evolution,
    "acceptance_boxes": _draw_acceptance_boxes,
    "logz_progression": _draw_logz_progression,
}


def render(spec: FigureSpec) -> str:
    """Render one figure; returns the output path.  Raises SchemaError on bad input."""
    style = spec.style or _DEFAULT_STYLE
    if not Path(style).is_file():
        raise SchemaError(f"style file not found: {style}")
    with plt.style.context(style):
        fig, ax = plt.subplots()
        try:
            _DRAWERS[spec.kind](ax, spec)
            fig.tight_layout()
            fig.savefig(spec.output, metadata={"Software": "ptplots"})
        finally:
            plt.close(fig)
    return spec.output
