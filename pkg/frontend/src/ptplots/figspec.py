"""Figure specifications and CSV schema validation."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

FIGURE_KINDS = (
    "index_traces",
    "barrier_curve",
    "schedule_evolution",
    "acceptance_boxes",
    "logz_progression",
)

REQUIRED_COLUMNS = {
    "index_traces": ("scan", "machine", "index"),
    "barrier_curve": ("beta", "lambda_hat", "Lambda_hat"),
    "schedule_evolution": ("round", "chain", "beta"),
    "acceptance_boxes": ("round", "pair", "rhat"),
    "logz_progression": ("round", "estimate"),
}


class SchemaError(ValueError):
    """An input file is missing, unreadable, or lacks required columns."""


@dataclass
class FigureSpec:
    kind: str
    inputs: list
    output: str
    style: str | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in FIGURE_KINDS:
            raise SchemaError(f"unknown figure kind {self.kind!r}; one of {FIGURE_KINDS}")
        if not self.inputs:
            raise SchemaError("at least one input file is required")
        self.inputs = [str(p) for p in self.inputs]


def load_table(path: str, required: tuple) -> dict:
    """Read a CSV into {column: float array}; fail loudly on schema problems."""
    p = Path(path)
    if not p.is_file():
        raise SchemaError(f"input file not found: {path}")
    with open(p, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path} is empty (no header)")
        missing = [c for c in required if c not in header]
        if missing:
            raise SchemaError(f"{path} lacks required columns {missing}; has {header}")
        rows = [row for row in reader if row]
    table = {}
    for col in header:
        j = header.index(col)
        try:
            table[col] = np.array([float(r[j]) for r in rows])
        except (ValueError, IndexError) as exc:
            raise SchemaError(f"{path}: column {col!r} is not numeric: {exc}")
    return table


def load_summary(path: str) -> dict:
    p = Path(path)
    if not p.is_file():
        raise SchemaError(f"summary file not found: {path}")
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}")
