"""Sweep CSV loading.

This package never recomputes physics: a CSV is parsed into named columns
and handed to the renderers as-is. Empty fields (failed or unrequested grid
points) become NaN and leave holes in the plots.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

AXIS_COLUMNS = ("T1", "T2", "J")


class RenderError(Exception):
    """Raised when a CSV lacks something a figure needs."""


@dataclass
class SweepData:
    path: str
    columns: dict

    @classmethod
    def load(cls, path: str) -> "SweepData":
        with open(path, "r", encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise RenderError(f"{path}: empty CSV") from None
            rows = [row for row in reader if row]
        columns = {name: [] for name in header}
        for row in rows:
            if len(row) != len(header):
                raise RenderError(f"{path}: row with {len(row)} fields, header has {len(header)}")
            for name, value in zip(header, row):
                columns[name].append(value)
        return cls(path=path, columns=columns)

    def require(self, *names: str) -> None:
        """Fail naming the first missing column."""
        for name in names:
            if name not in self.columns:
                raise RenderError(f"{self.path}: missing column '{name}'")

    def floats(self, name: str) -> np.ndarray:
        self.require(name)
        return np.array(
            [float(v) if v.strip() else np.nan for v in self.columns[name]], dtype=float
        )

    def population_columns(self) -> list[str]:
        names = [n for n in self.columns if n.startswith("p") and n[1:].isdigit()]
        return sorted(names, key=lambda n: int(n[1:]))

    def varying_axes(self) -> list[str]:
        """Axis columns that actually sweep, in header order."""
        out = []
        for name in AXIS_COLUMNS:
            if name in self.columns and len(set(self.columns[name])) > 1:
                out.append(name)
        return out


def pivot(x: np.ndarray, y: np.ndarray, z: np.ndarray):
    """Arrange scattered grid samples into a (len(ys), len(xs)) array.

    Returns (xs, ys, Z) with Z[j, i] the value at (xs[i], ys[j]); missing
    combinations stay NaN.
    """
    xs = np.unique(x)
    ys = np.unique(y)
    xi = {v: i for i, v in enumerate(xs)}
    yi = {v: i for i, v in enumerate(ys)}
    grid = np.full((ys.size, xs.size), np.nan)
    for xv, yv, zv in zip(x, y, z):
        grid[yi[yv], xi[xv]] = zv
    return xs, ys, grid
