"""Outlier flagging, brush selection, linked histograms, and removal.

The statistical flaggers (z-score, IQR fence) propose; the human
disposes: flags become a SelectionSet the user reviews, combines, and
finally applies as mask (set-to-missing, depth grid preserved) or drop
(rows removed).
"""

from __future__ import annotations

import uuid
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .dataset import CurveData, WellDataset, quantile
from .errors import (
    AllMissing,
    EdgeMismatch,
    IndexOutOfRange,
    InvalidArgument,
    InvalidRange,
    TooFewValues,
    WellMismatch,
)

__all__ = [
    "SelectionSet",
    "BrushRect",
    "RemovalReport",
    "zscore_flags",
    "iqr_flags",
    "brush_select",
    "combine",
    "filtered_histogram",
    "apply_removal",
]

PROVENANCES = ("brush", "zscore", "iqr", "manual")


def _new_id() -> str:
    return uuid.uuid4().hex[:12]


@dataclass(frozen=True)
class SelectionSet:
    """A named set of flagged row indices for one well."""

    id: str
    well: str
    rows: tuple[int, ...]
    provenance: str
    created_from: str = ""

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise InvalidArgument(f"unknown provenance {self.provenance!r}")
        rows = tuple(sorted({int(r) for r in self.rows}))
        if rows and rows[0] < 0:
            raise IndexOutOfRange(f"negative row index {rows[0]}")
        object.__setattr__(self, "rows", rows)

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "well": self.well,
            "provenance": self.provenance,
            "rows": list(self.rows),
            "created_from": self.created_from,
        }

    @classmethod
    def from_rows(
        cls,
        well: str,
        rows: Iterable[int],
        provenance: str = "manual",
        created_from: str = "",
        id: str | None = None,
    ) -> "SelectionSet":
        return cls(
            id=id or _new_id(),
            well=well,
            rows=tuple(rows),
            provenance=provenance,
            created_from=created_from,
        )


@dataclass(frozen=True)
class BrushRect:
    """Closed rectangle in curve-value space; edge points are selected."""

    x_curve: str
    y_curve: str
    x_lo: float
    x_hi: float
    y_lo: float
    y_hi: float

    def __post_init__(self):
        for v in (self.x_lo, self.x_hi, self.y_lo, self.y_hi):
            if not np.isfinite(v):
                raise InvalidRange("brush bounds must be finite")
        if self.x_lo > self.x_hi or self.y_lo > self.y_hi:
            raise InvalidRange("brush rectangle has lo > hi")


@dataclass(frozen=True)
class RemovalReport:
    rows: int
    cells: int

    def as_dict(self) -> dict:
        return {"rows": self.rows, "cells": self.cells}


def zscore_flags(values: np.ndarray, threshold: float = 3.0) -> list[int]:
    """Indices where |x - mean| / std exceeds the threshold (sample std).

    A constant vector flags nothing: its std is zero, so no point can
    stand out.
    """
    if threshold <= 0:
        raise InvalidArgument(f"threshold must be > 0, got {threshold}")
    values = np.asarray(values, dtype=float)
    present = ~np.isnan(values)
    vals = values[present]
    if len(vals) == 0:
        raise AllMissing("z-score of an all-missing vector")
    if len(vals) < 2:
        raise TooFewValues("z-score needs at least 2 non-missing values")
    std = float(np.std(vals, ddof=1))
    if std == 0.0:
        return []
    z = np.abs(values - float(vals.mean())) / std
    flagged = present & (z > threshold)
    return [int(i) for i in np.nonzero(flagged)[0]]


def iqr_flags(values: np.ndarray, k: float = 1.5) -> list[int]:
    """Indices outside the Tukey fences [q1 - k*IQR, q3 + k*IQR]."""
    if k <= 0:
        raise InvalidArgument(f"k must be > 0, got {k}")
    values = np.asarray(values, dtype=float)
    present = ~np.isnan(values)
    vals = values[present]
    if len(vals) < 4:
        raise TooFewValues("IQR fences need at least 4 non-missing values")
    q1 = quantile(vals, 0.25)
    q3 = quantile(vals, 0.75)
    iqr = q3 - q1
    lo, hi = q1 - k * iqr, q3 + k * iqr
    flagged = present & ((values < lo) | (values > hi))
    return [int(i) for i in np.nonzero(flagged)[0]]


def brush_select(ds: WellDataset, rect: BrushRect) -> SelectionSet:
    """Rows whose (x, y) values are non-missing and inside the rectangle."""
    x = ds.curve(rect.x_curve).values
    y = ds.curve(rect.y_curve).values
    inside = (
        ~np.isnan(x)
        & ~np.isnan(y)
        & (x >= rect.x_lo)
        & (x <= rect.x_hi)
        & (y >= rect.y_lo)
        & (y <= rect.y_hi)
    )
    desc = (
        f"brush {rect.x_curve}x{rect.y_curve} "
        f"[{rect.x_lo}, {rect.x_hi}]x[{rect.y_lo}, {rect.y_hi}]"
    )
    return SelectionSet.from_rows(
        well=ds.well,
        rows=(int(i) for i in np.nonzero(inside)[0]),
        provenance="brush",
        created_from=desc,
    )


def combine(a: SelectionSet, b: SelectionSet, op: str) -> SelectionSet:
    """Set algebra over two selections of the same well."""
    if a.well != b.well:
        raise WellMismatch(f"selections belong to wells {a.well!r} and {b.well!r}")
    sa, sb = set(a.rows), set(b.rows)
    if op == "union":
        rows = sa | sb
    elif op == "intersect":
        rows = sa & sb
    elif op == "difference":
        rows = sa - sb
    else:
        raise InvalidArgument(f"unknown set operation {op!r}")
    return SelectionSet.from_rows(
        well=a.well,
        rows=rows,
        provenance="manual",
        created_from=f"{op}({a.id}, {b.id})",
    )


def filtered_histogram(
    values: np.ndarray, selection: Sequence[int], edges: np.ndarray
) -> np.ndarray:
    """Counts over only the selected non-missing rows, reusing ``edges``.

    Sharing the unfiltered histogram's edges is what lets a linked view
    overlay filtered bars 1:1 on the base bars.
    """
    values = np.asarray(values, dtype=float)
    edges = np.asarray(edges, dtype=float)
    if len(edges) < 2 or np.any(np.diff(edges) <= 0):
        raise EdgeMismatch("edges must be at least 2 strictly increasing values")
    idx = np.asarray(sorted({int(i) for i in selection}), dtype=int)
    if len(idx) and (idx[0] < 0 or idx[-1] >= len(values)):
        raise IndexOutOfRange("selection index outside the vector")
    subset = values[idx] if len(idx) else np.empty(0)
    subset = subset[~np.isnan(subset)]
    counts, _ = np.histogram(subset, bins=edges)
    return counts


def apply_removal(
    ds: WellDataset,
    selection: SelectionSet,
    mode: str = "mask",
    curves: Sequence[str] | None = None,
) -> tuple[WellDataset, RemovalReport]:
    """Apply a reviewed selection to the dataset.

    mode="mask" sets the selected rows' values to missing in the named
    curves (all curves when ``curves`` is None), preserving the depth
    grid. mode="drop" removes the rows outright from depth and every
    curve. Returns the new dataset and a report of rows affected and
    cells changed.
    """
    if selection.well != ds.well:
        raise WellMismatch(
            f"selection is for well {selection.well!r}, dataset is {ds.well!r}"
        )
    rows = np.asarray(selection.rows, dtype=int)
    if len(rows) and rows[-1] >= ds.n_rows:
        raise IndexOutOfRange(
            f"selection row {int(rows[-1])} outside dataset of {ds.n_rows} rows"
        )
    if mode not in ("mask", "drop"):
        raise InvalidArgument(f"unknown removal mode {mode!r}")

    if mode == "mask":
        names = list(ds.curves) if curves is None else list(curves)
        new_curves = dict(ds.curves)
        cells = 0
        for name in names:
            c = ds.curve(name)
            if len(rows) == 0:
                continue
            hits = rows[~np.isnan(c.values[rows])]
            cells += len(hits)
            if len(hits):
                vals = c.values.copy()
                vals[hits] = np.nan
                new_curves[name] = CurveData(vals, unit=c.unit)
        return ds.with_curves(new_curves), RemovalReport(rows=len(rows), cells=cells)

    keep = np.ones(ds.n_rows, dtype=bool)
    keep[rows] = False
    new_curves = {
        name: CurveData(c.values[keep], unit=c.unit) for name, c in ds.curves.items()
    }
    dropped_cells = int(len(rows)) * len(ds.curves)
    new_ds = WellDataset(
        well=ds.well,
        depth=ds.depth[keep],
        curves=new_curves,
        depth_name=ds.depth_name,
        depth_unit=ds.depth_unit,
    )
    return new_ds, RemovalReport(rows=len(rows), cells=dropped_cells)
