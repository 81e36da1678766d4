"""Chart-data payloads: histogram, scatter, box, pair grid, correlation, bar.

Pure numerics only; rendering belongs to the UI. Every payload knows how
to serialize itself to a JSON-ready dict, which is the contract shared by
the HTTP service and the CLI.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .dataset import MultiWellTable, WellDataset, quantile
from .errors import (
    AllMissing,
    InvalidArgument,
    LengthMismatch,
    TooFewCurves,
    TooManyCurves,
)

__all__ = [
    "Histogram",
    "ScatterData",
    "BoxStats",
    "CorrelationMatrix",
    "PairGrid",
    "histogram",
    "scatter_pairs",
    "pearson",
    "correlation_matrix",
    "box_stats",
    "pair_grid",
    "category_counts",
]

DEFAULT_BIN_COUNT = 40
PAIR_GRID_MAX = 8


@dataclass(frozen=True)
class Histogram:
    """Uniform-width bins over [min, max]; half-open, last bin closed."""

    edges: np.ndarray
    counts: np.ndarray
    excluded_missing: int

    def as_dict(self) -> dict:
        return {
            "edges": [float(e) for e in self.edges],
            "counts": [int(c) for c in self.counts],
            "excluded_missing": self.excluded_missing,
        }


@dataclass(frozen=True)
class ScatterData:
    """Pairwise-complete (x, y) points, each tagged with its source row."""

    x_name: str
    y_name: str
    row_index: np.ndarray
    x: np.ndarray
    y: np.ndarray

    @property
    def n_points(self) -> int:
        return len(self.row_index)

    def as_dict(self) -> dict:
        return {
            "x_name": self.x_name,
            "y_name": self.y_name,
            "rows": [int(i) for i in self.row_index],
            "x": [float(v) for v in self.x],
            "y": [float(v) for v in self.y],
        }


@dataclass(frozen=True)
class BoxStats:
    """Quartiles with 1.5*IQR whiskers clamped to actual data points."""

    q1: float
    median: float
    q3: float
    whisker_lo: float
    whisker_hi: float
    outlier_indices: tuple[int, ...]

    def as_dict(self) -> dict:
        return {
            "q1": self.q1,
            "median": self.median,
            "q3": self.q3,
            "whisker_lo": self.whisker_lo,
            "whisker_hi": self.whisker_hi,
            "outliers": list(self.outlier_indices),
        }


@dataclass(frozen=True)
class CorrelationMatrix:
    """Pairwise-complete Pearson matrix; undefined cells are None, never 0."""

    names: tuple[str, ...]
    r: list[list[float | None]]
    n_pairs: list[list[int]]

    def as_dict(self) -> dict:
        return {"names": list(self.names), "r": self.r, "n_pairs": self.n_pairs}


@dataclass(frozen=True)
class PairGrid:
    """Scatter matrix: histograms on the diagonal, scatters off it."""

    names: tuple[str, ...]
    cells: list[list[Union[Histogram, ScatterData]]]

    def as_dict(self) -> dict:
        return {
            "names": list(self.names),
            "cells": [
                [
                    {"kind": "histogram", **cell.as_dict()}
                    if isinstance(cell, Histogram)
                    else {"kind": "scatter", **cell.as_dict()}
                    for cell in row
                ]
                for row in self.cells
            ],
        }


def histogram(values: np.ndarray, bin_count: int = DEFAULT_BIN_COUNT) -> Histogram:
    """Bin the non-missing values into uniform edges over [min, max].

    Bins are half-open [e_i, e_{i+1}) with the last bin closed, so every
    in-range value lands in exactly one bin including the max. A constant
    vector gets the single bin [min, min + 1).
    """
    values = np.asarray(values, dtype=float)
    if bin_count < 1:
        raise InvalidArgument(f"bin_count must be >= 1, got {bin_count}")
    finite = values[~np.isnan(values)]
    excluded = len(values) - len(finite)
    if len(finite) == 0:
        raise AllMissing("histogram of an all-missing vector")
    lo, hi = float(finite.min()), float(finite.max())
    if lo == hi:
        edges = np.array([lo, lo + 1.0])
        counts = np.array([len(finite)])
    else:
        counts, edges = np.histogram(finite, bins=bin_count, range=(lo, hi))
    return Histogram(edges=edges, counts=counts, excluded_missing=excluded)


def scatter_pairs(ds: WellDataset, x: str, y: str) -> ScatterData:
    """Rows where both curves are non-missing, in depth order."""
    cx = ds.curve(x).values
    cy = ds.curve(y).values
    complete = ~np.isnan(cx) & ~np.isnan(cy)
    idx = np.nonzero(complete)[0]
    return ScatterData(
        x_name=x, y_name=y, row_index=idx, x=cx[idx], y=cy[idx]
    )


def pearson(x: np.ndarray, y: np.ndarray) -> float | None:
    """Pearson r over pairwise-complete rows.

    Returns None (undefined) when fewer than 2 complete pairs exist or
    either variance is zero.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(x) != len(y):
        raise LengthMismatch(f"vectors of length {len(x)} and {len(y)}")
    complete = ~np.isnan(x) & ~np.isnan(y)
    xs, ys = x[complete], y[complete]
    if len(xs) < 2:
        return None
    dx = xs - xs.mean()
    dy = ys - ys.mean()
    sxx = float(np.dot(dx, dx))
    syy = float(np.dot(dy, dy))
    if sxx == 0.0 or syy == 0.0:
        return None
    r = float(np.dot(dx, dy)) / np.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def correlation_matrix(ds: WellDataset, names: Sequence[str]) -> CorrelationMatrix:
    """Pairwise-complete Pearson r for every curve pair, symmetric."""
    if len(names) < 2:
        raise TooFewCurves("correlation matrix needs at least 2 curves")
    cols = [ds.curve(n).values for n in names]
    k = len(names)
    r: list[list[float | None]] = [[None] * k for _ in range(k)]
    n_pairs = [[0] * k for _ in range(k)]
    for i in range(k):
        complete_i = ~np.isnan(cols[i])
        n_i = int(complete_i.sum())
        n_pairs[i][i] = n_i
        if n_i >= 2 and float(np.var(cols[i][complete_i])) > 0.0:
            r[i][i] = 1.0
        for j in range(i + 1, k):
            n_pairs[i][j] = n_pairs[j][i] = int(
                (complete_i & ~np.isnan(cols[j])).sum()
            )
            rij = pearson(cols[i], cols[j])
            r[i][j] = r[j][i] = rij
    return CorrelationMatrix(names=tuple(names), r=r, n_pairs=n_pairs)


def box_stats(values: np.ndarray) -> BoxStats:
    """Quartiles, 1.5*IQR whiskers, and the indices beyond the whiskers."""
    values = np.asarray(values, dtype=float)
    present = ~np.isnan(values)
    vals = values[present]
    if len(vals) == 0:
        raise AllMissing("box stats of an all-missing vector")
    q1 = quantile(vals, 0.25)
    med = quantile(vals, 0.50)
    q3 = quantile(vals, 0.75)
    iqr = q3 - q1
    fence_lo = q1 - 1.5 * iqr
    fence_hi = q3 + 1.5 * iqr
    inside = vals[(vals >= fence_lo) & (vals <= fence_hi)]
    # Fences always bracket [q1, q3], so at least half the data is inside.
    whisker_lo = float(inside.min())
    whisker_hi = float(inside.max())
    out = present & ((values < whisker_lo) | (values > whisker_hi))
    return BoxStats(
        q1=q1,
        median=med,
        q3=q3,
        whisker_lo=whisker_lo,
        whisker_hi=whisker_hi,
        outlier_indices=tuple(int(i) for i in np.nonzero(out)[0]),
    )


def pair_grid(ds: WellDataset, names: Sequence[str]) -> PairGrid:
    """Grid of scatter_pairs off-diagonal and histograms on the diagonal.

    Cell (i, j) for i != j plots names[j] on x against names[i] on y.
    """
    if len(names) < 2:
        raise TooFewCurves("pair grid needs at least 2 curves")
    if len(names) > PAIR_GRID_MAX:
        raise TooManyCurves(f"pair grid capped at {PAIR_GRID_MAX} curves")
    cells: list[list[Union[Histogram, ScatterData]]] = []
    for i, yname in enumerate(names):
        row: list[Union[Histogram, ScatterData]] = []
        for j, xname in enumerate(names):
            if i == j:
                row.append(histogram(ds.curve(xname).values))
            else:
                row.append(scatter_pairs(ds, xname, yname))
        cells.append(row)
    return PairGrid(names=tuple(names), cells=cells)


def category_counts(table: MultiWellTable) -> list[tuple[str, int]]:
    """Rows per well, in insertion order: the canonical bar-chart payload."""
    counts: dict[str, int] = {}
    for w in table.wells:
        counts[w] = counts.get(w, 0) + 1
    return list(counts.items())
