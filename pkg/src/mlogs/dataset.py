"""Depth-indexed well-log tables.

A :class:`WellDataset` is the currency every other module trades in: a
strictly increasing depth vector plus an ordered set of named curves.
Missing samples are carried as NaN inside each curve's value vector, so
``curve.missing`` is always derivable and no separate mask can drift out
of sync.

All operations return new dataset values; inputs are never mutated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    AllMissing,
    InvalidArgument,
    InvalidRange,
    NameCollision,
    UnknownCurve,
)

__all__ = [
    "CurveData",
    "WellDataset",
    "MultiWellTable",
    "StatSummary",
    "quantile",
    "rename_curve",
    "apply_limits",
    "select_curves",
    "summary_stats",
    "concat_wells",
]


def _as_float_vector(values: Sequence[float] | np.ndarray) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.ndim != 1:
        raise InvalidArgument(f"expected a 1-D vector, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class CurveData:
    """One log curve: a float vector with NaN marking missing samples."""

    values: np.ndarray
    unit: str = ""

    def __post_init__(self):
        arr = _as_float_vector(self.values)
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @property
    def missing(self) -> np.ndarray:
        return np.isnan(self.values)

    @property
    def n_missing(self) -> int:
        return int(np.isnan(self.values).sum())

    def compressed(self) -> np.ndarray:
        """Non-missing values only."""
        return self.values[~np.isnan(self.values)]

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class WellDataset:
    """Depth-indexed table of named curves for a single well."""

    well: str
    depth: np.ndarray
    curves: dict[str, CurveData] = field(default_factory=dict)
    depth_name: str = "DEPT"
    depth_unit: str = ""

    def __post_init__(self):
        depth = _as_float_vector(self.depth)
        if not np.all(np.isfinite(depth)):
            raise InvalidArgument("depth values must be finite")
        if len(depth) > 1 and not np.all(np.diff(depth) > 0):
            raise InvalidArgument("depth must be strictly increasing")
        depth.flags.writeable = False
        object.__setattr__(self, "depth", depth)
        for name, curve in self.curves.items():
            if len(curve) != len(depth):
                raise InvalidArgument(
                    f"curve {name!r} has {len(curve)} samples, expected {len(depth)}"
                )

    @property
    def n_rows(self) -> int:
        return len(self.depth)

    @property
    def curve_names(self) -> list[str]:
        return list(self.curves)

    def curve(self, name: str) -> CurveData:
        try:
            return self.curves[name]
        except KeyError:
            raise UnknownCurve(f"well {self.well!r} has no curve {name!r}") from None

    def with_curves(self, curves: dict[str, CurveData]) -> "WellDataset":
        return WellDataset(
            well=self.well,
            depth=self.depth,
            curves=curves,
            depth_name=self.depth_name,
            depth_unit=self.depth_unit,
        )


@dataclass(frozen=True)
class MultiWellTable:
    """Long-format pooled table: one row per (well, depth) sample.

    ``columns`` holds one value vector per curve, aligned with ``wells``
    and ``depth``; curves a source well lacked are NaN there rather than
    dropped.
    """

    curve_names: tuple[str, ...]
    wells: tuple[str, ...]
    depth: np.ndarray
    columns: dict[str, np.ndarray]

    @property
    def n_rows(self) -> int:
        return len(self.wells)

    def well_order(self) -> list[str]:
        seen: dict[str, None] = {}
        for w in self.wells:
            seen.setdefault(w)
        return list(seen)

    def column(self, name: str) -> np.ndarray:
        try:
            return self.columns[name]
        except KeyError:
            raise UnknownCurve(f"table has no column {name!r}") from None


@dataclass(frozen=True)
class StatSummary:
    """Descriptive statistics over the non-missing samples of one curve."""

    count: int
    mean: float
    std: float | None
    min: float
    p25: float
    p50: float
    p75: float
    max: float

    def as_dict(self) -> dict:
        return {
            "count": self.count,
            "mean": self.mean,
            "std": self.std,
            "min": self.min,
            "p25": self.p25,
            "p50": self.p50,
            "p75": self.p75,
            "max": self.max,
        }


def quantile(values: np.ndarray, q: float) -> float:
    """Linear interpolation between order statistics at position (n-1)*q.

    The single quantile rule shared by summary stats, box plots, and IQR
    fences.
    """
    return float(np.quantile(np.asarray(values, dtype=float), q))


def rename_curve(ds: WellDataset, old: str, new: str) -> WellDataset:
    """Rename a curve in place in the curve order; data untouched."""
    if old not in ds.curves:
        raise UnknownCurve(f"well {ds.well!r} has no curve {old!r}")
    if new == old:
        return ds
    if not new or any(ch.isspace() for ch in new) or "." in new:
        raise InvalidArgument(f"invalid curve mnemonic {new!r}")
    if new in ds.curves:
        raise NameCollision(f"curve {new!r} already exists")
    curves = {new if name == old else name: c for name, c in ds.curves.items()}
    return ds.with_curves(curves)


def apply_limits(
    ds: WellDataset, curve: str, lo: float, hi: float
) -> tuple[WellDataset, int]:
    """Mask values of ``curve`` outside [lo, hi] as missing.

    Returns the new dataset and the count of newly masked cells.
    Already-missing cells stay missing.
    """
    if lo > hi:
        raise InvalidRange(f"lo ({lo}) > hi ({hi})")
    c = ds.curve(curve)
    out_of_range = ~np.isnan(c.values) & ((c.values < lo) | (c.values > hi))
    newly_masked = int(out_of_range.sum())
    if newly_masked == 0:
        return ds, 0
    values = c.values.copy()
    values[out_of_range] = np.nan
    curves = dict(ds.curves)
    curves[curve] = CurveData(values, unit=c.unit)
    return ds.with_curves(curves), newly_masked


def select_curves(ds: WellDataset, names: Sequence[str]) -> WellDataset:
    """Keep only depth plus the named curves, in the order given."""
    for name in names:
        if name not in ds.curves:
            raise UnknownCurve(f"well {ds.well!r} has no curve {name!r}")
    return ds.with_curves({name: ds.curves[name] for name in names})


def summary_stats(ds: WellDataset, curve: str) -> StatSummary:
    """Count/mean/std plus type-7 quartiles over non-missing samples."""
    vals = ds.curve(curve).compressed()
    if len(vals) == 0:
        raise AllMissing(f"curve {curve!r} has no non-missing values")
    std = float(np.std(vals, ddof=1)) if len(vals) >= 2 else None
    return StatSummary(
        count=len(vals),
        mean=float(np.mean(vals)),
        std=std,
        min=float(np.min(vals)),
        p25=quantile(vals, 0.25),
        p50=quantile(vals, 0.50),
        p75=quantile(vals, 0.75),
        max=float(np.max(vals)),
    )


def _dedup_well_names(names: Iterable[str]) -> list[str]:
    # Second occurrence of A becomes A_2, third A_3, ...
    counts: dict[str, int] = {}
    out = []
    for name in names:
        counts[name] = counts.get(name, 0) + 1
        out.append(name if counts[name] == 1 else f"{name}_{counts[name]}")
    return out


def concat_wells(
    datasets: Sequence[WellDataset], curves: Sequence[str]
) -> MultiWellTable:
    """Pool several wells into one long-format table.

    Each dataset contributes one row per depth sample, tagged with the
    (de-duplicated) well name. A curve absent from some well yields NaN
    cells there; a curve present in no well at all is an error.
    """
    if not datasets:
        raise InvalidArgument("need at least one dataset")
    if not curves:
        raise InvalidArgument("curve list must be non-empty")
    for name in curves:
        if not any(name in ds.curves for ds in datasets):
            raise UnknownCurve(f"curve {name!r} exists in no dataset")

    tags = _dedup_well_names(ds.well for ds in datasets)
    wells: list[str] = []
    depth_parts: list[np.ndarray] = []
    col_parts: dict[str, list[np.ndarray]] = {name: [] for name in curves}
    for tag, ds in zip(tags, datasets):
        n = ds.n_rows
        wells.extend([tag] * n)
        depth_parts.append(ds.depth)
        for name in curves:
            if name in ds.curves:
                col_parts[name].append(ds.curves[name].values)
            else:
                col_parts[name].append(np.full(n, np.nan))
    depth = np.concatenate(depth_parts) if depth_parts else np.empty(0)
    columns = {
        name: np.concatenate(parts) if parts else np.empty(0)
        for name, parts in col_parts.items()
    }
    return MultiWellTable(
        curve_names=tuple(curves),
        wells=tuple(wells),
        depth=depth,
        columns=columns,
    )
