"""Shared builders and independent oracles used across the test suite.

The oracles here deliberately avoid the library's own code paths: plain
sorting, explicit loops, and direct formulas, so a test never checks an
implementation against itself.
"""

from __future__ import annotations

import math

import numpy as np

from mlogs.dataset import CurveData, WellDataset


def make_dataset(well: str = "W", depth=None, **curves) -> WellDataset:
    """Build a small dataset; curve values given as plain lists (NaN = missing)."""
    first = next(iter(curves.values())) if curves else []
    if depth is None:
        depth = [float(i) for i in range(len(first))]
    return WellDataset(
        well=well,
        depth=np.asarray(depth, dtype=float),
        curves={name: CurveData(np.asarray(vals, dtype=float)) for name, vals in curves.items()},
        depth_unit="M",
    )


def oracle_quantile(values, q: float) -> float:
    """Sort-and-interpolate quantile at position (n-1)*q, written longhand."""
    xs = sorted(float(v) for v in values)
    pos = (len(xs) - 1) * q
    lo = math.floor(pos)
    hi = math.ceil(pos)
    if lo == hi:
        return xs[lo]
    frac = pos - lo
    return xs[lo] * (1.0 - frac) + xs[hi] * frac


def oracle_pearson(x, y) -> float | None:
    """Pairwise-complete Pearson r with explicit summation loops."""
    pairs = [
        (float(a), float(b))
        for a, b in zip(x, y)
        if not (math.isnan(a) or math.isnan(b))
    ]
    n = len(pairs)
    if n < 2:
        return None
    mx = sum(a for a, _ in pairs) / n
    my = sum(b for _, b in pairs) / n
    sxy = sum((a - mx) * (b - my) for a, b in pairs)
    sxx = sum((a - mx) ** 2 for a, _ in pairs)
    syy = sum((b - my) ** 2 for _, b in pairs)
    if sxx == 0.0 or syy == 0.0:
        return None
    return sxy / math.sqrt(sxx * syy)


def oracle_bin(values, edges) -> list[int]:
    """Histogram counts by linear scan: half-open bins, last bin closed."""
    counts = [0] * (len(edges) - 1)
    for v in values:
        if math.isnan(v) or v < edges[0] or v > edges[-1]:
            continue
        if v == edges[-1]:
            counts[-1] += 1
            continue
        for b in range(len(edges) - 1):
            if edges[b] <= v < edges[b + 1]:
                counts[b] += 1
                break
    return counts


def oracle_in_rect(x, y, x_lo, x_hi, y_lo, y_hi) -> list[int]:
    """Naive full-scan point-in-rectangle membership."""
    rows = []
    for i, (a, b) in enumerate(zip(x, y)):
        if math.isnan(a) or math.isnan(b):
            continue
        if x_lo <= a <= x_hi and y_lo <= b <= y_hi:
            rows.append(i)
    return rows
