"""Regenerate the synthetic LAS fixtures checked into this directory.

Deterministic (fixed seeds): running it again reproduces the same files.

    python tests/fixtures/make_fixtures.py

fracture_a/b/c.las carry GR, LLD, LLS, NPHI, RHOB, DTC, DTS plus a 0/1
FRACTURE label derived from planted fracture zones; the zone signature
(slower sonic, lower density/resistivity, higher porosity) is strong
enough that the labels are recoverable from the features by design.
big_10k.las is the large-well fixture for brush/linked-view timing.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from mlogs.dataset import CurveData, WellDataset
from mlogs.las_io import dataset_to_las, write_las

HERE = Path(__file__).parent


def fracture_well(name: str, seed: int, n: int = 400, depth0: float = 1500.0,
                  with_gaps: bool = False) -> WellDataset:
    rng = np.random.default_rng(seed)
    depth = depth0 + 0.5 * np.arange(n)

    zone = np.zeros(n)
    n_zones = 4
    starts = rng.choice(np.arange(20, n - 60), size=n_zones, replace=False)
    for s in np.sort(starts):
        width = int(rng.integers(20, 45))
        zone[s : s + width] = 1.0

    def noise(scale):
        return rng.normal(0.0, scale, size=n)

    curves = {
        "GR": CurveData(70.0 + noise(8.0) + 30.0 * zone, unit="GAPI"),
        "LLD": CurveData(120.0 + noise(10.0) - 60.0 * zone, unit="OHMM"),
        "LLS": CurveData(100.0 + noise(8.0) - 40.0 * zone, unit="OHMM"),
        "NPHI": CurveData(0.18 + noise(0.02) + 0.10 * zone, unit="V/V"),
        "RHOB": CurveData(2.50 + noise(0.04) - 0.25 * zone, unit="G/C3"),
        "DTC": CurveData(68.0 + noise(3.0) + 20.0 * zone, unit="US/F"),
        "DTS": CurveData(120.0 + noise(5.0) + 35.0 * zone, unit="US/F"),
        "FRACTURE": CurveData(zone, unit=""),
    }
    if with_gaps:
        gr = curves["GR"].values.copy()
        gaps = rng.choice(n, size=6, replace=False)
        gr[gaps] = np.nan
        curves["GR"] = CurveData(gr, unit="GAPI")
    return WellDataset(well=name, depth=depth, curves=curves,
                       depth_name="DEPT", depth_unit="M")


def big_well(name: str, seed: int, n: int = 10_000, depth0: float = 1000.0) -> WellDataset:
    rng = np.random.default_rng(seed)
    depth = depth0 + 0.5 * np.arange(n)
    t = np.linspace(0.0, 14.0, n)
    gr = 75.0 + 20.0 * np.sin(t) + rng.normal(0.0, 6.0, n)
    rhob = 2.45 + 0.08 * np.cos(t * 0.7) + rng.normal(0.0, 0.03, n)
    dtc = 70.0 + 8.0 * np.sin(t * 0.4 + 1.0) + rng.normal(0.0, 2.0, n)
    # Plant a few gross outliers and gaps so the cleaning workflow has work.
    spikes = rng.choice(n, size=25, replace=False)
    gr[spikes[:12]] += 180.0
    rhob[spikes[12:20]] -= 1.2
    dtc[spikes[20:]] += 90.0
    gaps = rng.choice(n, size=40, replace=False)
    rhob[gaps] = np.nan
    return WellDataset(
        well=name,
        depth=depth,
        curves={
            "GR": CurveData(gr, unit="GAPI"),
            "RHOB": CurveData(rhob, unit="G/C3"),
            "DTC": CurveData(dtc, unit="US/F"),
        },
        depth_name="DEPT",
        depth_unit="M",
    )


def main() -> None:
    wells = [
        fracture_well("FRAC A", seed=101, depth0=1500.0, with_gaps=True),
        fracture_well("FRAC B", seed=202, depth0=2100.0, with_gaps=True),
        fracture_well("FRAC C", seed=303, depth0=2700.0),
        big_well("BIG 10K", seed=404),
    ]
    names = ["fracture_a.las", "fracture_b.las", "fracture_c.las", "big_10k.las"]
    for ds, fname in zip(wells, names):
        text = write_las(dataset_to_las(ds))
        (HERE / "las" / fname).write_text(text)
        print(f"wrote {fname}: {ds.n_rows} rows, {len(ds.curves)} curves")


if __name__ == "__main__":
    main()
