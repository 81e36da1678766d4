from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mlogs.dataset import (
    apply_limits,
    concat_wells,
    rename_curve,
    select_curves,
    summary_stats,
)
from mlogs.errors import AllMissing, InvalidRange, NameCollision, UnknownCurve

from helpers import make_dataset, oracle_quantile


class TestRename:
    def test_rename_keeps_position(self):
        ds = make_dataset(GR=[1.0], RHOB=[2.0], DTC=[3.0])
        out = rename_curve(ds, "GR", "GR_RAW")
        assert out.curve_names == ["GR_RAW", "RHOB", "DTC"]
        np.testing.assert_array_equal(out.curves["GR_RAW"].values, [1.0])

    def test_self_rename_is_identity(self):
        ds = make_dataset(GR=[1.0])
        assert rename_curve(ds, "GR", "GR") is ds

    def test_collision(self):
        ds = make_dataset(GR=[1.0], RHOB=[2.0])
        with pytest.raises(NameCollision):
            rename_curve(ds, "GR", "RHOB")

    def test_unknown(self):
        ds = make_dataset(GR=[1.0])
        with pytest.raises(UnknownCurve):
            rename_curve(ds, "XX", "YY")

    def test_rename_back_is_identity(self):
        ds = make_dataset(GR=[1.0, 2.0], RHOB=[3.0, 4.0])
        back = rename_curve(rename_curve(ds, "GR", "TMP"), "TMP", "GR")
        assert back.curve_names == ds.curve_names
        np.testing.assert_array_equal(back.curves["GR"].values, ds.curves["GR"].values)


class TestLimits:
    def test_out_of_range_masked(self):
        ds = make_dataset(GR=[10.0, 500.0, -5.0])
        out, masked = apply_limits(ds, "GR", 0.0, 300.0)
        assert masked == 2
        vals = out.curves["GR"].values
        assert vals[0] == 10.0 and np.isnan(vals[1]) and np.isnan(vals[2])

    def test_noop_bounds(self):
        ds = make_dataset(GR=[10.0, 500.0, -5.0])
        out, masked = apply_limits(ds, "GR", -5.0, 500.0)
        assert masked == 0
        np.testing.assert_array_equal(out.curves["GR"].values, ds.curves["GR"].values)

    def test_all_missing_curve(self):
        ds = make_dataset(GR=[np.nan, np.nan])
        _, masked = apply_limits(ds, "GR", 0.0, 1.0)
        assert masked == 0

    def test_invalid_range(self):
        ds = make_dataset(GR=[1.0])
        with pytest.raises(InvalidRange):
            apply_limits(ds, "GR", 2.0, 1.0)

    def test_idempotent(self):
        ds = make_dataset(GR=[10.0, 500.0, -5.0, np.nan])
        once, m1 = apply_limits(ds, "GR", 0.0, 300.0)
        twice, m2 = apply_limits(once, "GR", 0.0, 300.0)
        assert m2 == 0
        a, b = once.curves["GR"].values, twice.curves["GR"].values
        assert np.array_equal(a, b, equal_nan=True)

    def test_input_not_mutated(self):
        ds = make_dataset(GR=[10.0, 500.0])
        apply_limits(ds, "GR", 0.0, 300.0)
        np.testing.assert_array_equal(ds.curves["GR"].values, [10.0, 500.0])


class TestSelect:
    def test_subset(self):
        ds = make_dataset(GR=[1.0], RHOB=[2.0], DTC=[3.0])
        out = select_curves(ds, ["GR"])
        assert out.curve_names == ["GR"]

    def test_identity(self):
        ds = make_dataset(GR=[1.0], RHOB=[2.0])
        out = select_curves(ds, ["GR", "RHOB"])
        assert out.curve_names == ds.curve_names

    def test_order_follows_request(self):
        ds = make_dataset(GR=[1.0], RHOB=[2.0])
        out = select_curves(ds, ["RHOB", "GR"])
        assert out.curve_names == ["RHOB", "GR"]

    def test_data_bit_for_bit(self):
        ds = make_dataset(GR=[1.5, np.nan, 3.25], RHOB=[2.0, 2.1, 2.2])
        out = select_curves(ds, ["RHOB", "GR"])
        assert np.array_equal(
            out.curves["GR"].values, ds.curves["GR"].values, equal_nan=True
        )

    def test_unknown(self):
        ds = make_dataset(GR=[1.0])
        with pytest.raises(UnknownCurve):
            select_curves(ds, ["GR", "XX"])


class TestSummaryStats:
    def test_hand_computed_quartiles(self):
        # Type-7 oracle by hand: [1,2,3,4] -> p25 1.75, p50 2.5, p75 3.25.
        ds = make_dataset(GR=[1.0, 2.0, 3.0, 4.0])
        s = summary_stats(ds, "GR")
        assert s.mean == 2.5
        assert s.p25 == 1.75
        assert s.p50 == 2.5
        assert s.p75 == 3.25
        assert s.min == 1.0 and s.max == 4.0

    def test_singleton(self):
        ds = make_dataset(GR=[5.0])
        s = summary_stats(ds, "GR")
        assert s.count == 1
        assert s.mean == s.p25 == s.p50 == s.p75 == 5.0
        assert s.std is None

    def test_missing_excluded(self):
        ds = make_dataset(GR=[1.0, 2.0, 3.0, np.nan])
        s = summary_stats(ds, "GR")
        assert s.count == 3
        assert s.mean == 2.0

    def test_all_missing(self):
        ds = make_dataset(GR=[np.nan])
        with pytest.raises(AllMissing):
            summary_stats(ds, "GR")

    def test_quartiles_match_oracle_on_random_vectors(self):
        rng = np.random.default_rng(7)
        for _ in range(1000):
            n = int(rng.integers(4, 501))
            vals = rng.normal(0.0, 100.0, size=n)
            ds = make_dataset(GR=vals)
            s = summary_stats(ds, "GR")
            for q, got in ((0.25, s.p25), (0.5, s.p50), (0.75, s.p75)):
                assert abs(got - oracle_quantile(vals, q)) <= 1e-12

    def test_ordering_invariant(self):
        rng = np.random.default_rng(3)
        vals = rng.normal(size=50)
        s = summary_stats(make_dataset(GR=vals), "GR")
        assert s.min <= s.p25 <= s.p50 <= s.p75 <= s.max


class TestConcat:
    def test_row_counts(self):
        a = make_dataset(well="A", GR=[1.0, 2.0, 3.0])
        b = make_dataset(well="B", GR=[4.0, 5.0, 6.0])
        table = concat_wells([a, b], ["GR"])
        assert table.n_rows == 6
        assert table.well_order() == ["A", "B"]

    def test_duplicate_well_names_tagged(self):
        a = make_dataset(well="W", GR=[1.0])
        b = make_dataset(well="W", GR=[2.0])
        table = concat_wells([a, b], ["GR"])
        assert table.well_order() == ["W", "W_2"]

    def test_absent_curve_missing_not_dropped(self):
        a = make_dataset(well="A", GR=[1.0], RHOB=[2.0])
        b = make_dataset(well="B", GR=[3.0])
        table = concat_wells([a, b], ["GR", "RHOB"])
        assert table.n_rows == 2
        assert np.isnan(table.columns["RHOB"][1])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(-1e6, 1e6), min_size=2, max_size=60))
def test_quantiles_property(vals):
    ds = make_dataset(GR=vals)
    s = summary_stats(ds, "GR")
    for q, got in ((0.25, s.p25), (0.5, s.p50), (0.75, s.p75)):
        expect = oracle_quantile(vals, q)
        assert got == pytest.approx(expect, abs=1e-9 * max(1.0, abs(expect)))
