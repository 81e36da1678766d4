from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mlogs.dataset import MultiWellTable, concat_wells
from mlogs.eda import (
    box_stats,
    category_counts,
    correlation_matrix,
    histogram,
    pair_grid,
    pearson,
    scatter_pairs,
)
from mlogs.errors import (
    AllMissing,
    LengthMismatch,
    TooFewCurves,
    TooManyCurves,
    UnknownCurve,
)
from mlogs.outliers import iqr_flags

from helpers import make_dataset, oracle_bin, oracle_pearson


class TestHistogram:
    def test_hand_binned_uniform(self):
        # [0..9] over 5 bins: edges 0,1.8,3.6,5.4,7.2,9; two values per bin
        # ({0,1},{2,3},{4,5},{6,7},{8,9}) with 9 landing in the closed last bin.
        h = histogram(np.arange(10.0), bin_count=5)
        np.testing.assert_allclose(h.edges, [0.0, 1.8, 3.6, 5.4, 7.2, 9.0])
        np.testing.assert_array_equal(h.counts, [2, 2, 2, 2, 2])
        assert h.excluded_missing == 0

    def test_degenerate_range_single_bin(self):
        h = histogram(np.array([7.0, 7.0, 7.0]), bin_count=13)
        np.testing.assert_array_equal(h.edges, [7.0, 8.0])
        np.testing.assert_array_equal(h.counts, [3])

    def test_missing_excluded(self):
        vals = np.arange(10.0)
        vals[3] = np.nan
        vals[4] = np.nan
        h = histogram(vals, bin_count=5)
        assert h.counts.sum() == 8
        assert h.excluded_missing == 2

    def test_count_conservation(self):
        rng = np.random.default_rng(11)
        vals = rng.normal(size=500)
        vals[rng.random(500) < 0.3] = np.nan
        h = histogram(vals)
        assert h.counts.sum() + h.excluded_missing == len(vals)

    def test_matches_linear_scan_oracle(self):
        rng = np.random.default_rng(12)
        vals = rng.uniform(-5.0, 5.0, size=300)
        h = histogram(vals, bin_count=17)
        assert list(h.counts) == oracle_bin(vals, list(h.edges))

    def test_all_missing(self):
        with pytest.raises(AllMissing):
            histogram(np.array([np.nan, np.nan]))


class TestScatter:
    def test_pairwise_complete(self):
        dtc = np.arange(10.0)
        rhob = np.arange(10.0) * 0.1
        rhob[2] = np.nan
        rhob[7] = np.nan
        ds = make_dataset(DTC=dtc, RHOB=rhob)
        s = scatter_pairs(ds, "DTC", "RHOB")
        assert s.n_points == 8
        assert 2 not in s.row_index and 7 not in s.row_index

    def test_identity_pairing(self):
        ds = make_dataset(GR=[1.0, 2.0, 3.0])
        s = scatter_pairs(ds, "GR", "GR")
        np.testing.assert_array_equal(s.x, s.y)

    def test_disjoint_masks_empty(self):
        ds = make_dataset(A=[1.0, np.nan], B=[np.nan, 2.0])
        s = scatter_pairs(ds, "A", "B")
        assert s.n_points == 0

    def test_unknown_curve(self):
        ds = make_dataset(GR=[1.0])
        with pytest.raises(UnknownCurve):
            scatter_pairs(ds, "GR", "XX")


class TestPearson:
    def test_perfect_linear(self):
        assert pearson(np.array([1.0, 2, 3]), np.array([2.0, 4, 6])) == 1.0

    def test_perfect_inverse(self):
        assert pearson(np.array([1.0, 2, 3]), np.array([3.0, 2, 1])) == -1.0

    def test_hand_computed_point_eight(self):
        # cov-sum 4, var-sums 5 and 5 -> r = 4/5.
        r = pearson(np.array([1.0, 2, 3, 4]), np.array([1.0, 3, 2, 4]))
        assert r == pytest.approx(0.8, abs=1e-12)

    def test_undefined_cases(self):
        assert pearson(np.array([1.0, 1, 1]), np.array([1.0, 2, 3])) is None
        assert pearson(np.array([1.0, np.nan]), np.array([np.nan, 1.0])) is None

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            pearson(np.array([1.0]), np.array([1.0, 2.0]))

    def test_symmetry_and_affine_invariance(self):
        rng = np.random.default_rng(5)
        x = rng.normal(size=100)
        y = rng.normal(size=100) + 0.5 * x
        assert pearson(x, y) == pytest.approx(pearson(y, x), abs=1e-15)
        assert pearson(x, 3.5 * x + 2.0) == pytest.approx(1.0, abs=1e-12)
        assert pearson(x, -2.0 * x + 1.0) == pytest.approx(-1.0, abs=1e-12)
        scaled = pearson(x * 100.0 + 7.0, y * 0.001 - 4.0)
        assert scaled == pytest.approx(pearson(x, y), abs=1e-12)


class TestCorrelationMatrix:
    def test_perfectly_correlated_pair(self):
        ds = make_dataset(A=[1.0, 2, 3], B=[2.0, 4, 6])
        m = correlation_matrix(ds, ["A", "B"])
        assert m.r[0][1] == 1.0
        assert m.r[0][0] == 1.0 and m.r[1][1] == 1.0

    def test_constant_curve_flagged_undefined(self):
        ds = make_dataset(A=[1.0, 2, 3], K=[5.0, 5, 5])
        m = correlation_matrix(ds, ["A", "K"])
        assert m.r[0][1] is None
        assert m.r[1][1] is None

    def test_matches_bruteforce_oracle(self):
        rng = np.random.default_rng(9)
        curves = {}
        for j in range(5):
            vals = rng.normal(size=200)
            vals[rng.random(200) < 0.25] = np.nan
            curves[f"C{j}"] = vals
        ds = make_dataset(**curves)
        names = list(curves)
        m = correlation_matrix(ds, names)
        for i in range(5):
            for j in range(5):
                expect = (
                    1.0 if i == j else oracle_pearson(curves[names[i]], curves[names[j]])
                )
                if i == j and oracle_pearson(curves[names[i]], curves[names[j]]) is None:
                    expect = None
                got = m.r[i][j]
                if expect is None:
                    assert got is None
                else:
                    assert got == pytest.approx(expect, abs=1e-12)
                assert m.r[i][j] == m.r[j][i]

    def test_n_pairs_counts(self):
        ds = make_dataset(A=[1.0, np.nan, 3.0], B=[1.0, 2.0, np.nan])
        m = correlation_matrix(ds, ["A", "B"])
        assert m.n_pairs[0][1] == 1
        assert m.n_pairs[0][0] == 2


class TestBoxStats:
    def test_hand_computed_with_outlier(self):
        # [1..9, 100]: q1 3.25, med 5.5, q3 7.75, fences [-3.5, 14.5],
        # whiskers clamp to 1 and 9, and only the 100 falls outside.
        vals = np.array([*range(1, 10), 100.0])
        b = box_stats(vals)
        assert b.q1 == 3.25
        assert b.median == 5.5
        assert b.q3 == 7.75
        assert b.whisker_lo == 1.0
        assert b.whisker_hi == 9.0
        assert b.outlier_indices == (9,)

    def test_constant_vector(self):
        b = box_stats(np.array([5.0, 5, 5, 5]))
        assert b.q1 == b.median == b.q3 == b.whisker_lo == b.whisker_hi == 5.0
        assert b.outlier_indices == ()

    def test_three_values_no_outliers(self):
        # Oracle: q1 1.5, q3 2.5, IQR 1, fences [0, 4] -> nothing outside.
        b = box_stats(np.array([1.0, 2.0, 3.0]))
        assert b.q1 == 1.5 and b.q3 == 2.5
        assert b.outlier_indices == ()

    def test_outliers_equal_iqr_flags(self):
        rng = np.random.default_rng(21)
        for _ in range(200):
            n = int(rng.integers(4, 120))
            vals = rng.normal(size=n) * rng.uniform(0.1, 50.0)
            vals[rng.random(n) < 0.1] = np.nan
            if np.isnan(vals).sum() > n - 4:
                continue
            assert list(box_stats(vals).outlier_indices) == iqr_flags(vals, k=1.5)


class TestPairGrid:
    def test_shape_and_cell_types(self):
        ds = make_dataset(A=[1.0, 2, 3], B=[2.0, 3, 4], C=[5.0, 1, 2])
        g = pair_grid(ds, ["A", "B", "C"])
        assert len(g.cells) == 3 and all(len(row) == 3 for row in g.cells)
        kinds = [
            [type(cell).__name__ for cell in row] for row in g.cells
        ]
        assert kinds[0] == ["Histogram", "ScatterData", "ScatterData"]
        assert kinds[1][1] == "Histogram"

    def test_cell_delegates_to_scatter_pairs(self):
        ds = make_dataset(A=[1.0, np.nan, 3], B=[2.0, 3, 4])
        g = pair_grid(ds, ["A", "B"])
        direct = scatter_pairs(ds, "B", "A")
        assert g.cells[0][1].n_points == direct.n_points
        assert g.cells[0][1].x_name == "B" and g.cells[0][1].y_name == "A"

    def test_bounds(self):
        ds = make_dataset(**{f"C{j}": [1.0, 2.0] for j in range(9)})
        with pytest.raises(TooFewCurves):
            pair_grid(ds, ["C0"])
        with pytest.raises(TooManyCurves):
            pair_grid(ds, [f"C{j}" for j in range(9)])


class TestCategoryCounts:
    def test_two_wells(self):
        a = make_dataset(well="A", GR=[1.0, 2, 3])
        b = make_dataset(well="B", GR=[1.0, 2, 3, 4, 5])
        table = concat_wells([a, b], ["GR"])
        assert category_counts(table) == [("A", 3), ("B", 5)]

    def test_empty_table(self):
        table = MultiWellTable(
            curve_names=("GR",), wells=(), depth=np.empty(0), columns={"GR": np.empty(0)}
        )
        assert category_counts(table) == []

    def test_single_well(self):
        a = make_dataset(well="A", GR=[1.0])
        assert category_counts(concat_wells([a], ["GR"])) == [("A", 1)]


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.floats(-1e4, 1e4), min_size=1, max_size=80),
    st.integers(min_value=1, max_value=20),
)
def test_histogram_conservation_property(vals, bins):
    h = histogram(np.array(vals), bin_count=bins)
    assert h.counts.sum() + h.excluded_missing == len(vals)
    assert len(h.edges) == len(h.counts) + 1
    assert np.all(np.diff(h.edges) > 0)
