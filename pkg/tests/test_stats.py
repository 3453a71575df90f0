"""Tests for period statistics."""

from __future__ import annotations

from pathlib import Path

import pytest

from laver_tables import stats
from laver_tables.const import ExportFormat
from laver_tables.exceptions import BoundError, DomainError, InsufficientStoreError
from laver_tables.models import FreqReport, GrowthReport
from laver_tables.store import ThresholdStore, scan


class TestFrequencyTable:
    """Tests for frequency_table."""

    def test_order_8(self, store: ThresholdStore):
        """Test the counts of p <= 8."""
        report = stats.frequency_table(store, 3)
        assert report.counts == (1, 3, 3, 1)
        assert report.frequencies == (0.125, 0.375, 0.375, 0.125)

    def test_order_4096(self, store: ThresholdStore, frequency_tables):
        """Test the published counts of p <= 2^12."""
        report = stats.frequency_table(store, 12)
        assert list(report.counts) == frequency_tables["counts"]["12"]
        assert sum(report.counts) == 4096

    def test_order_zero(self, store: ThresholdStore):
        """Test n = 0 counts the single element 1."""
        assert stats.frequency_table(store, 0).counts == (1,)

    def test_uncovered(self, store: ThresholdStore):
        """Test levels beyond the store raise."""
        with pytest.raises(InsufficientStoreError):
            stats.frequency_table(store, 15)

    def test_bad_level(self, store: ThresholdStore):
        """Test negative levels are rejected."""
        with pytest.raises(DomainError):
            stats.frequency_table(store, -1)

    def test_order_2_22(self, large_store: ThresholdStore, frequency_tables):
        """Test the published percentages at 2^22."""
        report = stats.frequency_table(large_store, 22)
        expected = frequency_tables["percentages"]["22"]
        percentages = list(report.percentages()[1 : len(expected) + 1])
        assert percentages == pytest.approx(expected, abs=1e-6)


class TestDoubling:
    """Tests for doubling_counts and the recursion identity."""

    @pytest.mark.parametrize("n", [4, 5, 8, 12])
    def test_totals(self, store: ThresholdStore, doubling_table, n):
        """Test published doubling totals."""
        assert stats.doubling_counts(store, n).total == doubling_table[str(n)]

    def test_total_16(self, deep_store: ThresholdStore, doubling_table):
        """Test the published doubling total at 16."""
        assert stats.doubling_counts(deep_store, 16).total == doubling_table["16"]

    @pytest.mark.slow
    def test_total_20(self, deep_store: ThresholdStore, doubling_table):
        """Test the published doubling total at 20, which needs a scan to 2^22."""
        large = scan(1 << 22, deep_store)
        assert stats.doubling_counts(large, 20).total == doubling_table["20"]

    def test_total_matches_counts(self, store: ThresholdStore):
        """Test the total at n is the sum of the counts at n + 2."""
        for n in range(1, 11):
            assert stats.doubling_counts(store, n).total == sum(
                stats.doubling_counts(store, n + 2).counts
            )

    def test_uncovered(self, store: ThresholdStore):
        """Test the total needs a store covering 2^(n+2)."""
        with pytest.raises(InsufficientStoreError):
            stats.doubling_counts(store, 13)
        with pytest.raises(DomainError):
            stats.doubling_counts(store, 0)

    def test_recursion_identity(self, deep_store: ThresholdStore):
        """Test N_k(n) = 2 N_k(n-1) + P_k(n) - P_(k+1)(n) for n <= 17."""
        assert all(
            stats.recursion_identity_holds(deep_store, n) for n in range(1, 18)
        )

    def test_monotone(self, store: ThresholdStore):
        """Test adding 2^n keeps or doubles every period below 2^n."""
        assert all(not stats.monotone_periods(store, n) for n in range(14))


class TestJointTable:
    """Tests for joint_table."""

    def test_order_4096(self, store: ThresholdStore, joint_table_4096):
        """Test the published histogram of p <= 2^12."""
        report = stats.joint_table(store, 4096)
        assert report.cells == {
            (cell["threshold"], cell["period"]): cell["count"]
            for cell in joint_table_4096
        }
        assert report.total == 4095

    def test_small(self, store: ThresholdStore):
        """Test the histogram of p <= 8."""
        report = stats.joint_table(store, 8)
        assert report.cells == {(1, 2): 3, (2, 4): 3, (4, 8): 1}
        assert report.irregular == ()

    def test_single_element(self, store: ThresholdStore):
        """Test max_p = 1 has no thresholds."""
        assert stats.joint_table(store, 1).cells == {}

    def test_uncovered(self, store: ThresholdStore):
        """Test max_p beyond the store raises."""
        with pytest.raises(InsufficientStoreError):
            stats.joint_table(store, store.max_p + 1)


class TestGrowth:
    """Tests for pi_of_one_growth."""

    def test_values(self, frequency_tables):
        """Test the periods of 1 for n = 1..9."""
        report = stats.pi_of_one_growth(9)
        assert [period for _, period in report.values] == frequency_tables[
            "period_of_one"
        ]
        assert report.first_reached == {1: 1, 2: 2, 4: 3, 8: 5, 16: 9}

    def test_store_agrees(self, store: ThresholdStore):
        """Test store lookups agree with the engine."""
        assert stats.pi_of_one_growth(14, store) == stats.pi_of_one_growth(14)

    def test_bound(self):
        """Test levels above the supported bound raise."""
        with pytest.raises(BoundError):
            stats.pi_of_one_growth(31)


class TestExport:
    """Tests for report export."""

    def test_csv(self):
        """Test the CSV layout of a frequency table."""
        report = FreqReport(1, (1, 1))
        assert (
            stats.export(report, ExportFormat.CSV)
            == "k,count,frequency\n0,1,0.5\n1,1,0.5\n"
        )

    def test_doubling_csv(self, store: ThresholdStore):
        """Test the total row of a doubling export."""
        text = stats.export(stats.doubling_counts(store, 4), ExportFormat.CSV)
        assert text.splitlines()[0] == "k,count"
        assert text.splitlines()[-1] == "total,16"

    def test_json(self, store: ThresholdStore):
        """Test JSON exports rebuild equal reports."""
        for report in (
            stats.frequency_table(store, 10),
            stats.doubling_counts(store, 8),
            stats.joint_table(store, 1000),
            GrowthReport(((1, 1), (2, 2))),
        ):
            text = stats.export(report, ExportFormat.JSON)
            assert text.endswith("\n")
            assert stats.report_from_json(text) == report

    def test_unknown_json(self):
        """Test unknown report kinds are rejected."""
        with pytest.raises(DomainError):
            stats.report_from_json('{"kind": "other"}')

    def test_write(self, tmp_path: Path):
        """Test exports are written with LF line endings."""
        path = tmp_path / "freq.csv"
        stats.export(FreqReport(1, (1, 1)), "csv", path)
        assert path.read_bytes() == b"k,count,frequency\n0,1,0.5\n1,1,0.5\n"
