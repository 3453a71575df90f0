"""Tests for the property suite runner."""

from __future__ import annotations

import json

import numpy as np
import pytest

from laver_tables.const import STABILITY_PAIRS
from laver_tables.exceptions import DomainError, UnknownSuiteError
from laver_tables.models import SuiteResult
from laver_tables.reference import PERIOD_TABLE_256, PERIODS_18, THRESHOLDS_18
from laver_tables.suites import SUITES, Tally, VerifyContext
from laver_tables.verify import (
    get_suite,
    list_suites,
    results_to_json,
    run_all,
    run_suite,
)

QUICK_SUITES = [
    "distributivity",
    "idempotents",
    "row-2n",
    "maximal-oracle",
    "period-theta-18",
]


class TestRegistry:
    """Tests for the suite registry."""

    def test_list(self):
        """Test suites are listed in registration order."""
        names = list_suites()
        assert names[0] == "distributivity"
        assert set(QUICK_SUITES) <= set(names)
        assert "theta-form" in names
        assert len(names) == len(SUITES)

    def test_get(self):
        """Test a registered suite carries its metadata."""
        spec = get_suite("theta-form")
        assert spec.advisory
        assert spec.description.startswith("Thresholds of the form")
        assert not get_suite("distributivity").advisory

    def test_unknown(self):
        """Test unknown names raise."""
        with pytest.raises(UnknownSuiteError, match="nope"):
            get_suite("nope")
        with pytest.raises(UnknownSuiteError):
            run_all(["distributivity", "nope"])


class TestRunSuite:
    """Tests for run_suite."""

    def test_distributivity(self):
        """Test a small distributivity run counts every triple."""
        result = run_suite("distributivity", bound=3)
        assert result.passed
        assert result.instances == 8**3
        assert result.bound == 3
        assert result.elapsed_ms >= 0

    def test_period_table(self):
        """Test the published period table is checked element by element."""
        result = run_suite("period-table-256")
        assert result.passed
        assert result.instances == 256

    def test_reference_values(self, period_table_256, period_threshold_18):
        """Test the values suites compare against match the recorded fixtures."""
        assert [list(row) for row in PERIOD_TABLE_256] == period_table_256
        assert list(PERIODS_18) == period_threshold_18["periods"]
        assert list(THRESHOLDS_18) == period_threshold_18["thresholds"]

    def test_draphom_grid(self):
        """Test draphom checks every (d, n) with n + d <= bound in both tables."""
        result = run_suite("draphom", bound=6)
        assert result.passed
        assert result.instances == 2 * (5 + 4 + 3 + 2 + 1)

    def test_bad_bound(self):
        """Test bounds below 1 are rejected."""
        with pytest.raises(DomainError):
            run_suite("distributivity", bound=0)

    def test_advisory(self):
        """Test advisory suites pass while reporting findings."""
        result = run_suite("theta-form", bound=8)
        assert result.advisory
        assert result.passed

    def test_shared_context(self):
        """Test a context scanned once serves several suites."""
        context = VerifyContext(seed=3)
        run_suite("idempotents", bound=6, context=context)
        store = context.store
        assert store.max_p == 64
        run_suite("row-2n", bound=5, context=context)
        assert context.store is store


class TestRunAll:
    """Tests for run_all and the JSON report."""

    def test_quick_suites(self):
        """Test several suites in one process."""
        results = run_all(QUICK_SUITES, bound=3, seed=5, workers=1)
        assert [result.name for result in results] == QUICK_SUITES
        assert all(result.passed for result in results)
        assert all(result.seed == 5 for result in results)
        assert all(result.instances for result in results)

    def test_json(self):
        """Test the JSON report fields."""
        results = run_all(["idempotents"], bound=2)
        data = json.loads(results_to_json(results))
        assert data == [
            {
                "suite": "idempotents",
                "bound": 2,
                "seed": 0,
                "count": results[0].instances,
                "counterexamples": [],
                "millis": results[0].elapsed_ms,
                "advisory": False,
                "findings": [],
                "passed": True,
            }
        ]

    def test_all_defaults(self):
        """Test every suite at its default bound."""
        results = run_all(workers=1)
        failed = [result.name for result in results if not result.passed]
        assert not failed
        by_name = {result.name: result for result in results}
        assert by_name["maximal-stability"].instances >= STABILITY_PAIRS
        assert by_name["maximal-bijection"].bound == 20
        assert by_name["draphom"].bound == 16

    @pytest.mark.slow
    def test_workers(self):
        """Test worker processes return results in order."""
        results = run_all(QUICK_SUITES, bound=3, workers=2)
        assert [result.name for result in results] == QUICK_SUITES
        assert all(result.passed for result in results)


class TestTally:
    """Tests for Tally."""

    def test_check(self):
        """Test failing checks are recorded as counterexamples."""
        result = SuiteResult("demo", 1, 0)
        tally = Tally(result)
        assert tally.check(True, 1)
        assert not tally.check(False, 2, 3)
        assert result.instances == 2
        assert result.counterexamples == [(2, 3)]
        assert not result.passed

    def test_check_array(self):
        """Test array checks report mapped coordinates."""
        result = SuiteResult("demo", 1, 0)
        tally = Tally(result)
        ok = np.array([[True, False], [True, True]])
        axis = np.array([10, 20])
        assert not tally.check_array(ok, 7, axes=(axis, axis))
        assert result.instances == 4
        assert result.counterexamples == [(7, 10, 20)]

    def test_finding(self):
        """Test findings do not fail a result."""
        result = SuiteResult("demo", 1, 0, advisory=True)
        Tally(result).finding(5, 3)
        assert result.findings == [(5, 3)]
        assert result.passed
