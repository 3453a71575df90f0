"""Tests for the row cache."""

from __future__ import annotations

import pytest

from laver_tables.cache import RowCache, row_cost
from laver_tables.const import MIB
from laver_tables.exceptions import DomainError
from laver_tables.models import Row


def _row(owner: int, length: int) -> Row:
    return Row(owner, tuple(range(length)))


class TestRowCache:
    """Tests for RowCache."""

    def test_rejects_small_budget(self):
        """Test budgets below 1 MiB are rejected."""
        with pytest.raises(DomainError, match="at least"):
            RowCache(MIB - 1)

    def test_get_and_put(self):
        """Test a stored row is returned and counted as a hit."""
        cache = RowCache(MIB)
        row = _row(7, 4)
        cache.put(row)
        assert cache.get(7) is row
        assert cache.get(9) is None
        assert cache.hits == 1
        assert cache.misses == 1
        assert 7 in cache
        assert cache.size == row_cost(row)

    def test_evicts_least_recently_used(self):
        """Test the oldest unused row goes first when over budget."""
        length = (MIB // 3) // 8
        cache = RowCache(MIB)
        cache.put(_row(3, length))
        cache.put(_row(5, length))
        cache.get(3)
        cache.put(_row(6, length))
        assert 3 in cache
        assert 6 in cache
        assert 5 not in cache
        assert cache.evictions == 1
        assert cache.size <= MIB

    def test_clear(self):
        """Test clear empties the cache."""
        cache = RowCache(MIB)
        cache.put(_row(3, 2))
        cache.clear()
        assert len(cache) == 0
        assert cache.size == 0
