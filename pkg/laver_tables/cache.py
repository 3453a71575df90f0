"""Least-recently-used cache of table rows with a byte budget."""

from __future__ import annotations

from collections import OrderedDict
import logging
import threading

from .const import (
    DEFAULT_CACHE_BYTES,
    MIN_CACHE_BYTES,
    ROW_ENTRY_BYTES,
    ROW_OVERHEAD_BYTES,
)
from .exceptions import DomainError
from .models import Row

_LOGGER = logging.getLogger(__name__)


def row_cost(row: Row) -> int:
    """Return the budgeted size of a cached row."""
    return ROW_OVERHEAD_BYTES + ROW_ENTRY_BYTES * len(row)


class RowCache:
    """
    Rows keyed by owner, evicted least recently used first.

    Only complete rows are ever stored, and all access goes through one lock,
    so concurrent readers never observe a partially built row.
    """

    def __init__(self, capacity: int = DEFAULT_CACHE_BYTES) -> None:
        """Initialize an empty cache with a byte budget."""
        if capacity < MIN_CACHE_BYTES:
            raise DomainError(
                f"Cache budget must be at least {MIN_CACHE_BYTES} bytes, got {capacity}"
            )
        self.capacity = capacity
        self._rows: OrderedDict[int, Row] = OrderedDict()
        self._size = 0
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0
        self.evictions = 0

    def get(self, owner: int) -> Row | None:
        """Return the cached row of owner, marking it recently used."""
        with self._lock:
            row = self._rows.get(owner)
            if row is None:
                self.misses += 1
                return None
            self._rows.move_to_end(owner)
            self.hits += 1
            return row

    def put(self, row: Row) -> None:
        """Store a complete row, evicting old rows to stay within budget."""
        cost = row_cost(row)
        with self._lock:
            if row.owner in self._rows:
                self._rows.move_to_end(row.owner)
                return
            self._rows[row.owner] = row
            self._size += cost
            while self._size > self.capacity and len(self._rows) > 1:
                _, evicted = self._rows.popitem(last=False)
                self._size -= row_cost(evicted)
                self.evictions += 1
            if self.evictions and not self.evictions % 100_000:
                _LOGGER.debug(
                    "Row cache evicted %d rows, %d bytes in use",
                    self.evictions,
                    self._size,
                )

    def clear(self) -> None:
        """Drop every cached row."""
        with self._lock:
            self._rows.clear()
            self._size = 0

    @property
    def size(self) -> int:
        """Return the budgeted bytes in use."""
        return self._size

    def __contains__(self, owner: int) -> bool:
        """Return True if the row of owner is cached."""
        with self._lock:
            return owner in self._rows

    def __len__(self) -> int:
        """Return the number of cached rows."""
        return len(self._rows)
