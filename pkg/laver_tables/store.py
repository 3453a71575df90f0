"""Threshold-compressed Laver tables."""

from __future__ import annotations

from collections.abc import Callable, Sequence
import logging
import time

import numpy as np

from .cache import RowCache
from .const import CHECKPOINT_INTERVAL, LOOKUP_CACHE_BYTES, STORE_LIMIT
from .exceptions import (
    BoundError,
    DomainError,
    InsufficientStoreError,
    StoreFormatError,
)
from .helpers import check_element
from .models import PartialRow, Row

_LOGGER = logging.getLogger(__name__)


def derive_periods(thetas: np.ndarray) -> np.ndarray:
    """
    Derive every period from a threshold array indexed by p.

    Block [2^m, 2^(m+1)) is derived from [0, 2^m) at once: p = 2^m + low
    doubles the period of low exactly when its threshold equals that period.
    """
    max_p = len(thetas) - 1
    periods = np.zeros(max_p + 1, dtype=np.uint64)
    if max_p >= 1:
        periods[1] = 1
    start = 2
    while start <= max_p:
        stop = min(2 * start, max_p + 1)
        periods[start] = start
        low = periods[1 : stop - start]
        block = thetas[start + 1 : stop].astype(np.uint64)
        periods[start + 1 : stop] = np.where(block == low, 2 * low, low)
        start *= 2
    return periods


def _column(thetas: Sequence[int], periods: Sequence[int], p: int, q: int) -> int:
    """Return p*q by walking the threshold chain of p from its top bit down."""
    i = q & (periods[p] - 1)
    value = 0
    while p & (p - 1):
        top = 1 << (p.bit_length() - 1)
        low = p - top
        period = periods[p]
        low_period = periods[low]
        if period != low_period:
            if i >= low_period:
                value += top
                i -= low_period
        elif i >= period - thetas[p]:
            value += top
        p = low
    return value + i


class ThresholdStore:
    """
    Thresholds of p = 2..max_p, from which every row up to max_p is rebuilt.

    A finished store is never mutated; reads are safe from any thread. Rows
    handed out by lookup_product are kept in an internally locked RowCache.
    """

    def __init__(
        self,
        thetas: Sequence[int] | np.ndarray,
        periods: Sequence[int] | np.ndarray | None = None,
    ) -> None:
        """
        Initialize from thresholds indexed by p, with 0 at indices 0 and 1.

        Both columns are held as uint32 arrays; periods never exceed max_p.

        Raises:
            DomainError: If fewer than three entries are given.

        """
        if len(thetas) < 3:
            raise DomainError("A threshold store covers at least p = 2")
        self._thetas = np.ascontiguousarray(thetas, dtype=np.uint32)
        if periods is None:
            periods = derive_periods(self._thetas)
        self._periods = np.ascontiguousarray(periods, dtype=np.uint32)
        # memoryview indexing yields Python ints for the column walk
        self._theta_view = memoryview(self._thetas)
        self._period_view = memoryview(self._periods)
        self.row_cache = RowCache(LOOKUP_CACHE_BYTES)

    @classmethod
    def from_array(cls, thetas: np.ndarray) -> ThresholdStore:
        """Build a store from the dense array of theta(2), ..., theta(max_p)."""
        full = np.zeros(len(thetas) + 2, dtype=np.uint32)
        full[2:] = thetas
        return cls(full, derive_periods(full))

    @property
    def max_p(self) -> int:
        """Return the largest covered element."""
        return len(self._thetas) - 1

    @property
    def thetas(self) -> np.ndarray:
        """Return theta(2), ..., theta(max_p) as unsigned 32-bit values."""
        return self._thetas[2:].copy()

    def periods(self) -> np.ndarray:
        """Return the periods indexed by p, with 0 at index 0."""
        return self._periods.astype(np.uint64)

    def covers(self, p: int) -> bool:
        """Return True if the row of p can be rebuilt from this store."""
        return 1 <= p <= self.max_p

    def _require(self, p: int, lowest: int = 1) -> None:
        check_element(p)
        if p < lowest:
            raise DomainError(f"p={p} is below {lowest}")
        if p > self.max_p:
            raise InsufficientStoreError(
                f"Store covers p <= {self.max_p}, requested {p}"
            )

    def theta(self, p: int) -> int:
        """
        Return the stored threshold of p.

        Raises:
            DomainError: If p < 2.
            InsufficientStoreError: If p > max_p.

        """
        self._require(p, lowest=2)
        return self._theta_view[p]

    def period(self, p: int) -> int:
        """Return the period of p derived from the threshold chain."""
        self._require(p)
        return self._period_view[p]

    def product(self, p: int, q: int) -> int:
        """Return p*q in O(bit length of p) without building the row."""
        if p == 0:
            return q
        self._require(p)
        return _column(self._theta_view, self._period_view, p, q)

    def reconstruct_row(self, p: int) -> Row:
        """
        Rebuild the row of p from the thresholds of its partial bit sums.

        Bits are added from the lowest up. The row of the lowest power 2^v is
        0..2^v-1; adding the next bit 2^u either doubles the row (second half
        is the first half plus 2^u) when the new threshold equals the current
        period, or adds 2^u to the last threshold entries.
        """
        return self.partial_rows(p)[-1].row

    def partial_rows(self, p: int) -> list[PartialRow]:
        """Return the rows of every partial bit sum of p, lowest bit first."""
        self._require(p)
        low = p & -p
        values = list(range(low))
        chain = [PartialRow(low, low >> 1 or None, Row(low, tuple(values)))]
        acc = low
        rest = p ^ low
        while rest:
            bit = rest & -rest
            rest ^= bit
            acc += bit
            theta = self._theta_view[acc]
            if theta == len(values):
                values = values + [value + bit for value in values]
            else:
                cut = len(values) - theta
                values = values[:cut] + [value + bit for value in values[cut:]]
            chain.append(PartialRow(acc, theta, Row(acc, tuple(values))))
        return chain

    def prefix(self, max_p: int) -> ThresholdStore:
        """Return the store restricted to p <= max_p."""
        self._require(max_p, lowest=2)
        return ThresholdStore(self._thetas[: max_p + 1], self._periods[: max_p + 1])

    def __eq__(self, other: object) -> bool:
        """Compare coverage and thresholds."""
        if not isinstance(other, ThresholdStore):
            return NotImplemented
        return np.array_equal(self._thetas, other._thetas)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        """Return a short description."""
        return f"ThresholdStore(max_p={self.max_p})"


def scan(
    max_p: int,
    resume_from: ThresholdStore | None = None,
    *,
    checkpoint: Callable[[ThresholdStore], None] | None = None,
    checkpoint_every: int = CHECKPOINT_INTERVAL,
) -> ThresholdStore:
    """
    Compute theta(p) for 2 <= p <= max_p in increasing p.

    For p = 2^m + low the recurrence is walked down from p*(pi-1) = p - 1
    only while values keep the top bit 2^m; the number of such values is the
    threshold. The period doubles exactly when the threshold equals the
    period of low.

    Raises:
        DomainError: If max_p < 2.
        BoundError: If max_p does not fit 32-bit thresholds.

    """
    check_element(max_p, "max_p")
    if max_p < 2:
        raise DomainError(f"Scan needs max_p >= 2, got {max_p}")
    if max_p >= STORE_LIMIT:
        raise BoundError(f"Threshold stores hold max_p < 2^32, got {max_p}")
    if resume_from is not None:
        if resume_from.max_p >= max_p:
            return resume_from.prefix(max_p)
        thetas = resume_from._thetas.tolist()
        periods = resume_from._periods.tolist()
    else:
        thetas = [0, 0]
        periods = [0, 1]
    start = len(thetas)
    _LOGGER.info("Scanning thresholds from p=%d to p=%d", start, max_p)
    started = time.monotonic()
    top = 1 << ((start - 1).bit_length() - 1)
    for p in range(start, max_p + 1):
        if not p & (p - 1):
            top = p
            thetas.append(p >> 1)
            periods.append(p)
        else:
            low_period = periods[p - top]
            column = p - 1
            value = column
            count = 0
            while value >= top:
                count += 1
                value = _column(thetas, periods, value, column)
            thetas.append(count)
            periods.append(2 * low_period if count == low_period else low_period)
        if checkpoint is not None and not p % checkpoint_every:
            _LOGGER.info("Checkpoint at p=%d", p)
            checkpoint(ThresholdStore(thetas, periods))
    _LOGGER.info(
        "Scanned %d thresholds in %.1f s", max_p - start + 1, time.monotonic() - started
    )
    return ThresholdStore(thetas, periods)


def reconstruct_row(store: ThresholdStore, p: int) -> Row:
    """Return the row of p rebuilt from the store."""
    return store.reconstruct_row(p)


def partial_rows(store: ThresholdStore, p: int) -> list[PartialRow]:
    """Return the partial bit-sum rows leading to the row of p."""
    return store.partial_rows(p)


def lookup_product(store: ThresholdStore, p: int, q: int) -> int:
    """
    Return p*q through the store's row cache.

    Raises:
        InsufficientStoreError: If p > max_p.

    """
    check_element(q, "q")
    if p == 0:
        return q
    row = store.row_cache.get(p)
    if row is None:
        row = store.reconstruct_row(p)
        store.row_cache.put(row)
    return row[q]


def validate_thresholds(thetas: np.ndarray) -> None:
    """
    Check structural invariants of a dense threshold array for p = 2..max_p.

    Raises:
        StoreFormatError: If a power of 2 has the wrong threshold or any
            threshold is 0.

    """
    if not len(thetas):
        return
    if int(thetas.min()) == 0:
        bad = int(np.argmax(thetas == 0)) + 2
        raise StoreFormatError(f"Threshold of p={bad} is 0")
    power = 2
    while power - 2 < len(thetas):
        if int(thetas[power - 2]) != power >> 1:
            raise StoreFormatError(f"Threshold of p={power} must be {power >> 1}")
        power *= 2
