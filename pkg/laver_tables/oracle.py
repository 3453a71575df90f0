"""Brute-force tables built directly from the defining recursion."""

from __future__ import annotations

import logging

import numpy as np

from .const import ORACLE_MAX_P
from .exceptions import BoundError, DomainError
from .helpers import is_power_of_two

_LOGGER = logging.getLogger(__name__)


def brute_force_table(size: int) -> np.ndarray:
    """
    Return the operation on [1, size] built by the defining recursion.

    N*q = q, p*1 = p + 1 and p*(q + 1) = (p*q)*(p + 1), by descending
    induction on p.

    The result is indexed [p, q] with row and column 0 unused. It is the
    Laver table of order size when size is a power of 2.

    Raises:
        DomainError: If size < 1.
        BoundError: If size exceeds the oracle limit.

    """
    if isinstance(size, bool) or not isinstance(size, int) or size < 1:
        raise DomainError(f"Table size must be a positive integer, got {size!r}")
    if size > ORACLE_MAX_P:
        raise BoundError(f"Brute-force tables stop at {ORACLE_MAX_P}, got {size}")
    table = np.zeros((size + 1, size + 1), dtype=np.uint16)
    table[size, 1:] = np.arange(1, size + 1)
    for p in range(size - 1, 0, -1):
        # Every p*q exceeds p, so the column of p + 1 is complete below p.
        column = table[:, p + 1].tolist()
        value = p + 1
        row = [0, value]
        for _ in range(size - 1):
            value = column[value]
            row.append(value)
        table[p] = row
    _LOGGER.debug("Built brute-force table of size %d", size)
    return table


def brute_force_oracle(max_p: int) -> np.ndarray:
    """
    Return p*q in the backwards convention for p, q in [0, max_p).

    Entries come from the brute-force table of order max_p through
    p*q = N - (N - p) star (N - q).

    Raises:
        DomainError: If max_p is not a power of 2.
        BoundError: If max_p exceeds the oracle limit.

    """
    if isinstance(max_p, bool) or not isinstance(max_p, int):
        raise DomainError(f"Oracle size must be an integer, got {max_p!r}")
    if not is_power_of_two(max_p):
        raise DomainError(f"Oracle size must be a power of 2, got {max_p!r}")
    star = brute_force_table(max_p).astype(np.int64)
    # Back index p maps to star index N - p, with p = 0 on row N.
    index = max_p - np.arange(max_p)
    return (max_p - star[np.ix_(index, index)]).astype(np.uint32)


def is_left_distributive(table: np.ndarray) -> bool:
    """Return True if p*(q*r) = (p*q)*(p*r) throughout a table indexed from 1."""
    inner = table[1:, 1:].astype(np.int64) - 1
    for row in inner:
        left = row[inner]
        right = inner[row[:, None], row[None, :]]
        if not np.array_equal(left, right):
            return False
    return True
