"""Helper utilities for Laver tables."""

from __future__ import annotations

from collections.abc import Iterator

from .const import ELEMENT_BITS, MAX_ELEMENT
from .exceptions import BoundError, DomainError


def check_element(value: int, name: str = "p") -> int:
    """
    Validate a table element.

    Raises:
        DomainError: If the value is not a nonnegative integer.
        BoundError: If the value does not fit the 62-bit bound.

    """
    if isinstance(value, bool) or not isinstance(value, int):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    if value < 0:
        raise DomainError(f"{name} must be nonnegative, got {value}")
    if value >= MAX_ELEMENT:
        raise BoundError(f"{name}={value} exceeds the 2^{ELEMENT_BITS} element bound")
    return value


def is_power_of_two(value: int) -> bool:
    """Return True if value is 2^m for some m >= 0."""
    return value > 0 and not value & (value - 1)


def top_bit(value: int) -> int:
    """Return the highest power of 2 not exceeding a positive value."""
    return 1 << (value.bit_length() - 1)


def two_adic_valuation(value: int) -> int:
    """Return the exponent of the largest power of 2 dividing a positive value."""
    return (value & -value).bit_length() - 1


def bit_positions(value: int) -> list[int]:
    """Return the positions of the set bits of value, lowest first."""
    positions = []
    while value:
        low = value & -value
        positions.append(low.bit_length() - 1)
        value ^= low
    return positions


def subset_leq(a: int, b: int) -> bool:
    """Return True if every binary digit of a is at most the matching digit of b."""
    return not a & ~b


def submasks_ascending(mask: int) -> Iterator[int]:
    """Yield every submask of mask in increasing order, starting at 0."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = ((sub | ~mask) + 1) & mask


def scatter_bits(value: int, mask: int) -> int:
    """Place the low bits of value on the set bits of mask, low to low."""
    result = 0
    for index, position in enumerate(bit_positions(mask)):
        if value >> index & 1:
            result |= 1 << position
    return result


def is_power_difference(value: int) -> bool:
    """Return True if value = 2^i - 2^j for some i > j >= 0."""
    if value <= 0:
        return False
    run = value >> two_adic_valuation(value)
    return not run & (run + 1)
