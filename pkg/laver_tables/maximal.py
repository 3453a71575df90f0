"""Maximal elements: those whose period is 2 to the number of ones in p - 1."""

from __future__ import annotations

from collections import deque
from collections.abc import Iterator
from itertools import groupby
import logging

from .core import LaverEngine, get_default_engine
from .exceptions import DomainError, NotMaximalError, StructuralError
from .helpers import (
    bit_positions,
    check_element,
    scatter_bits,
    submasks_ascending,
    top_bit,
    two_adic_valuation,
)
from .models import BinaryPartition, MaximalPattern, Row

_LOGGER = logging.getLogger(__name__)


def _check_positive(p: int) -> int:
    check_element(p)
    if p < 1:
        raise DomainError(f"Maximality is defined for p >= 1, got {p}")
    return p


def parse_pattern(p: int) -> MaximalPattern | None:
    """
    Return the block decomposition of p - 1, or None if p - 1 has none.

    After the leading 1 and its zero run, each run of ones of length L splits
    into the powers of 2 of the binary expansion of L, smallest first, and
    every power must exceed the one before it. A run of zeros must be a
    multiple of the last power. p = 1 has no decomposition.
    """
    _check_positive(p)
    if p == 1:
        return None
    word = format(p - 1, "b")[1:]
    rest = word.lstrip("0")
    b0 = len(word) - len(rest)
    blocks: list[tuple[int, int]] = []
    previous = -1
    for bit, group in groupby(rest):
        length = sum(1 for _ in group)
        if bit == "1":
            exponents = bit_positions(length)
            if exponents[0] <= previous:
                return None
            blocks.extend((exponent, 0) for exponent in exponents)
            previous = exponents[-1]
        else:
            gap, extra = divmod(length, 1 << previous)
            if extra:
                return None
            blocks[-1] = (previous, gap)
    return MaximalPattern(b0, tuple(blocks))


def is_maximal(p: int) -> bool:
    """Return True if the binary pattern of p - 1 makes p maximal."""
    return p == 1 or parse_pattern(p) is not None


def is_maximal_by_period(p: int, engine: LaverEngine | None = None) -> bool:
    """Return True if the period of p is 2^bit(p - 1), computed by the engine."""
    _check_positive(p)
    engine = engine or get_default_engine()
    return engine.period(p) == 1 << (p - 1).bit_count()


def _require_maximal(p: int) -> None:
    if not is_maximal(p):
        raise NotMaximalError(f"p={p} is not maximal")


def maximal_prod(p: int, q: int) -> int:
    """
    Return p*q for a maximal p by placing the bits of q on the ones of p - 1.

    Raises:
        NotMaximalError: If p is not maximal.

    """
    _check_positive(p)
    check_element(q, "q")
    _require_maximal(p)
    return scatter_bits(q, p - 1)


def maximal_row(p: int) -> Row:
    """Return the row of a maximal p: the submasks of p - 1 in increasing order."""
    _check_positive(p)
    _require_maximal(p)
    return Row(p, tuple(submasks_ascending(p - 1)))


def maximal_to_partition(p: int) -> BinaryPartition:
    """
    Return the binary partition carried by the blocks of a maximal p >= 2.

    The leader gap b0 is not part of the partition; parse_pattern exposes it.

    Raises:
        DomainError: If p < 2.
        NotMaximalError: If p is not maximal.

    """
    _check_positive(p)
    if p < 2:
        raise DomainError("p = 1 carries no partition")
    pattern = parse_pattern(p)
    if pattern is None:
        raise NotMaximalError(f"p={p} is not maximal")
    return pattern.to_partition()


def partition_to_maximal(partition: BinaryPartition, b0: int = 0) -> int:
    """Return the maximal element whose blocks carry partition, after gap b0."""
    if b0 < 0:
        raise DomainError(f"Leader gap must be nonnegative, got {b0}")
    pattern = MaximalPattern(
        b0,
        tuple(
            (exponent, multiplicity - 1) for exponent, multiplicity in partition.parts
        ),
    )
    return check_element(pattern.element)


def iter_maximal(lo: int, hi: int) -> Iterator[int]:
    """Yield the maximal elements of [lo, hi] in increasing order."""
    _check_positive(lo)
    check_element(hi, "hi")
    if hi < lo:
        raise DomainError(f"Empty range [{lo}, {hi}]")
    return (p for p in range(lo, hi + 1) if is_maximal(p))


def list_maximal(lo: int, hi: int) -> list[int]:
    """Return the maximal elements of [lo, hi] in increasing order."""
    return list(iter_maximal(lo, hi))


def count_binary_partitions(n: int) -> int:
    """Return the number of partitions of n into powers of 2."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise DomainError(f"n must be a nonnegative integer, got {n!r}")
    counts = [1]
    for m in range(1, n + 1):
        counts.append(counts[m - 1] if m % 2 else counts[m - 1] + counts[m // 2])
    return counts[n]


def insert_zero_block(word: str, a: int, b: int) -> str:
    """
    Insert 0^(b 2^a) into a bit word.

    The word splits as uv where u holds between 1 and 2^(a+1) ones and v a
    multiple of 2^(a+1) ones; the block goes between u and v.

    Raises:
        DomainError: If the word is not a nonempty bit string or a, b < 0.
        StructuralError: If the word has no ones to split at.

    """
    if not word or set(word) - {"0", "1"}:
        raise DomainError(f"Not a bit word: {word!r}")
    if a < 0 or b < 0:
        raise DomainError(f"Block exponent and multiplicity must be >= 0, got {a}, {b}")
    ones = word.count("1")
    if not ones:
        raise StructuralError(f"{word!r} has no ones to split at")
    if not b:
        return word
    keep = (ones - 1) % (1 << (a + 1)) + 1
    cut = 0
    for _ in range(keep):
        cut = word.index("1", cut) + 1
    return word[:cut] + "0" * (b << a) + word[cut:]


def generate_by_insertion(ones: int, max_length: int) -> list[str]:
    """
    Return every word reachable from 1^ones by zero-block insertions.

    Words longer than max_length are not explored. The result is sorted by
    value.
    """
    if ones < 1:
        raise DomainError(f"Need at least one 1, got {ones}")
    if max_length < ones:
        raise DomainError(f"max_length={max_length} is shorter than 1^{ones}")
    start = "1" * ones
    seen = {start}
    queue = deque([start])
    while queue:
        word = queue.popleft()
        room = max_length - len(word)
        a = 0
        while 1 << a <= room:
            for b in range(1, (room >> a) + 1):
                child = insert_zero_block(word, a, b)
                if child not in seen:
                    seen.add(child)
                    queue.append(child)
            a += 1
    _LOGGER.debug(
        "Insertion closure of 1^%d up to length %d: %d words",
        ones,
        max_length,
        len(seen),
    )
    return sorted(seen, key=lambda word: int(word, 2))


def reductions(p: int, max_exponent: int) -> Iterator[int]:
    """
    Yield the reductions of p that stay maximal when p is.

    These are the nonzero p mod 2^m, and p with its top bit 2^n replaced by
    any 2^l > p - 2^n with l <= max_exponent.
    """
    _check_positive(p)
    for m in range(1, p.bit_length()):
        if reduced := p % (1 << m):
            yield reduced
    top = top_bit(p)
    rest = p - top
    for exponent in range(rest.bit_length(), max_exponent + 1):
        if 1 << exponent != top:
            yield (1 << exponent) + rest


def is_reduction_closed(p: int, max_exponent: int) -> bool:
    """Return True if every reduction of p is maximal."""
    return all(is_maximal(reduced) for reduced in reductions(p, max_exponent))


def three_bit_rule(p: int) -> bool:
    """
    Return the maximality predicted for p with exactly three set bits.

    Such p is maximal when the largest power of 2 dividing it is an even
    power, 2^0 included.

    Raises:
        DomainError: If p does not have exactly three set bits.

    """
    _check_positive(p)
    if p.bit_count() != 3:
        raise DomainError(f"p={p} does not have three set bits")
    return not two_adic_valuation(p) % 2
