"""Data models for Laver tables."""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import asdict, dataclass, field
from typing import Any

from .const import MAX_ORDER, MIN_ORDER, PERCENT_DECIMALS, ConventionKind
from .exceptions import DomainError


@dataclass(frozen=True)
class Convention:
    """Which presentation of the table product is meant."""

    kind: ConventionKind
    order: int | None = None

    def __post_init__(self) -> None:
        """Validate the order exponent against the kind."""
        if self.kind is ConventionKind.STAR:
            if self.order is None or not MIN_ORDER <= self.order <= MAX_ORDER:
                raise DomainError(
                    f"Star convention needs {MIN_ORDER} <= n <= {MAX_ORDER}, "
                    f"got {self.order}"
                )
        elif self.order is not None:
            raise DomainError("Back convention does not take an order exponent")

    @classmethod
    def back(cls) -> Convention:
        """Return the backwards convention."""
        return cls(ConventionKind.BACK)

    @classmethod
    def star(cls, order: int) -> Convention:
        """Return the convention of the table of order 2^order."""
        return cls(ConventionKind.STAR, order)

    @property
    def size(self) -> int:
        """Return 2^n for the Star convention."""
        if self.order is None:
            raise DomainError("Back convention has no table size")
        return 1 << self.order


@dataclass(frozen=True, slots=True)
class Row:
    """One periodic row p*0, p*1, ..., p*(period - 1) in the backwards convention."""

    owner: int
    values: tuple[int, ...]

    @property
    def period(self) -> int:
        """Return the period of the row."""
        return len(self.values)

    def __len__(self) -> int:
        """Return the period of the row."""
        return len(self.values)

    def __getitem__(self, column: int) -> int:
        """Return owner * column, reading the row periodically."""
        return self.values[column % len(self.values)]

    def __iter__(self) -> Iterator[int]:
        """Iterate over one period."""
        return iter(self.values)


@dataclass(frozen=True)
class PeriodInfo:
    """Period and threshold data of one element."""

    p: int
    period: int
    threshold: int | None  # None for p = 1
    coperiod: int
    cothreshold: int


@dataclass(frozen=True)
class PartialRow:
    """One line of a row reconstruction: a partial bit-sum, its threshold, its row."""

    element: int
    threshold: int | None
    row: Row


@dataclass(frozen=True)
class BinaryPartition:
    """
    A partition whose parts are powers of 2.

    Parts are stored as (exponent, multiplicity) pairs sorted by exponent.
    """

    parts: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        """Validate exponents and multiplicities."""
        exponents = [exponent for exponent, _ in self.parts]
        if exponents != sorted(set(exponents)):
            raise DomainError("Partition exponents must be distinct and increasing")
        for exponent, multiplicity in self.parts:
            if exponent < 0 or multiplicity < 1:
                raise DomainError(
                    f"Invalid part 2^{exponent} with multiplicity {multiplicity}"
                )

    @classmethod
    def from_sizes(cls, sizes: list[int]) -> BinaryPartition:
        """Build a partition from a list of part sizes such as [1, 1, 2]."""
        counts: dict[int, int] = {}
        for size in sizes:
            if size < 1 or size & (size - 1):
                raise DomainError(f"Part {size} is not a power of 2")
            exponent = size.bit_length() - 1
            counts[exponent] = counts.get(exponent, 0) + 1
        return cls(tuple(sorted(counts.items())))

    @property
    def total(self) -> int:
        """Return the partitioned integer."""
        return sum(multiplicity << exponent for exponent, multiplicity in self.parts)

    def sizes(self) -> list[int]:
        """Return the parts as a nondecreasing list of sizes."""
        return [
            1 << exponent
            for exponent, multiplicity in self.parts
            for _ in range(multiplicity)
        ]

    def __str__(self) -> str:
        """Render as '2^a x m' terms joined by '+'."""
        if not self.parts:
            return "0"
        return " + ".join(
            f"2^{exponent} x {multiplicity}" for exponent, multiplicity in self.parts
        )


@dataclass(frozen=True)
class MaximalPattern:
    """
    Block decomposition of p - 1 for a maximal element p >= 2.

    p - 1 reads 1 0^b0 1^(2^a1) 0^(b1 2^a1) ... 1^(2^ar) 0^(br 2^ar)
    with a1 < a2 < ... < ar.
    """

    b0: int
    blocks: tuple[tuple[int, int], ...] = ()

    def word(self) -> str:
        """Return the binary word of p - 1, most significant bit first."""
        chunks = ["1", "0" * self.b0]
        for exponent, gap in self.blocks:
            chunks.append("1" * (1 << exponent))
            chunks.append("0" * (gap << exponent))
        return "".join(chunks)

    @property
    def element(self) -> int:
        """Return p."""
        return int(self.word(), 2) + 1

    @property
    def ones(self) -> int:
        """Return the number of ones in p - 1."""
        return 1 + sum(1 << exponent for exponent, _ in self.blocks)

    @property
    def period(self) -> int:
        """Return the period 2^ones of a maximal element."""
        return 1 << self.ones

    def to_partition(self) -> BinaryPartition:
        """Return the binary partition carried by the blocks."""
        return BinaryPartition(
            tuple((exponent, gap + 1) for exponent, gap in self.blocks)
        )


@dataclass(frozen=True)
class Atom:
    """Leaf of a term: a table element, usually the generator 1."""

    value: int


@dataclass(frozen=True)
class Node:
    """Binary product of two terms."""

    left: LdTerm
    right: LdTerm


LdTerm = Atom | Node


@dataclass(frozen=True)
class FreqReport:
    """Counts N_k(n) of p in [1, 2^n] with period 2^k, for k = 0..n."""

    n: int
    counts: tuple[int, ...]

    @property
    def frequencies(self) -> tuple[float, ...]:
        """Return omega_k(n) = N_k(n) / 2^n."""
        size = 1 << self.n
        return tuple(count / size for count in self.counts)

    def percentages(self) -> tuple[float, ...]:
        """Return frequencies as percentages rounded for display."""
        return tuple(
            round(100 * frequency, PERCENT_DECIMALS) for frequency in self.frequencies
        )


@dataclass(frozen=True)
class DoublingReport:
    """
    Doubling counts at level n.

    counts[k] is P_k(n), the number of p in [1, 2^(n-1)] with period 2^(k-1)
    and period 2^k after adding 2^(n-1). total is the number of p in
    [1, 2^(n+1)] whose period doubles after adding 2^(n+1).
    """

    n: int
    counts: tuple[int, ...]
    total: int


@dataclass(frozen=True)
class JointReport:
    """Histogram of (threshold, period) pairs over p in [2, max_p]."""

    max_p: int
    cells: dict[tuple[int, int], int] = field(default_factory=dict)
    irregular: tuple[int, ...] = ()  # thresholds not of the form 2^i - 2^j

    @property
    def total(self) -> int:
        """Return the number of counted elements."""
        return sum(self.cells.values())


@dataclass(frozen=True)
class GrowthReport:
    """Values of pi_n(1) for n = 1..max_n."""

    values: tuple[tuple[int, int], ...]

    @property
    def first_reached(self) -> dict[int, int]:
        """Map each period value to the first n attaining it."""
        first: dict[int, int] = {}
        for n, period in self.values:
            first.setdefault(period, n)
        return first


@dataclass
class SuiteResult:
    """Outcome of one verification suite."""

    name: str
    bound: int
    seed: int
    instances: int = 0
    counterexamples: list[tuple[int, ...]] = field(default_factory=list)
    elapsed_ms: int = 0
    advisory: bool = False
    findings: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """Return True when no counterexample was found."""
        return not self.counterexamples

    def as_dict(self) -> dict[str, Any]:
        """Return the JSON form of the result."""
        data = asdict(self)
        return {
            "suite": data["name"],
            "bound": data["bound"],
            "seed": data["seed"],
            "count": data["instances"],
            "counterexamples": [list(item) for item in data["counterexamples"]],
            "millis": data["elapsed_ms"],
            "advisory": data["advisory"],
            "findings": [list(item) for item in data["findings"]],
            "passed": self.passed,
        }
