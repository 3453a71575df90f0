"""Products, periods and rows of Laver tables."""

from __future__ import annotations

from collections.abc import Iterator
import logging
import threading
from typing import TYPE_CHECKING

from .cache import RowCache
from .const import MAX_ORDER, MIN_ORDER, ConventionKind, PlotKind
from .exceptions import DomainError
from .helpers import (
    check_element,
    is_power_of_two,
    submasks_ascending,
    subset_leq,
    top_bit,
)
from .models import Convention, PeriodInfo, Row

if TYPE_CHECKING:
    from .store import ThresholdStore

_LOGGER = logging.getLogger(__name__)

__all__ = [
    "LaverEngine",
    "back_prod",
    "back_table",
    "circ",
    "compute_row",
    "coperiod",
    "cothreshold",
    "get_default_engine",
    "left_power",
    "period",
    "period_info",
    "plot_points",
    "set_default_engine",
    "star_prod",
    "star_table",
    "subset_leq",
    "threshold",
]


def _check_order(n: int) -> int:
    """Validate an order exponent."""
    if isinstance(n, bool) or not isinstance(n, int) or not MIN_ORDER <= n <= MAX_ORDER:
        raise DomainError(
            f"Order exponent must be in [{MIN_ORDER}, {MAX_ORDER}], got {n}"
        )
    return n


def _check_star_element(n: int, value: int, name: str) -> int:
    """Validate an element of the table of order 2^n."""
    size = 1 << n
    if isinstance(value, bool) or not isinstance(value, int) or not 1 <= value <= size:
        raise DomainError(f"{name}={value} is outside [1, {size}]")
    return value


class LaverEngine:
    """
    Computes products in the backwards convention.

    Products of elements covered by an attached threshold store come from the
    store. Rows of other elements are built from the recurrence
    p*(k-1) = (p*k)*(p-1), starting at p*(2^n - 1) = p - 1 and stopping at 0,
    with an explicit stack of partially built rows. Finished rows go to the
    row cache.
    """

    def __init__(
        self,
        cache: RowCache | None = None,
        store: ThresholdStore | None = None,
    ) -> None:
        """Initialize the engine."""
        self.cache = cache if cache is not None else RowCache()
        self.store = store
        self._build_lock = threading.Lock()

    def attach_store(self, store: ThresholdStore | None) -> None:
        """Use a threshold store for the elements it covers."""
        self.store = store

    def _covered(self, p: int) -> bool:
        return self.store is not None and p <= self.store.max_p

    def _known_product(self, p: int, q: int) -> int | None:
        """Return p*q when it is available without building a row."""
        if p == 0:
            return q
        if not p & (p - 1):
            return q & (p - 1)
        if self._covered(p):
            return self.store.product(p, q)
        row = self.cache.get(p)
        if row is None:
            return None
        return row[q]

    def back_prod(self, p: int, q: int) -> int:
        """
        Return p*q.

        Raises:
            DomainError: If p or q is negative.
            BoundError: If p or q does not fit the element bound.

        """
        check_element(p, "p")
        check_element(q, "q")
        value = self._known_product(p, q)
        if value is not None:
            return value
        return self.row(p)[q]

    def row(self, p: int) -> Row:
        """Return the row of p from the cheapest available source."""
        check_element(p)
        if p == 0:
            raise DomainError("The row of 0 is the identity and has no period")
        if is_power_of_two(p):
            return Row(p, tuple(range(p)))
        row = self.cache.get(p)
        if row is not None:
            return row
        if self._covered(p):
            row = self.store.reconstruct_row(p)
            self.cache.put(row)
            return row
        return self._build(p)

    def compute_row(self, p: int) -> Row:
        """
        Return the row of p computed by the recurrence.

        The recurrence always runs for p itself; products it needs for smaller
        elements come from the store, the cache or further rows built here.

        Raises:
            DomainError: If p is 0.

        """
        check_element(p)
        if p == 0:
            raise DomainError("The row of 0 is the identity and has no period")
        return self._build(p)

    def _build(self, p: int) -> Row:
        """Build the row of p and every missing row it depends on."""
        with self._build_lock:
            stack = [p]
            partial: dict[int, list[int]] = {}
            last: Row | None = None
            while stack:
                owner = stack[-1]
                values = partial.setdefault(owner, [owner - 1])
                pending = None
                while values[-1]:
                    current = values[-1]
                    if last is not None and last.owner == current:
                        nxt: int | None = last[owner - 1]
                    else:
                        nxt = self._known_product(current, owner - 1)
                    if nxt is None:
                        pending = current
                        break
                    values.append(nxt)
                if pending is not None:
                    stack.append(pending)
                    continue
                stack.pop()
                del partial[owner]
                values.reverse()
                last = Row(owner, tuple(values))
                self.cache.put(last)
            _LOGGER.debug("Built row of %d with period %d", p, len(last))
            return last

    def period(self, p: int) -> int:
        """
        Return the period of p.

        Raises:
            DomainError: If p is 0.

        """
        check_element(p)
        if p == 0:
            raise DomainError("0 has no finite period")
        if is_power_of_two(p):
            return p
        if self._covered(p):
            return self.store.period(p)
        return len(self.row(p))

    def threshold(self, p: int) -> int:
        """
        Return the threshold of p.

        Raises:
            DomainError: If p < 2.

        """
        check_element(p)
        if p < 2:
            raise DomainError(f"Threshold is defined for p >= 2, got {p}")
        if is_power_of_two(p):
            return p >> 1
        if self._covered(p):
            return self.store.theta(p)
        top = top_bit(p)
        return sum(1 for value in self.row(p) if value >= top)

    def coperiod(self, p: int) -> int:
        """Return the period of p + 2^n for the smallest n with 2^n > p."""
        check_element(p)
        if p == 0:
            raise DomainError("Coperiod is defined for p >= 1")
        return self.period(check_element(p + (1 << p.bit_length())))

    def cothreshold(self, p: int) -> int:
        """Return the threshold of p + 2^n for the smallest n with 2^n > p."""
        check_element(p)
        if p == 0:
            raise DomainError("Cothreshold is defined for p >= 1")
        return self.threshold(check_element(p + (1 << p.bit_length())))

    def period_info(self, p: int) -> PeriodInfo:
        """Return period, threshold, coperiod and cothreshold of p."""
        return PeriodInfo(
            p=p,
            period=self.period(p),
            threshold=self.threshold(p) if p >= 2 else None,
            coperiod=self.coperiod(p),
            cothreshold=self.cothreshold(p),
        )

    def star_prod(self, n: int, p: int, q: int) -> int:
        """
        Return p *_n q in the table of order 2^n.

        Raises:
            DomainError: If n is not a valid order or p, q are outside [1, 2^n].

        """
        _check_order(n)
        _check_star_element(n, p, "p")
        _check_star_element(n, q, "q")
        size = 1 << n
        return size - self.back_prod(size - p, size - q)

    def circ(self, p: int, q: int, conv: Convention) -> int:
        """
        Return the composition p o q.

        In the backwards convention p o q = p*(q - 1) + 1. In the table of order
        2^n, (p o q) + 1 = p *_n (q + 1) with both sides read in [1, 2^n].

        Raises:
            DomainError: If p or q is outside the convention's domain.

        """
        if conv.kind is ConventionKind.BACK:
            check_element(p, "p")
            check_element(q, "q")
            if p < 1 or q < 1:
                raise DomainError(f"Composition needs p, q >= 1, got ({p}, {q})")
            return self.back_prod(p, q - 1) + 1
        n = conv.order
        size = 1 << n
        _check_star_element(n, p, "p")
        _check_star_element(n, q, "q")
        value = self.star_prod(n, p, q + 1 if q < size else 1)
        return size if value == 1 else value - 1

    def left_power(self, n: int, x: int, k: int) -> int:
        """
        Return the k-th left power of x in the table of order 2^n.

        Raises:
            DomainError: If x is outside [1, 2^n] or k < 1.

        """
        _check_order(n)
        _check_star_element(n, x, "x")
        if isinstance(k, bool) or not isinstance(k, int) or k < 1:
            raise DomainError(f"Left power exponent must be >= 1, got {k}")
        value = x
        for _ in range(k - 1):
            value = self.star_prod(n, value, x)
        return value

    def star_table(self, n: int) -> list[list[int]]:
        """Return the table of order 2^n as rows p = 1..2^n of p *_n q, q = 1..2^n."""
        _check_order(n)
        size = 1 << n
        return [
            [self.star_prod(n, p, q) for q in range(1, size + 1)]
            for p in range(1, size + 1)
        ]

    def back_table(self, rows: int, columns: int) -> list[list[int]]:
        """Return p*q for p in [0, rows) and q in [0, columns)."""
        return [[self.back_prod(p, q) for q in range(columns)] for p in range(rows)]

    def plot_points(self, kind: PlotKind, max_value: int) -> Iterator[tuple[int, int]]:
        """
        Yield coordinate pairs for plotting.

        subset-order yields (a, b) with a strictly below b in the subset order
        and b <= max_value; table yields (p, p*q) for p <= max_value and
        q below the period of p.

        Raises:
            DomainError: If max_value < 1.

        """
        check_element(max_value, "max")
        if max_value < 1:
            raise DomainError("Plot range needs max >= 1")
        if PlotKind(kind) is PlotKind.SUBSET_ORDER:
            for b in range(1, max_value + 1):
                for a in submasks_ascending(b):
                    if a != b:
                        yield (a, b)
            return
        for p in range(1, max_value + 1):
            for value in self.row(p):
                yield (p, value)


_DEFAULT_ENGINE: LaverEngine | None = None
_DEFAULT_LOCK = threading.Lock()


def get_default_engine() -> LaverEngine:
    """Return the engine shared by the module-level functions."""
    global _DEFAULT_ENGINE  # noqa: PLW0603
    with _DEFAULT_LOCK:
        if _DEFAULT_ENGINE is None:
            _DEFAULT_ENGINE = LaverEngine()
        return _DEFAULT_ENGINE


def set_default_engine(engine: LaverEngine | None) -> None:
    """Replace the shared engine; None resets it to a fresh one on next use."""
    global _DEFAULT_ENGINE  # noqa: PLW0603
    with _DEFAULT_LOCK:
        _DEFAULT_ENGINE = engine


def back_prod(p: int, q: int) -> int:
    """Return p*q in the backwards convention."""
    return get_default_engine().back_prod(p, q)


def star_prod(n: int, p: int, q: int) -> int:
    """Return p *_n q in the table of order 2^n."""
    return get_default_engine().star_prod(n, p, q)


def circ(p: int, q: int, conv: Convention | None = None) -> int:
    """Return p o q, in the backwards convention unless conv says otherwise."""
    return get_default_engine().circ(p, q, conv or Convention.back())


def period(p: int) -> int:
    """Return the period of p."""
    return get_default_engine().period(p)


def threshold(p: int) -> int:
    """Return the threshold of p."""
    return get_default_engine().threshold(p)


def coperiod(p: int) -> int:
    """Return the coperiod of p."""
    return get_default_engine().coperiod(p)


def cothreshold(p: int) -> int:
    """Return the cothreshold of p."""
    return get_default_engine().cothreshold(p)


def period_info(p: int) -> PeriodInfo:
    """Return the period data of p."""
    return get_default_engine().period_info(p)


def compute_row(p: int) -> Row:
    """Return the row of p computed by the recurrence."""
    return get_default_engine().compute_row(p)


def left_power(n: int, x: int, k: int) -> int:
    """Return the k-th left power of x in the table of order 2^n."""
    return get_default_engine().left_power(n, x, k)


def star_table(n: int) -> list[list[int]]:
    """Return the table of order 2^n."""
    return get_default_engine().star_table(n)


def back_table(rows: int, columns: int) -> list[list[int]]:
    """Return a block of the backwards table."""
    return get_default_engine().back_table(rows, columns)


def plot_points(kind: PlotKind, max_value: int) -> Iterator[tuple[int, int]]:
    """Yield coordinate pairs for plotting."""
    return get_default_engine().plot_points(kind, max_value)
