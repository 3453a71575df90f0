"""Property suites checking the structure of Laver tables."""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
import logging

import numpy as np

from .const import (
    DEFAULT_SEED,
    MAX_COUNTEREXAMPLES,
    MAX_FINDINGS,
    SAMPLE_SIZE,
    SAMPLED_CASES,
    STABILITY_PAIRS,
)
from .core import LaverEngine
from .helpers import is_power_of_two, two_adic_valuation
from .maximal import (
    count_binary_partitions,
    generate_by_insertion,
    is_maximal,
    iter_maximal,
    maximal_row,
    parse_pattern,
    partition_to_maximal,
)
from .models import Convention, SuiteResult
from .oracle import brute_force_oracle, brute_force_table, is_left_distributive
from .reference import PERIOD_TABLE_256, PERIODS_18, THRESHOLDS_18
from .store import ThresholdStore, scan

_LOGGER = logging.getLogger(__name__)


class VerifyContext:
    """Engine and threshold store shared by the suites of one run."""

    def __init__(
        self, seed: int = DEFAULT_SEED, store: ThresholdStore | None = None
    ) -> None:
        """Initialize the context, optionally from an existing store."""
        self.seed = seed
        self.store = store
        self.engine = LaverEngine(store=store)
        self._back_tables: dict[int, np.ndarray] = {}
        self._star_tables: dict[int, np.ndarray] = {}

    def rng(self) -> np.random.Generator:
        """Return a fresh generator seeded with the run seed."""
        return np.random.default_rng(self.seed)

    def require(self, max_p: int) -> ThresholdStore:
        """Return a store covering max_p, extending the current one if needed."""
        max_p = max(max_p, 2)
        if self.store is None or self.store.max_p < max_p:
            self.store = scan(max_p, self.store)
            self.engine.attach_store(self.store)
        return self.store

    def product(self, p: int, q: int) -> int:
        """Return p*q from the store."""
        return self.store.product(p, q)

    def period(self, p: int) -> int:
        """Return the period of p from the store."""
        return self.store.period(p)

    def row(self, p: int) -> np.ndarray:
        """Return the row of p as an array."""
        return np.asarray(self.store.reconstruct_row(p).values, dtype=np.int64)

    def thetas(self) -> np.ndarray:
        """Return the thresholds indexed by p, with 0 at indices 0 and 1."""
        return np.concatenate(
            [np.zeros(2, dtype=np.int64), self.store.thetas.astype(np.int64)]
        )

    def periods(self) -> np.ndarray:
        """Return the periods indexed by p."""
        return self.store.periods().astype(np.int64)

    def back_table(self, bits: int) -> np.ndarray:
        """Return p*q for p, q below 2^bits."""
        if bits not in self._back_tables:
            size = 1 << bits
            columns = np.arange(size)
            table = np.empty((size, size), dtype=np.int64)
            table[0] = columns
            for p in range(1, size):
                row = self.row(p)
                table[p] = row[columns % len(row)]
            self._back_tables[bits] = table
        return self._back_tables[bits]

    def star_array(self, n: int) -> np.ndarray:
        """Return the table of order 2^n indexed from 1."""
        if n not in self._star_tables:
            size = 1 << n
            table = np.zeros((size + 1, size + 1), dtype=np.int64)
            if n == 0:
                table[1, 1] = 1
            else:
                table[1:, 1:] = self.engine.star_table(n)
            self._star_tables[n] = table
        return self._star_tables[n]


class Tally:
    """Collects instances, counterexamples and findings into a SuiteResult."""

    def __init__(self, result: SuiteResult) -> None:
        """Initialize over an empty result."""
        self.result = result

    def _add(self, case: Sequence[int]) -> None:
        if len(self.result.counterexamples) < MAX_COUNTEREXAMPLES:
            self.result.counterexamples.append(tuple(int(value) for value in case))

    def check(self, ok: bool, *case: int) -> bool:
        """Record one instance."""
        self.result.instances += 1
        if not ok:
            self._add(case)
        return ok

    def check_array(
        self,
        ok: np.ndarray,
        *prefix: int,
        axes: Sequence[np.ndarray] | None = None,
    ) -> bool:
        """
        Record every entry of a boolean array as one instance.

        A failing entry is reported as prefix followed by its coordinates,
        mapped through axes when given.
        """
        self.result.instances += int(ok.size)
        if ok.all():
            return True
        room = MAX_COUNTEREXAMPLES - len(self.result.counterexamples)
        for index in np.argwhere(~ok)[: max(room, 0)]:
            if axes is None:
                values = tuple(int(i) for i in index)
            else:
                values = tuple(int(axes[k][i]) for k, i in enumerate(index))
            self._add((*prefix, *values))
        return False

    def finding(self, *case: int) -> None:
        """Record an advisory finding."""
        if len(self.result.findings) < MAX_FINDINGS:
            self.result.findings.append(tuple(int(value) for value in case))


SuiteFunc = Callable[[VerifyContext, int, Tally], None]


@dataclass(frozen=True)
class SuiteSpec:
    """A registered suite."""

    name: str
    run: SuiteFunc
    default_bound: int
    store_bound: Callable[[int], int]
    advisory: bool = False

    @property
    def description(self) -> str:
        """Return the first docstring line of the suite."""
        return (self.run.__doc__ or "").strip().splitlines()[0]


SUITES: dict[str, SuiteSpec] = {}


def _no_store(_: int) -> int:
    return 0


def suite(
    name: str,
    default_bound: int,
    store_bound: Callable[[int], int] = _no_store,
    advisory: bool = False,
) -> Callable[[SuiteFunc], SuiteFunc]:
    """Register a suite under name."""

    def decorator(func: SuiteFunc) -> SuiteFunc:
        SUITES[name] = SuiteSpec(name, func, default_bound, store_bound, advisory)
        return func

    return decorator


def _pow2(bits: int) -> int:
    return 1 << bits


def _pow2_plus_one(bits: int) -> int:
    return 1 << (bits + 1)


def _sample(rng: np.random.Generator, values: range, size: int) -> Iterable[int]:
    if len(values) <= size:
        return values
    return (int(value) for value in rng.choice(values, size, replace=False))


@suite("distributivity", 8, _pow2)
def check_distributivity(ctx: VerifyContext, bound: int, tally: Tally) -> None:
    """Left distributivity of every p, q, r below 2^bound."""
    table = ctx.back_table(bound)
    for p, row in enumerate(table):
        left = row[table]
        right = table[row[:, None], row[None, :]]
        tally.check_array(left == right, p)


@suite("uniqueness", 4, _pow2)
def check_uniqueness(ctx: VerifyContext, bound: int, tally: Tally) -> None:
    """The defining recursion rebuilt by brute force matches star_prod."""
    for n in range(1, bound + 1):
        size = 1 << n
        brute = brute_force_table(size)
        tally.check(is_left_distributive(brute), n)
        axis = np.arange(1, size + 1)
        mine = np.asarray(ctx.engine.star_table(n))
        tally.check_array(brute[1:, 1:] == mine, n, axes=(axis, axis))


@suite("power1", 12, _pow2_plus_one)
def check_power1(ctx: VerifyContext, bound: int, tally: Tally) -> None:
    """Adding 2^m or 2^n to p < 2^m < 2^n shifts the same columns."""
    rng = ctx.rng()
    for m in range(1, bound):
        for p in _sample(rng, range(1, 1 << m), SAMPLE_SIZE):
            columns = range(2 * ctx.period(p))
            base = [ctx.product(p, q) for q in columns]
            near = [ctx.product(p + (1 << m), q) - (1 << m) for q in columns]
            for n in range(m + 1, bound + 1):
                for q in columns:
                    shifted = ctx.product(p + (1 << n), q) == base[q] + (1 << n)
                    tally.check((near[q] == base[q]) == shifted, p, m, n, q)


def _split_shift(diff: int, m: int, n: int) -> tuple[int, int] | None:
    i, j = diff >> m & 1, diff >> n & 1
    return (i, j) if diff == (i << m) + (j << n) else None


@suite("power2", 8, _pow2_plus_one)
def check_power2(ctx: VerifyContext, bound: int, tally: Tally) -> None:
    """Adding 2^m + 2^n or 2^s + 2^t shifts by matching digits."""
    rng = ctx.rng()
    pairs = [(m, n) for m in range(2, bound) for n in range(m + 1, bound + 1)]
    for m, n in pairs:
        for s, t in pairs:
            limit = min(1 << (m - 1), 1 << (s - 1))
            for p in _sample(rng, range(1, limit), 8):
                for q in range(4 * ctx.period(p)):
                    base = ctx.product(p, q)
                    first = _split_shift(
                        ctx.product(p + (1 << m) + (1 << n), q) - base, m, n
                    )
                    if not tally.check(first is not None, p, m, n, s, t, q):
                        continue
                    i, j = first
                    second = ctx.product(p + (1 << s) + (1 << t), q) - base
                    tally.check(second == (i << s) + (j << t), p, m, n, s, t, q)
    # Without p < 2^(m-1) the correspondence can break; report what is found.
    small = min(bound, 7)
    for m in range(1, small - 1):
        for n in range(m + 1, small + 1):
            for s in range(1, small - 1):
                for t in range(s + 1, small + 1):
                    for p in range(1 << (m - 1), min(1 << m, 1 << s)):
                        for q in range(4 * ctx.period(p)):
                            base = ctx.product(p, q)
                            first = _split_shift(
                                ctx.product(p + (1 << m) + (1 << n), q) - base, m, n
                            )
                            second = _split_shift(
                                ctx.product(p + (1 << s) + (1 << t), q) - base, s, t
                            )
                            if first != second:
                                tally.finding(p, m, n, s, t, q)
                                break


@suite("power3", 12, _pow2_plus_one)
def check_power3(ctx: VerifyContext, bound: int, tally: Tally) -> None:
    """The period of p + 2^m + 2^n lies between that of p + 2^(m+1) + 2^n and twice it."""
    for n in range(3, bound + 1):
        for m in range(1, n - 1):
            for p in range(1, 1 << m):
                low = ctx.period(p + (2 << m) + (1 << n))
                mid = ctx.period(p + (1 << m) + (1 << n))
                tally.check(low <= mid <= 2 * low, p, m, n)
    if bound >= 5:
        # Equality on the right is attained at p = 5, m = 3, n = 5.
        tally.check(ctx.period(45) == 8 and ctx.period(53) == 4, 5, 3, 5)


@suite("idempotents", 16, _pow2)
def check_idempotents(ctx: VerifyContext, bound: int, tally: Tally) -> None:
    """p*p = 0 exactly for powers of 2."""
    for p in range(1, (1 << bound) + 1):
        tally.check((ctx.product(p, p) == 0) == is_power_of_two(p), p)


@suite("seuil2", 16, _pow2)
def check_seuil2(ctx: VerifyContext, bound: int, tally: Tally) -> None:
    """p*2^k is a power 2^l with l >= k whenever 2^k is below the period."""
    for p in range(1, (1 << bound) + 1):
        period = ctx.period(p)
        k = 0
        while 1 << k < period:
            value = ctx.product(p, 1 << k)
            tally.check(is_power_of_two(value) and value >= 1 << k, p, k)
            k += 1


@suite("seuil", 16, _pow2)
def check_seuil(ctx: VerifyContext, bound: int, tally: Tally) -> None:
    """Adding a top bit either doubles the period or keeps it with a small threshold."""
    thetas = ctx.thetas()
    periods = ctx.periods()
    for m in range(1, bound):
        p = np.arange(1, 1 << m)
        q = p + (1 << m)
        doubled = (thetas[q] == periods[p]) & (periods[q] == 2 * periods[p])
        kept = (2 * thetas[q] < periods[p]) & (periods[q] == periods[p])
        tally.check_array(doubled | kept, axes=(q,))


@suite("row-2n", 16, _pow2)
def check_row_power(ctx: VerifyContext, bound: int, tally: Tally) -> None:
    """The row of 2^n is q mod 2^n, with period 2^n and threshold 2^(n-1)."""
    for n in range(1, bound + 1):
        size = 1 << n
        row = ctx.engine.compute_row(size)
        top = sum(1 for value in row if value >= size >> 1)
        tally.check(row.values == tuple(range(size)) and top == size >> 1, n)


@suite("row-double", 16, _pow2_plus_one)
def check_row_double(ctx: VerifyContext, bound: int, tally: Tally) -> None:
    """The row of 2^m + 2^n has period 2^(m+1) and two shifted halves."""
    for n in range(1, bound + 1):
        for m in range(n):
            p = (1 << m) + (1 << n)
            row = ctx.row(p)
            if not tally.check(len(row) == 2 << m, m, n):
                continue
            q = np.arange(1 << m)
            ok = (row[q] == q) & (row[q + (1 << m)] == q + (1 << n))
            tally.check_array(ok, m, n)


@suite("row3", 14, _pow2_plus_one)
def check_row3(ctx: VerifyContext, bound: int, tally: Tally) -> None:
    """Rows with three bits, and the elements below 2^(n+1) of period 2^n."""
    for n in range(2, bound + 1):
        for m in range(1, n):
            for low in range(m):
                p = (1 << low) + (1 << m) + (1 << n)
                expected = 4 << low if low % 2 == 0 else 2 << low
                tally.check(ctx.period(p) == expected, low, m, n)
                if low % 2:
                    tally.check(ctx.store.theta(p) == 1 << (low - 1), low, m, n)
    periods = ctx.periods()
    for n in range(1, bound + 1):
        size = 1 << n
        p = np.arange(1, 2 * size)
        extremal = [size, size + (size >> 1)]
        if n >= 2 and n % 2 == 0:
            extremal.append(size + (size >> 1) + (size >> 2))
        block = periods[1 : 2 * size]
        ok = (block <= size) & ((block == size) == np.isin(p, extremal))
        tally.check_array(ok, n, axes=(p,))


def _scaling_holds(ctx: VerifyContext, n: int, d: int) -> bool:
    """Return True if (2^d a)*(2^d b) = 2^d (a*b) for all a, b < 2^n."""
    back = ctx.back_table(n)
    columns = np.arange(1 << n) << d
    for a in range(1, 1 << n):
        row = ctx.row(a << d)
        if not np.array_equal(row[columns % len(row)], back[a] << d):
            return False
    return True


def _star_scaling_holds(ctx: VerifyContext, n: int, d: int) -> bool:
    small = ctx.star_array(n)[1:, 1:]
    large = ctx.star_array(n + d)
    index = np.arange(1, (1 << n) + 1) << d
    return np.array_equal(large[np.ix_(index, index)], small << d)


@suite("draphom", 16, _pow2)
def check_draphom(ctx: VerifyContext, bound: int, tally: Tally) -> None:
    """
    Multiplying by 2^d is a homomorphism on [1, 2^n] exactly when n <= 2^(r+1).

    Rows of 2^d a come from the store, so the grid is n <= 8 and d <= 16 with
    n + d <= bound. The star check stops at tables of order 2^8.
    """
    for n in range(1, min(8, bound - 1) + 1):
        for d in range(1, min(16, bound - n) + 1):
            predicted = n <= 2 << two_adic_valuation(d)
            tally.check(_scaling_holds(ctx, n, d) == predicted, d, n, 0)
            if n + d <= 8:
                tally.check(_star_scaling_holds(ctx, n, d) == predicted, d, n, 1)


def _cordraphom_store(bits: int) -> int:
    return 1 << (2 << bits)


@suite("cordraphom", 2, _cordraphom_store)
def check_cordraphom(ctx: VerifyContext, bound: int, tally: Tally) -> None:
    """2^(2^n) ((1 + r)*q) = (1 + r 2^(2^n))*q for r < 2^(2^n)."""
    for n in range(bound + 1):
        scale = 1 << (1 << n)
        for r in range(scale):
            p = 1 + r * scale
            span = 2 * max(ctx.period(p), ctx.period(1 + r))
            for q in range(span):
                tally.check(
                    scale * ctx.product(1 + r, q) == ctx.product(p, q), n, r, q
                )


def _circ_axioms_store(bits: int) -> int:
    return max(1 << bits, 128)


@suite("circ-axioms", 5, _circ_axioms_store)
def check_circ_axioms(ctx: VerifyContext, bound: int, tally: Tally) -> None:
    """The composition laws linking the product and the composition."""
    for n in range(1, bound + 1):
        size = 1 << n
        conv = Convention.star(n)
        star = ctx.star_array(n)
        circ = np.zeros_like(star)
        for p in range(1, size + 1):
            for q in range(1, size + 1):
                circ[p, q] = ctx.engine.circ(p, q, conv)
        axis = np.arange(1, size + 1)
        p, q, r = np.meshgrid(axis, axis, axis, indexing="ij")
        axes = (axis, axis, axis)
        tally.check_array(
            star[p, circ[q, r]] == circ[star[p, q], star[p, r]], n, 1, axes=axes
        )
        tally.check_array(star[circ[p, q], r] == star[p, star[q, r]], n, 2, axes=axes)
        tally.check_array(
            circ[star[p[:, :, 0], q[:, :, 0]], p[:, :, 0]] == circ[1:, 1:],
            n,
            3,
            axes=(axis, axis),
        )
        tally.check_array(circ[circ[p, q], r] == circ[p, circ[q, r]], n, 4, axes=axes)
    back = Convention.back()
    rng = ctx.rng()
    for p, q, r in rng.integers(1, 65, size=(SAMPLED_CASES, 3)).tolist():
        pq, pr = ctx.product(p, q), ctx.product(p, r)
        if pq and pr:
            tally.check(
                ctx.product(p, ctx.engine.circ(q, r, back))
                == ctx.engine.circ(pq, pr, back),
                0,
                1,
                p,
                q,
                r,
            )
        tally.check(
            ctx.product(ctx.engine.circ(p, q, back), r)
            == ctx.product(p, ctx.product(q, r)),
            0,
            2,
            p,
            q,
            r,
        )
        if pq:
            tally.check(
                ctx.engine.circ(pq, p, back) == ctx.engine.circ(p, q, back),
                0,
                3,
                p,
                q,
                r,
            )
        tally.check(
            ctx.engine.circ(ctx.engine.circ(p, q, back), r, back)
            == ctx.engine.circ(p, ctx.engine.circ(q, r, back), back),
            0,
            4,
            p,
            q,
            r,
        )


@suite("projection", 6, _pow2_plus_one)
def check_projection(ctx: VerifyContext, bound: int, tally: Tally) -> None:
    """Reduction modulo 2^n maps the table of order 2^(n+1) onto that of order 2^n."""
    for n in range(1, bound + 1):
        size = 1 << n
        small = ctx.star_array(n)
        large = ctx.star_array(n + 1)
        axis = np.arange(1, 2 * size + 1)
        reduced = (axis - 1) % size + 1
        ok = (large[1:, 1:] - 1) % size + 1 == small[np.ix_(reduced, reduced)]
        tally.check_array(ok, n, axes=(axis, axis))


@suite("embedding", 6, _pow2_plus_one)
def check_embedding(ctx: VerifyContext, bound: int, tally: Tally) -> None:
    """p -> p + 2^n embeds the table of order 2^n into that of order 2^(n+1)."""
    for n in range(1, bound + 1):
        size = 1 << n
        small = ctx.star_array(n)[1:, 1:]
        large = ctx.star_array(n + 1)
        shifted = np.arange(1, size + 1) + size
        axis = np.arange(1, size + 1)
        tally.check_array(
            large[np.ix_(shifted, shifted)] == small + size, n, axes=(axis, axis)
        )


@suite("dougherty-i", 2, _cordraphom_store)
def check_dougherty_i(ctx: VerifyContext, bound: int, tally: Tally) -> None:
    """p - 1 = a 2^(2^k) + b with b < 2^(2^k) - 1 has period at most 2^(2^k)."""
    for k in range(bound + 1):
        scale = 1 << (1 << k)
        for a in range(scale):
            for b in range(scale - 1):
                tally.check(ctx.period(a * scale + b + 1) <= scale, k, a, b)


def _fixed_store(_: int) -> int:
    return 1 << 16


@suite("dougherty-ii", 2, _fixed_store)
def check_dougherty_ii(ctx: VerifyContext, bound: int, tally: Tally) -> None:
    """Rows of x + 1 + 2^(mn) y follow the row of 2^(l+n) - 2^n + y + 1."""
    for k in range(bound + 1):
        n = 1 << k
        mask = (1 << n) - 1
        for m in range(4):
            for z in range(1, 16):
                x = z << ((m + 1) * n)
                for y in range(1 << n):
                    p = x + 1 + (y << (m * n))
                    if not ctx.store.covers(p):
                        continue
                    l = ctx.period(x + 1).bit_length() - 1  # noqa: E741
                    if l > n:
                        continue
                    s = (1 << (l + n)) - (1 << n) + y + 1
                    if not tally.check(ctx.period(p) == ctx.period(s), k, m, z, y):
                        continue
                    ok = True
                    for q in range(ctx.period(p)):
                        value = ctx.product(s, q)
                        expected = ctx.product(x + 1, value >> n) + (
                            (value & mask) << (m * n)
                        )
                        if ctx.product(p, q) != expected:
                            ok = False
                            break
                    tally.check(ok, k, m, z, y)


@suite("maximal-oracle", 16, _pow2)
def check_maximal_oracle(ctx: VerifyContext, bound: int, tally: Tally) -> None:
    """The binary pattern test agrees with the period test, and maximal rows are submask lists."""
    periods = ctx.periods()
    for p in range(1, (1 << bound) + 1):
        by_period = periods[p] == 1 << (p - 1).bit_count()
        tally.check(is_maximal(p) == by_period, p)
    for p in iter_maximal(1, 1 << min(bound, 12)):
        tally.check(maximal_row(p) == ctx.store.reconstruct_row(p), p, 0)


@suite("maximal-stability", 14, _pow2)
def check_maximal_stability(ctx: VerifyContext, bound: int, tally: Tally) -> None:
    """Products of maximal elements or 0 stay maximal or 0; compositions stay maximal."""
    elements = list(iter_maximal(1, 1 << bound))
    pool = np.asarray([0, *elements])
    rng = ctx.rng()
    for p, q in rng.choice(pool, size=(STABILITY_PAIRS, 2)).tolist():
        value = ctx.product(p, q)
        tally.check(value == 0 or is_maximal(value), p, q, 0)
        if p and q:
            tally.check(is_maximal(ctx.product(p, q - 1) + 1), p, q, 1)


@suite("maximal-bijection", 20)
def check_maximal_bijection(ctx: VerifyContext, bound: int, tally: Tally) -> None:
    """Maximal elements of ]2^(n-1) + 2^(n-2), 2^n] match binary partitions of n - 1."""
    for n in range(2, bound + 1):
        lo = (1 << (n - 1)) + (1 << (n - 2))
        found = 0
        for p in iter_maximal(lo + 1, 1 << n):
            found += 1
            pattern = parse_pattern(p)
            partition = pattern.to_partition()
            tally.check(
                pattern.b0 == 0
                and partition.total == n - 1
                and partition_to_maximal(partition) == p,
                n,
                p,
            )
        tally.check(found == count_binary_partitions(n - 1), n, found)


@suite("theta-form", 16, _pow2, advisory=True)
def check_theta_form(ctx: VerifyContext, bound: int, tally: Tally) -> None:
    """Thresholds of the form 2^i - 2^j; exceptions are reported, not failed."""
    thetas = ctx.thetas()[2 : (1 << bound) + 1]
    low = thetas & -thetas
    run = thetas // low
    regular = (run & (run + 1)) == 0
    tally.result.instances += int(thetas.size)
    for index in np.flatnonzero(~regular):
        tally.finding(int(index) + 2, int(thetas[index]))
    if tally.result.findings:
        _LOGGER.warning("Irregular thresholds: %s", tally.result.findings)


def _reference_store(bound: int) -> int:
    return min(bound, 256)


@suite("period-table-256", 256, _reference_store)
def check_period_table(ctx: VerifyContext, bound: int, tally: Tally) -> None:
    """Periods of p = 1..256 match the published 16 x 16 table."""
    expected = [period for row in PERIOD_TABLE_256 for period in row]
    for p in range(1, min(bound, 256) + 1):
        tally.check(ctx.period(p) == expected[p - 1], p)


@suite("period-theta-18", 18, _reference_store)
def check_period_theta(ctx: VerifyContext, bound: int, tally: Tally) -> None:
    """Periods and thresholds of p = 1..18 match the published table."""
    for p in range(1, min(bound, 18) + 1):
        tally.check(ctx.period(p) == PERIODS_18[p - 1], p, 0)
        if p >= 2:
            tally.check(ctx.store.theta(p) == THRESHOLDS_18[p - 1], p, 1)


@suite("row-shape", 12, _pow2)
def check_row_shape(ctx: VerifyContext, bound: int, tally: Tally) -> None:
    """Rows rise strictly from 0 to p - 1 through submasks of p - 1."""
    for p in range(1, (1 << bound) + 1):
        row = ctx.row(p)
        tally.check(
            is_power_of_two(len(row))
            and row[0] == 0
            and row[-1] == p - 1
            and bool(np.all(np.diff(row) > 0))
            and not np.any(row & ~(p - 1))
            and len(row) <= 1 << (p - 1).bit_count(),
            p,
        )


@suite("left-powers", 5, _pow2)
def check_left_powers(ctx: VerifyContext, bound: int, tally: Tally) -> None:
    """p star q is the q-th left power of p + 1."""
    for n in range(1, bound + 1):
        size = 1 << n
        for p in range(1, size + 1):
            base = p % size + 1
            for q in range(1, size + 1):
                tally.check(
                    ctx.engine.star_prod(n, p, q)
                    == ctx.engine.left_power(n, base, q),
                    n,
                    p,
                    q,
                )


@suite("lambda-homomorphism", 5, _pow2)
def check_lambda_homomorphism(ctx: VerifyContext, bound: int, tally: Tally) -> None:
    """Left multiplication by p of period at most 2^m maps order 2^m homomorphically."""
    for n in range(1, bound + 1):
        size = 1 << n
        star = ctx.star_array(n)
        for m in range(n + 1):
            small = ctx.star_array(m)
            axis = np.arange(1, (1 << m) + 1)
            q, r = np.meshgrid(axis, axis, indexing="ij")
            for p in range(1, size + 1):
                period = size if p == size else ctx.period(size - p)
                if period > 1 << m:
                    continue
                row = star[p]
                ok = row[small[q, r]] == star[row[q], row[r]]
                tally.check_array(ok, n, m, p, axes=(axis, axis))


@suite("coperiod", 12, _pow2_plus_one)
def check_coperiod(ctx: VerifyContext, bound: int, tally: Tally) -> None:
    """Period and threshold of p + 2^m do not depend on m once 2^m > p."""
    for p in range(1, 1 << bound):
        coperiod = ctx.engine.coperiod(p)
        cothreshold = ctx.engine.cothreshold(p)
        for m in range(p.bit_length() + 1, bound + 1):
            q = p + (1 << m)
            tally.check(
                ctx.period(q) == coperiod and ctx.store.theta(q) == cothreshold, p, m
            )


@suite("modulo", 16, _pow2)
def check_modulo(ctx: VerifyContext, bound: int, tally: Tally) -> None:
    """Reduction modulo 2^n commutes with the product."""
    rng = ctx.rng()
    cases = rng.integers(0, 1 << bound, size=(SAMPLED_CASES, 2)).tolist()
    exponents = rng.integers(1, bound + 1, size=SAMPLED_CASES).tolist()
    for (p, q), n in zip(cases, exponents, strict=True):
        size = 1 << n
        tally.check(
            ctx.product(p % size, q % size) == ctx.product(p, q) % size, p, q, n
        )


@suite("ld-iff-power", 32)
def check_ld_iff_power(ctx: VerifyContext, bound: int, tally: Tally) -> None:
    """The defining recursion on [1, N] is left distributive exactly for N a power of 2."""
    for size in range(1, bound + 1):
        tally.check(
            is_left_distributive(brute_force_table(size)) == is_power_of_two(size),
            size,
        )


@suite("maximal-insertion", 16)
def check_maximal_insertion(ctx: VerifyContext, bound: int, tally: Tally) -> None:
    """Zero-block insertions from 1^n reach exactly the maximal words with b0 = 0."""
    for ones in range(1, min(6, bound) + 1):
        generated = set(generate_by_insertion(ones, bound))
        for word in generated:
            tally.check(is_maximal(int(word, 2) + 1), ones, int(word, 2))
        for value in range(1, 1 << bound):
            if value.bit_count() != ones:
                continue
            word = format(value, "b")
            if len(word) > 1 and word[1] != "1":
                continue
            if is_maximal(value + 1):
                tally.check(word in generated, ones, value)


@suite("reconstruction", 14, _pow2)
def check_reconstruction(ctx: VerifyContext, bound: int, tally: Tally) -> None:
    """Rows rebuilt from thresholds equal rows computed by the recurrence and by brute force."""
    for p in range(1, (1 << bound) + 1):
        tally.check(ctx.store.reconstruct_row(p) == ctx.engine.compute_row(p), p)
    bits = min(bound, 10)
    axis = np.arange(1 << bits)
    tally.check_array(
        brute_force_oracle(1 << bits) == ctx.back_table(bits), axes=(axis, axis)
    )
