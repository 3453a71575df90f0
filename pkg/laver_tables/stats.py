"""Period statistics over a threshold store."""

from __future__ import annotations

import csv
import io
import json
import logging
from pathlib import Path
from typing import Any

import numpy as np

from .const import GROWTH_MAX_N, ExportFormat
from .core import LaverEngine, get_default_engine
from .exceptions import BoundError, DomainError, InsufficientStoreError
from .helpers import is_power_difference
from .models import DoublingReport, FreqReport, GrowthReport, JointReport
from .store import ThresholdStore

_LOGGER = logging.getLogger(__name__)

Report = FreqReport | DoublingReport | JointReport | GrowthReport


def _require_cover(store: ThresholdStore, p: int) -> None:
    if not store.covers(p):
        raise InsufficientStoreError(f"Store covers p <= {store.max_p}, need {p}")


def _check_level(n: int, lowest: int = 0) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < lowest:
        raise DomainError(f"Level must be an integer >= {lowest}, got {n!r}")


def _exponents(periods: np.ndarray) -> np.ndarray:
    """Return log2 of an array of powers of 2."""
    return np.log2(periods.astype(np.float64)).astype(np.int64)


def frequency_table(store: ThresholdStore, n: int) -> FreqReport:
    """
    Count the p in [1, 2^n] with period 2^k, for k = 0..n.

    Raises:
        InsufficientStoreError: If the store does not cover 2^n.

    """
    _check_level(n)
    _require_cover(store, 1 << n)
    periods = store.periods()[1 : (1 << n) + 1]
    counts = np.bincount(_exponents(periods), minlength=n + 1)
    return FreqReport(n, tuple(int(count) for count in counts))


def _doubling_per_k(periods: np.ndarray, n: int) -> tuple[int, ...]:
    """Return P_k(n) for k = 0..n from periods indexed by p."""
    half = 1 << (n - 1)
    low = periods[1 : half + 1]
    high = periods[half + 1 : 2 * half + 1]
    doubled = _exponents(high[high == 2 * low])
    counts = np.bincount(doubled, minlength=n + 1)
    return tuple(int(count) for count in counts[: n + 1])


def doubling_counts(store: ThresholdStore, n: int) -> DoublingReport:
    """
    Count the elements whose period doubles when a power of 2 is added.

    counts[k] is the number of p in [1, 2^(n-1)] with period 2^(k-1) whose
    period becomes 2^k after adding 2^(n-1). total is the number of p in
    [1, 2^(n+1)] whose period doubles after adding 2^(n+1), which needs a
    store covering 2^(n+2).

    Raises:
        InsufficientStoreError: If the store does not cover 2^(n+2).

    """
    _check_level(n, lowest=1)
    _require_cover(store, 1 << (n + 2))
    periods = store.periods()
    total = sum(_doubling_per_k(periods, n + 2))
    return DoublingReport(n, _doubling_per_k(periods, n), total)


def recursion_identity_holds(store: ThresholdStore, n: int) -> bool:
    """Check N_k(n) = 2 N_k(n-1) + P_k(n) - P_(k+1)(n) for every k = 0..n."""
    _check_level(n, lowest=1)
    _require_cover(store, 1 << n)
    current = frequency_table(store, n).counts
    previous = (*frequency_table(store, n - 1).counts, 0)
    doubling = (*_doubling_per_k(store.periods(), n), 0)
    return all(
        current[k] == 2 * previous[k] + doubling[k] - doubling[k + 1]
        for k in range(n + 1)
    )


def monotone_periods(store: ThresholdStore, n: int) -> list[int]:
    """
    Return the p in [1, 2^n] with period(p + 2^n) not in {period(p), 2 period(p)}.

    Only p with p + 2^n covered by the store are checked.
    """
    _check_level(n)
    size = 1 << n
    stop = min(size, store.max_p - size)
    if stop < 1:
        return []
    periods = store.periods()
    low = periods[1 : stop + 1]
    high = periods[size + 1 : size + stop + 1]
    bad = np.flatnonzero((high != low) & (high != 2 * low)) + 1
    return [int(p) for p in bad]


def joint_table(store: ThresholdStore, max_p: int) -> JointReport:
    """
    Histogram the (threshold, period) pairs of p in [2, max_p].

    Thresholds that are not 2^i - 2^j are listed in irregular.

    Raises:
        InsufficientStoreError: If the store does not cover max_p.

    """
    _check_level(max_p, lowest=1)
    if max_p < 2:
        return JointReport(max_p)
    _require_cover(store, max_p)
    thetas = store.thetas[: max_p - 1].astype(np.uint64)
    periods = store.periods()[2 : max_p + 1]
    pairs, counts = np.unique(
        np.stack([thetas, periods], axis=1), axis=0, return_counts=True
    )
    cells = {
        (int(theta), int(period)): int(count)
        for (theta, period), count in zip(pairs, counts, strict=True)
    }
    irregular = tuple(
        int(theta) for theta in np.unique(thetas) if not is_power_difference(int(theta))
    )
    if irregular:
        _LOGGER.warning("Thresholds not of the form 2^i - 2^j: %s", irregular)
    return JointReport(max_p, cells, irregular)


def pi_of_one_growth(
    max_n: int,
    store: ThresholdStore | None = None,
    engine: LaverEngine | None = None,
) -> GrowthReport:
    """
    Return the period of 1 in the tables of order 2^n, n = 1..max_n.

    In the backwards convention that is the period of 2^n - 1, read from the
    store where it covers the element and computed by the engine otherwise.

    Raises:
        BoundError: If max_n exceeds the supported growth bound.

    """
    _check_level(max_n, lowest=1)
    if max_n > GROWTH_MAX_N:
        raise BoundError(f"Growth scan supports n <= {GROWTH_MAX_N}, got {max_n}")
    engine = engine or get_default_engine()
    values = []
    for n in range(1, max_n + 1):
        p = (1 << n) - 1
        if store is not None and store.covers(p):
            period = store.period(p)
        else:
            period = engine.period(p)
        _LOGGER.debug("Period of 1 at order 2^%d is %d", n, period)
        values.append((n, period))
    return GrowthReport(tuple(values))


def report_rows(report: Report) -> tuple[list[str], list[list[Any]]]:
    """Return the header and rows of a report for tabular output."""
    if isinstance(report, FreqReport):
        return ["k", "count", "frequency"], [
            [k, count, frequency]
            for k, (count, frequency) in enumerate(
                zip(report.counts, report.frequencies, strict=True)
            )
        ]
    if isinstance(report, DoublingReport):
        rows: list[list[Any]] = [[k, count] for k, count in enumerate(report.counts)]
        rows.append(["total", report.total])
        return ["k", "count"], rows
    if isinstance(report, JointReport):
        return ["threshold", "period", "count"], [
            [theta, period, count]
            for (theta, period), count in sorted(report.cells.items())
        ]
    return ["n", "period"], [[n, period] for n, period in report.values]


def report_to_json(report: Report) -> dict[str, Any]:
    """Return the JSON object of a report."""
    if isinstance(report, FreqReport):
        return {"kind": "frequency", "n": report.n, "counts": list(report.counts)}
    if isinstance(report, DoublingReport):
        return {
            "kind": "doubling",
            "n": report.n,
            "counts": list(report.counts),
            "total": report.total,
        }
    if isinstance(report, JointReport):
        return {
            "kind": "joint",
            "max_p": report.max_p,
            "cells": [
                {"threshold": theta, "period": period, "count": count}
                for (theta, period), count in sorted(report.cells.items())
            ],
            "irregular": list(report.irregular),
        }
    return {"kind": "growth", "values": [list(pair) for pair in report.values]}


def report_from_json(text: str) -> Report:
    """
    Rebuild a report from its JSON export.

    Raises:
        DomainError: If the object is not a known report.

    """
    data = json.loads(text)
    kind = data.get("kind") if isinstance(data, dict) else None
    if kind == "frequency":
        return FreqReport(data["n"], tuple(data["counts"]))
    if kind == "doubling":
        return DoublingReport(data["n"], tuple(data["counts"]), data["total"])
    if kind == "joint":
        return JointReport(
            data["max_p"],
            {
                (cell["threshold"], cell["period"]): cell["count"]
                for cell in data["cells"]
            },
            tuple(data["irregular"]),
        )
    if kind == "growth":
        return GrowthReport(tuple((n, period) for n, period in data["values"]))
    raise DomainError(f"Unknown report kind {kind!r}")


def export(report: Report, fmt: ExportFormat, path: Path | None = None) -> str:
    """
    Render a report as CSV or JSON, writing it to path when given.

    Both formats use LF line endings and UTF-8.
    """
    if ExportFormat(fmt) is ExportFormat.JSON:
        text = json.dumps(report_to_json(report), sort_keys=True) + "\n"
    else:
        header, rows = report_rows(report)
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        text = buffer.getvalue()
    if path is not None:
        Path(path).write_text(text, encoding="utf-8", newline="\n")
    return text
