"""Run property suites and collect their results."""

from __future__ import annotations

from collections.abc import Iterable
from concurrent.futures import ProcessPoolExecutor
import json
import logging
from pathlib import Path
import time
from typing import Any

from .const import DEFAULT_SEED
from .exceptions import DomainError, UnknownSuiteError
from .models import SuiteResult
from .storage import load
from .suites import SUITES, SuiteSpec, Tally, VerifyContext

_LOGGER = logging.getLogger(__name__)


def list_suites() -> list[str]:
    """Return the registered suite names in registration order."""
    return list(SUITES)


def get_suite(name: str) -> SuiteSpec:
    """
    Return a registered suite.

    Raises:
        UnknownSuiteError: If no suite has that name.

    """
    try:
        return SUITES[name]
    except KeyError as err:
        raise UnknownSuiteError(f"Unknown suite {name!r}") from err


def _resolve_bound(spec: SuiteSpec, bound: int | None) -> int:
    if bound is None:
        return spec.default_bound
    if isinstance(bound, bool) or not isinstance(bound, int) or bound < 1:
        raise DomainError(f"Suite bound must be a positive integer, got {bound!r}")
    return bound


def run_suite(
    name: str,
    bound: int | None = None,
    seed: int = DEFAULT_SEED,
    context: VerifyContext | None = None,
) -> SuiteResult:
    """
    Run one suite up to bound, or its default bound when None.

    Raises:
        UnknownSuiteError: If no suite has that name.
        DomainError: If bound < 1.

    """
    spec = get_suite(name)
    bound = _resolve_bound(spec, bound)
    if context is None:
        context = VerifyContext(seed)
    if needed := spec.store_bound(bound):
        context.require(needed)
    result = SuiteResult(name, bound, seed, advisory=spec.advisory)
    started = time.monotonic()
    spec.run(context, bound, Tally(result))
    result.elapsed_ms = round((time.monotonic() - started) * 1000)
    _LOGGER.info(
        "Suite %s (bound %d): %d instances, %d counterexamples in %d ms",
        name,
        bound,
        result.instances,
        len(result.counterexamples),
        result.elapsed_ms,
    )
    return result


def _run_in_worker(
    name: str, bound: int | None, seed: int, store_path: str | None
) -> SuiteResult:
    """Run a suite in a worker process with its own context."""
    store = load(Path(store_path)) if store_path else None
    return run_suite(name, bound, seed, VerifyContext(seed, store))


def run_all(
    names: Iterable[str] | None = None,
    bound: int | None = None,
    seed: int = DEFAULT_SEED,
    workers: int | None = None,
    store_path: Path | None = None,
) -> list[SuiteResult]:
    """
    Run several suites, all registered ones by default.

    With workers == 1 the suites share one context scanned once to the
    largest store they need. Otherwise each suite runs in a worker process
    that loads store_path when given and scans what it is missing. Results
    come back in the order of names.

    Raises:
        UnknownSuiteError: If a name is not registered.
        DomainError: If bound < 1.

    """
    names = list(SUITES) if names is None else list(names)
    specs = [get_suite(name) for name in names]
    for spec in specs:
        _resolve_bound(spec, bound)
    if workers == 1 or len(specs) <= 1:
        context = VerifyContext(seed, load(store_path) if store_path else None)
        needed = max(
            (spec.store_bound(_resolve_bound(spec, bound)) for spec in specs),
            default=0,
        )
        if needed:
            context.require(needed)
        return [run_suite(name, bound, seed, context) for name in names]
    path = str(store_path) if store_path else None
    with ProcessPoolExecutor(max_workers=workers) as executor:
        futures = [
            executor.submit(_run_in_worker, name, bound, seed, path) for name in names
        ]
        return [future.result() for future in futures]


def results_to_json(results: Iterable[SuiteResult]) -> str:
    """Return the results as a JSON array."""
    data: list[dict[str, Any]] = [result.as_dict() for result in results]
    return json.dumps(data, indent=2) + "\n"
