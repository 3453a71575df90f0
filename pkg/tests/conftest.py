"""Fixtures for laver_tables tests."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import pytest

from laver_tables.core import LaverEngine, set_default_engine
from laver_tables.storage import load
from laver_tables.store import ThresholdStore, scan

FIXTURES_DIR = Path(__file__).parent / "fixtures"

SESSION_STORE_MAX_P = 1 << 14
DEEP_STORE_MAX_P = 1 << 18


def pytest_addoption(parser: pytest.Parser) -> None:
    """Add options for long-running checks."""
    parser.addoption(
        "--run-slow", action="store_true", default=False, help="run slow tests"
    )
    parser.addoption(
        "--laver-store",
        default=None,
        help="prebuilt threshold file covering 2^22 for the frequency table",
    )


def pytest_collection_modifyitems(
    config: pytest.Config, items: list[pytest.Item]
) -> None:
    """Skip slow tests unless --run-slow is given."""
    if config.getoption("--run-slow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


def load_fixture(filename: str) -> Any:
    """Load a fixture file."""
    with open(FIXTURES_DIR / filename) as f:
        return json.load(f)


@pytest.fixture(scope="session")
def store() -> ThresholdStore:
    """Return a threshold store covering p <= 2^14."""
    return scan(SESSION_STORE_MAX_P)


@pytest.fixture(scope="session")
def deep_store(store: ThresholdStore) -> ThresholdStore:
    """Return a threshold store covering p <= 2^18, resumed from the 2^14 one."""
    return scan(DEEP_STORE_MAX_P, store)


@pytest.fixture(scope="session")
def large_store(pytestconfig: pytest.Config) -> ThresholdStore:
    """Return the store given by --laver-store."""
    path = pytestconfig.getoption("--laver-store")
    if not path:
        pytest.skip("needs --laver-store")
    return load(Path(path))


@pytest.fixture
def engine() -> LaverEngine:
    """Return a fresh engine without a store."""
    return LaverEngine()


@pytest.fixture(autouse=True)
def reset_default_engine():
    """Give every test a fresh shared engine."""
    set_default_engine(None)
    yield
    set_default_engine(None)


@pytest.fixture
def star_tables() -> dict[str, list[list[int]]]:
    """Load the printed tables of order 4 and 8."""
    return load_fixture("star_tables.json")


@pytest.fixture
def backwards_table() -> list[list[int]]:
    """Load rows 0..7 of the backwards table."""
    return load_fixture("backwards_table.json")


@pytest.fixture
def period_threshold_18() -> dict[str, list[int | None]]:
    """Load periods and thresholds of p = 1..18."""
    return load_fixture("period_threshold_18.json")


@pytest.fixture
def row_494() -> list[dict[str, Any]]:
    """Load the partial rows of 494."""
    return load_fixture("row_494.json")


@pytest.fixture
def period_table_256() -> list[list[int]]:
    """Load the periods of p = 1..256 in rows of 16."""
    return load_fixture("period_table_256.json")


@pytest.fixture
def joint_table_4096() -> list[dict[str, int]]:
    """Load the (threshold, period) histogram for p <= 2^12."""
    return load_fixture("joint_table_4096.json")


@pytest.fixture
def doubling_table() -> dict[str, int]:
    """Load doubling counts by level."""
    return load_fixture("doubling_table.json")


@pytest.fixture
def frequency_tables() -> dict[str, Any]:
    """Load period counts and percentages."""
    return load_fixture("frequency_tables.json")


@pytest.fixture
def binary_partition_counts() -> list[int]:
    """Load the first binary partition counts."""
    return load_fixture("a018819.json")
