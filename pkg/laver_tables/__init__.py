"""Laver tables - products, periods, thresholds and property checks."""

from __future__ import annotations

from .cache import RowCache
from .core import (
    LaverEngine,
    back_prod,
    back_table,
    circ,
    compute_row,
    coperiod,
    cothreshold,
    get_default_engine,
    left_power,
    period,
    period_info,
    plot_points,
    set_default_engine,
    star_prod,
    star_table,
    subset_leq,
    threshold,
)
from .exceptions import LaverError
from .maximal import (
    generate_by_insertion,
    insert_zero_block,
    is_maximal,
    iter_maximal,
    maximal_prod,
    maximal_row,
    maximal_to_partition,
    partition_to_maximal,
)
from .models import BinaryPartition, Convention, Row
from .oracle import brute_force_oracle
from .storage import load, save
from .store import ThresholdStore, lookup_product, partial_rows, reconstruct_row, scan
from .term import eval_term, parse

__all__ = [
    "BinaryPartition",
    "Convention",
    "LaverEngine",
    "LaverError",
    "Row",
    "RowCache",
    "ThresholdStore",
    "back_prod",
    "back_table",
    "brute_force_oracle",
    "circ",
    "compute_row",
    "coperiod",
    "cothreshold",
    "eval_term",
    "generate_by_insertion",
    "get_default_engine",
    "insert_zero_block",
    "is_maximal",
    "iter_maximal",
    "left_power",
    "load",
    "lookup_product",
    "maximal_prod",
    "maximal_row",
    "maximal_to_partition",
    "parse",
    "partial_rows",
    "partition_to_maximal",
    "period",
    "period_info",
    "plot_points",
    "reconstruct_row",
    "save",
    "scan",
    "set_default_engine",
    "star_prod",
    "star_table",
    "subset_leq",
    "threshold",
]
