"""Constants for Laver tables."""

from enum import IntEnum, StrEnum
from typing import Final

# Elements are plain ints below this bound
ELEMENT_BITS: Final = 62
MAX_ELEMENT: Final = 1 << ELEMENT_BITS

# Order exponents accepted by the Star convention
MIN_ORDER: Final = 1
MAX_ORDER: Final = 61

# Threshold file
STORE_MAGIC: Final = b"LVRT"
STORE_VERSION: Final = 1
STORE_HEADER_FORMAT: Final = "<4sIQ"
STORE_THETA_DTYPE: Final = "<u4"
STORE_CRC_FORMAT: Final = "<I"
LOCK_SUFFIX: Final = ".lock"
STORE_LIMIT: Final = 1 << 32  # thresholds are 32-bit

# Scan
CHECKPOINT_INTERVAL: Final = 1 << 16

# Row cache
MIB: Final = 1 << 20
DEFAULT_CACHE_BYTES: Final = 256 * MIB
MIN_CACHE_BYTES: Final = MIB
ROW_OVERHEAD_BYTES: Final = 64
ROW_ENTRY_BYTES: Final = 8
LOOKUP_CACHE_BYTES: Final = 64 * MIB

# Stats
GROWTH_MAX_N: Final = 30
PERCENT_DECIMALS: Final = 6

# Oracle
ORACLE_MAX_P: Final = 1 << 12

# Verify
DEFAULT_SEED: Final = 0
MAX_COUNTEREXAMPLES: Final = 100
SAMPLE_SIZE: Final = 64
SAMPLED_CASES: Final = 2000
STABILITY_PAIRS: Final = 100_000
MAX_FINDINGS: Final = 20

# Environment overrides for the CLI
ENV_STORE: Final = "LAVER_STORE"
ENV_CACHE_BYTES: Final = "LAVER_CACHE_BYTES"
ENV_SEED: Final = "LAVER_SEED"


class ConventionKind(StrEnum):
    """Presentation of the table product."""

    BACK = "back"
    STAR = "star"


class PlotKind(StrEnum):
    """Point sets emitted by plot_points."""

    SUBSET_ORDER = "subset-order"
    TABLE = "table"


class OutputFormat(StrEnum):
    """CLI output rendering."""

    PLAIN = "plain"
    CSV = "csv"
    JSON = "json"


class ExportFormat(StrEnum):
    """Report export formats."""

    CSV = "csv"
    JSON = "json"


class ExitCode(IntEnum):
    """CLI exit codes."""

    OK = 0
    INVALID = 1
    COUNTEREXAMPLE = 2
    IO_ERROR = 3
