"""Published values the verification suites compare against."""

from typing import Final

# Periods of p = 1..256 in rows of 16
PERIOD_TABLE_256: Final = (
    (1, 2, 2, 4, 2, 4, 4, 8, 2, 4, 4, 8, 4, 4, 4, 16),
    (2, 4, 4, 8, 4, 4, 4, 16, 4, 4, 4, 16, 8, 8, 8, 32),
    (2, 4, 4, 8, 4, 4, 4, 16, 4, 4, 4, 16, 8, 8, 8, 32),
    (4, 4, 4, 16, 4, 4, 4, 16, 4, 4, 4, 16, 16, 8, 8, 64),
    (2, 4, 4, 8, 4, 4, 4, 16, 4, 4, 4, 16, 8, 8, 8, 32),
    (4, 4, 4, 16, 4, 4, 4, 16, 4, 4, 4, 16, 16, 8, 8, 64),
    (4, 4, 4, 16, 4, 4, 4, 16, 4, 4, 4, 16, 16, 8, 8, 64),
    (8, 4, 4, 16, 4, 4, 4, 16, 4, 4, 4, 16, 16, 16, 8, 128),
    (2, 4, 4, 8, 4, 4, 4, 16, 4, 4, 4, 16, 8, 8, 8, 32),
    (4, 4, 4, 16, 4, 4, 4, 16, 4, 4, 4, 16, 16, 8, 8, 64),
    (4, 4, 4, 16, 4, 4, 4, 16, 4, 4, 4, 16, 16, 8, 8, 64),
    (8, 4, 4, 16, 4, 4, 4, 16, 4, 4, 4, 16, 16, 16, 8, 128),
    (4, 4, 4, 16, 4, 4, 4, 16, 4, 4, 4, 16, 16, 8, 8, 64),
    (4, 4, 4, 16, 4, 4, 4, 16, 4, 4, 4, 16, 16, 8, 8, 64),
    (4, 4, 4, 16, 4, 4, 4, 16, 4, 4, 4, 16, 16, 8, 8, 64),
    (16, 4, 4, 16, 4, 4, 4, 16, 4, 4, 4, 16, 16, 16, 8, 256),
)

# Periods and thresholds of p = 1..18; p = 1 has no threshold
PERIODS_18: Final = (1, 2, 2, 4, 2, 4, 4, 8, 2, 4, 4, 8, 4, 4, 4, 16, 2, 4)
THRESHOLDS_18: Final = (None, 1, 1, 2, 1, 2, 2, 4, 1, 2, 2, 4, 2, 1, 1, 8, 1, 2)
