"""Run the laver command with python -m laver_tables."""

import sys

from .cli import main

sys.exit(main())
