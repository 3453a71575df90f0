"""Command-line interface for Laver tables."""

from __future__ import annotations

import argparse
from collections.abc import Iterable, Mapping, Sequence
import csv
from dataclasses import asdict, dataclass
import io
import json
import logging
import os
from pathlib import Path
import sys
from typing import IO, Any, NoReturn

import colorlog
import voluptuous as vol

from . import stats
from .cache import RowCache
from .const import (
    DEFAULT_CACHE_BYTES,
    DEFAULT_SEED,
    ENV_CACHE_BYTES,
    ENV_SEED,
    ENV_STORE,
    MIN_CACHE_BYTES,
    ConventionKind,
    ExitCode,
    ExportFormat,
    OutputFormat,
    PlotKind,
)
from .core import LaverEngine
from .exceptions import (
    ConfigError,
    DomainError,
    InsufficientStoreError,
    LaverError,
    StoreFormatError,
    StoreLockedError,
)
from .maximal import (
    is_maximal,
    list_maximal,
    maximal_prod,
    maximal_to_partition,
    partition_to_maximal,
)
from .models import BinaryPartition
from .storage import load, scan_to_file
from .store import ThresholdStore
from .term import eval_term, parse
from .verify import SUITES, results_to_json, run_all

_LOGGER = logging.getLogger(__name__)

PACKAGE_LOGGER = "laver_tables"
LOG_FORMAT = "%(log_color)s%(levelname)-8s%(reset)s %(name)s: %(message)s"

CONF_STORE_PATH = "store_path"
CONF_CACHE_BYTES = "cache_bytes"
CONF_OUTPUT_FORMAT = "output_format"
CONF_SEED = "seed"
CONF_VERBOSITY = "verbosity"

ENV_OVERRIDES = (
    (CONF_STORE_PATH, ENV_STORE),
    (CONF_CACHE_BYTES, ENV_CACHE_BYTES),
    (CONF_SEED, ENV_SEED),
)

CONFIG_SCHEMA = vol.Schema(
    {
        vol.Optional(CONF_STORE_PATH, default=None): vol.Any(None, vol.Coerce(Path)),
        vol.Optional(CONF_CACHE_BYTES, default=DEFAULT_CACHE_BYTES): vol.All(
            vol.Coerce(int), vol.Range(min=MIN_CACHE_BYTES)
        ),
        vol.Optional(CONF_OUTPUT_FORMAT, default=OutputFormat.PLAIN): vol.Coerce(
            OutputFormat
        ),
        vol.Optional(CONF_SEED, default=DEFAULT_SEED): vol.All(
            vol.Coerce(int), vol.Range(min=0)
        ),
        vol.Optional(CONF_VERBOSITY, default=0): vol.In((-1, 0, 1)),
    }
)


@dataclass(frozen=True)
class CliConfig:
    """Validated settings shared by every subcommand."""

    store_path: Path | None
    cache_bytes: int
    output_format: OutputFormat
    seed: int
    verbosity: int


def build_config(
    overrides: Mapping[str, Any], environ: Mapping[str, str] | None = None
) -> CliConfig:
    """
    Merge defaults, environment variables and flags into a CliConfig.

    Flags win over the environment. None values in overrides are ignored.

    Raises:
        ConfigError: If a value fails validation.

    """
    environ = os.environ if environ is None else environ
    data: dict[str, Any] = {
        key: environ[env] for key, env in ENV_OVERRIDES if environ.get(env)
    }
    data.update({key: value for key, value in overrides.items() if value is not None})
    try:
        validated = CONFIG_SCHEMA(data)
    except vol.Invalid as err:
        raise ConfigError(f"Invalid configuration: {err}") from err
    return CliConfig(**validated)


def setup_logging(verbosity: int, stream: IO[str] | None = None) -> None:
    """Send package logs to stderr through a colored handler."""
    stream = stream or sys.stderr
    handler = colorlog.StreamHandler(stream)
    handler.setFormatter(colorlog.ColoredFormatter(LOG_FORMAT, stream=stream))
    logger = logging.getLogger(PACKAGE_LOGGER)
    logger.handlers[:] = [handler]
    logger.setLevel({-1: logging.WARNING, 0: logging.INFO, 1: logging.DEBUG}[verbosity])


class _ArgumentParser(argparse.ArgumentParser):
    """Parser whose usage errors exit with the invalid-input code."""

    def error(self, message: str) -> NoReturn:
        """Print usage and exit with ExitCode.INVALID."""
        self.print_usage(sys.stderr)
        self.exit(ExitCode.INVALID, f"{self.prog}: error: {message}\n")


class _Session:
    """Configuration plus the lazily opened store and engine of one run."""

    def __init__(self, config: CliConfig, out: IO[str]) -> None:
        self.config = config
        self.out = out
        self._store: ThresholdStore | None = None
        self._engine: LaverEngine | None = None

    @property
    def store(self) -> ThresholdStore:
        """Return the configured store, loading it on first use."""
        if self._store is None:
            if self.config.store_path is None:
                raise ConfigError(f"This command needs --store or {ENV_STORE}")
            self._store = load(self.config.store_path)
        return self._store

    @property
    def engine(self) -> LaverEngine:
        """Return an engine using the configured store when there is one."""
        if self._engine is None:
            store = self.store if self.config.store_path is not None else None
            self._engine = LaverEngine(RowCache(self.config.cache_bytes), store)
        return self._engine

    @property
    def fmt(self) -> OutputFormat:
        return self.config.output_format

    def write(self, text: str) -> None:
        self.out.write(text if text.endswith("\n") else text + "\n")

    def value(self, value: Any) -> None:
        """Print a single value."""
        if self.fmt is OutputFormat.JSON:
            self.write(json.dumps(value))
        elif isinstance(value, bool):
            self.write("true" if value else "false")
        else:
            self.write(str(value))

    def values(self, name: str, values: Iterable[int]) -> None:
        """Print a flat list: one line in plain, one column in CSV."""
        values = list(values)
        if self.fmt is OutputFormat.JSON:
            self.write(json.dumps(values))
        elif self.fmt is OutputFormat.CSV:
            self.rows([name], [[value] for value in values])
        else:
            self.write(" ".join(map(str, values)))

    def rows(self, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
        """Print records: CSV with a header, JSON objects, or bare plain lines."""
        if self.fmt is OutputFormat.JSON:
            records = [dict(zip(header, row, strict=True)) for row in rows]
            self.write(json.dumps(records))
            return
        if self.fmt is OutputFormat.CSV:
            buffer = io.StringIO()
            writer = csv.writer(buffer, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
            self.out.write(buffer.getvalue())
            return
        for row in rows:
            self.write(" ".join(map(str, row)))

    def matrix(self, matrix: list[list[int]]) -> None:
        """Print a table without headers."""
        if self.fmt is OutputFormat.JSON:
            self.write(json.dumps(matrix))
            return
        separator = "," if self.fmt is OutputFormat.CSV else " "
        for row in matrix:
            self.write(separator.join(map(str, row)))

    def report(self, report: stats.Report) -> None:
        """Print a statistics report."""
        if self.fmt is OutputFormat.PLAIN:
            _, rows = stats.report_rows(report)
            self.rows((), rows)
        else:
            self.out.write(stats.export(report, ExportFormat(self.fmt.value)))


def _cmd_scan(args: argparse.Namespace, session: _Session) -> ExitCode:
    path = args.out or session.config.store_path
    if path is None:
        raise ConfigError(f"scan needs --out, --store or {ENV_STORE}")
    store = scan_to_file(Path(path), args.max, resume=args.resume)
    session.value(store.max_p)
    return ExitCode.OK


def _cmd_prod(args: argparse.Namespace, session: _Session) -> ExitCode:
    if ConventionKind(args.conv) is ConventionKind.STAR:
        if args.order is None:
            raise DomainError("--conv star needs --order")
        session.value(session.engine.star_prod(args.order, args.p, args.q))
    else:
        if args.order is not None:
            raise DomainError("--order only applies to --conv star")
        session.value(session.engine.back_prod(args.p, args.q))
    return ExitCode.OK


def _cmd_row(args: argparse.Namespace, session: _Session) -> ExitCode:
    row = session.engine.row(args.p)
    if session.fmt is OutputFormat.CSV:
        session.rows(["q", "value"], enumerate(row))
    else:
        session.values("value", row)
    return ExitCode.OK


def _cmd_period(args: argparse.Namespace, session: _Session) -> ExitCode:
    session.value(session.engine.period(args.p))
    return ExitCode.OK


def _cmd_threshold(args: argparse.Namespace, session: _Session) -> ExitCode:
    session.value(session.engine.threshold(args.p))
    return ExitCode.OK


def _cmd_info(args: argparse.Namespace, session: _Session) -> ExitCode:
    info = asdict(session.engine.period_info(args.p))
    if session.fmt is OutputFormat.PLAIN:
        session.write(
            " ".join(
                f"{key}={'-' if value is None else value}"
                for key, value in info.items()
            )
        )
    else:
        session.rows(list(info), [list(info.values())])
    return ExitCode.OK


def _cmd_table(args: argparse.Namespace, session: _Session) -> ExitCode:
    if ConventionKind(args.conv) is ConventionKind.BACK:
        size = 1 << args.order
        session.matrix(session.engine.back_table(size, size + 1))
    else:
        session.matrix(session.engine.star_table(args.order))
    return ExitCode.OK


def _cmd_freq(args: argparse.Namespace, session: _Session) -> ExitCode:
    session.report(stats.frequency_table(session.store, args.n))
    return ExitCode.OK


def _cmd_doubling(args: argparse.Namespace, session: _Session) -> ExitCode:
    session.report(stats.doubling_counts(session.store, args.n))
    return ExitCode.OK


def _cmd_joint(args: argparse.Namespace, session: _Session) -> ExitCode:
    session.report(stats.joint_table(session.store, args.max))
    return ExitCode.OK


def _cmd_growth(args: argparse.Namespace, session: _Session) -> ExitCode:
    store = session.store if session.config.store_path is not None else None
    session.report(stats.pi_of_one_growth(args.max_n, store, session.engine))
    return ExitCode.OK


def _cmd_partial_rows(args: argparse.Namespace, session: _Session) -> ExitCode:
    chain = session.store.partial_rows(args.p)
    session.rows(
        ["element", "threshold", "row"],
        [
            [
                line.element,
                "-" if line.threshold is None else line.threshold,
                " ".join(map(str, line.row)),
            ]
            for line in chain
        ],
    )
    return ExitCode.OK


def _cmd_maximal(args: argparse.Namespace, session: _Session) -> ExitCode:
    if args.action == "check":
        session.value(is_maximal(args.p))
    elif args.action == "list":
        session.values("p", list_maximal(args.lo, args.hi))
    elif args.action == "prod":
        session.value(maximal_prod(args.p, args.q))
    elif args.action == "partition":
        session.value(str(maximal_to_partition(args.p)))
    else:
        partition = BinaryPartition.from_sizes(args.sizes)
        session.value(partition_to_maximal(partition, args.b0))
    return ExitCode.OK


def _cmd_eval(args: argparse.Namespace, session: _Session) -> ExitCode:
    session.value(eval_term(parse(args.expr), args.order, session.engine))
    return ExitCode.OK


def _cmd_verify(args: argparse.Namespace, session: _Session) -> ExitCode:
    if args.list:
        session.rows(
            ["suite", "default_bound", "description"],
            [
                [spec.name, spec.default_bound, spec.description]
                for spec in SUITES.values()
            ],
        )
        return ExitCode.OK
    names = None if not args.suites or "all" in args.suites else args.suites
    store_path = session.config.store_path
    results = run_all(
        names,
        args.max,
        session.config.seed,
        workers=args.workers,
        store_path=store_path if store_path and store_path.exists() else None,
    )
    if session.fmt is OutputFormat.JSON:
        session.out.write(results_to_json(results))
    else:
        session.rows(
            ["suite", "bound", "seed", "count", "counterexamples", "millis", "passed"],
            [
                [
                    result.name,
                    result.bound,
                    result.seed,
                    result.instances,
                    len(result.counterexamples),
                    result.elapsed_ms,
                    "PASS" if result.passed else "FAIL",
                ]
                for result in results
            ],
        )
    failed = False
    for result in results:
        if result.advisory:
            if result.findings:
                _LOGGER.warning(
                    "Advisory suite %s reported %d findings",
                    result.name,
                    len(result.findings),
                )
            continue
        for case in result.counterexamples:
            _LOGGER.error("Counterexample in %s: %s", result.name, case)
        failed = failed or not result.passed
    return ExitCode.COUNTEREXAMPLE if failed else ExitCode.OK


def _cmd_plot(args: argparse.Namespace, session: _Session) -> ExitCode:
    points = session.engine.plot_points(PlotKind(args.kind), args.max)
    if session.fmt is OutputFormat.JSON:
        session.matrix([list(point) for point in points])
    else:
        for x, y in points:
            session.write(f"{x},{y}")
    return ExitCode.OK


def _common_options() -> argparse.ArgumentParser:
    """Return the flags accepted before and after the subcommand."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        dest=CONF_OUTPUT_FORMAT,
        choices=[fmt.value for fmt in OutputFormat],
        default=argparse.SUPPRESS,
    )
    common.add_argument("--store", dest=CONF_STORE_PATH, default=argparse.SUPPRESS)
    common.add_argument(
        "--cache-bytes", dest=CONF_CACHE_BYTES, type=int, default=argparse.SUPPRESS
    )
    common.add_argument("--seed", dest=CONF_SEED, type=int, default=argparse.SUPPRESS)
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument(
        "-v",
        "--verbose",
        dest=CONF_VERBOSITY,
        action="store_const",
        const=1,
        default=argparse.SUPPRESS,
    )
    verbosity.add_argument(
        "-q",
        "--quiet",
        dest=CONF_VERBOSITY,
        action="store_const",
        const=-1,
        default=argparse.SUPPRESS,
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    """Return the argument parser of the laver command."""
    common = _common_options()
    parser = _ArgumentParser(
        prog="laver", description="Laver tables.", parents=[common]
    )
    commands = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Any, help_text: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, parents=[common], help=help_text)
        sub.set_defaults(handler=handler)
        return sub

    conventions = [kind.value for kind in ConventionKind]

    sub = add("scan", _cmd_scan, "scan thresholds into a store file")
    sub.add_argument("--max", type=int, required=True)
    sub.add_argument("--out")
    sub.add_argument("--resume", action="store_true")

    sub = add("prod", _cmd_prod, "product of two elements")
    sub.add_argument("p", type=int)
    sub.add_argument("q", type=int)
    sub.add_argument("--conv", choices=conventions, default=ConventionKind.BACK)
    sub.add_argument("--order", type=int)

    for name, handler, help_text in (
        ("row", _cmd_row, "row of p"),
        ("period", _cmd_period, "period of p"),
        ("threshold", _cmd_threshold, "threshold of p"),
        ("info", _cmd_info, "period, threshold, coperiod and cothreshold of p"),
        ("partial-rows", _cmd_partial_rows, "rows of the partial bit sums of p"),
    ):
        add(name, handler, help_text).add_argument("p", type=int)

    sub = add("table", _cmd_table, "table of order 2^n")
    sub.add_argument("--order", type=int, required=True)
    sub.add_argument("--conv", choices=conventions, default=ConventionKind.STAR)

    add("freq", _cmd_freq, "period frequencies").add_argument(
        "--n", type=int, required=True
    )
    add("doubling", _cmd_doubling, "period doubling counts").add_argument(
        "--n", type=int, required=True
    )
    add("joint", _cmd_joint, "threshold by period histogram").add_argument(
        "--max", type=int, required=True
    )
    add("growth", _cmd_growth, "period of 1 by order").add_argument(
        "--max-n", type=int, required=True
    )

    sub = add("maximal", _cmd_maximal, "maximal elements")
    actions = sub.add_subparsers(dest="action", required=True)
    action = actions.add_parser("check", parents=[common])
    action.add_argument("p", type=int)
    action = actions.add_parser("list", parents=[common])
    action.add_argument("lo", type=int)
    action.add_argument("hi", type=int)
    action = actions.add_parser("prod", parents=[common])
    action.add_argument("p", type=int)
    action.add_argument("q", type=int)
    action = actions.add_parser("partition", parents=[common])
    action.add_argument("p", type=int)
    action = actions.add_parser("from-partition", parents=[common])
    action.add_argument("sizes", type=int, nargs="+")
    action.add_argument("--b0", type=int, default=0)

    sub = add("eval", _cmd_eval, "evaluate a term")
    sub.add_argument("expr")
    sub.add_argument("--order", type=int, required=True)

    sub = add("verify", _cmd_verify, "run property suites")
    sub.add_argument("suites", nargs="*", metavar="SUITE")
    sub.add_argument("--max", type=int)
    sub.add_argument("--list", action="store_true")
    sub.add_argument("--workers", type=int, default=1)

    sub = add("plot", _cmd_plot, "coordinate pairs for plotting")
    sub.add_argument("kind", choices=[kind.value for kind in PlotKind])
    sub.add_argument("--max", type=int, required=True)

    return parser


def main(argv: Sequence[str] | None = None, out: IO[str] | None = None) -> int:
    """Run the laver command and return its exit code."""
    args = build_parser().parse_args(argv)
    overrides = {
        key: getattr(args, key, None)
        for key in (
            CONF_STORE_PATH,
            CONF_CACHE_BYTES,
            CONF_OUTPUT_FORMAT,
            CONF_SEED,
            CONF_VERBOSITY,
        )
    }
    setup_logging(overrides[CONF_VERBOSITY] or 0)
    try:
        config = build_config(overrides)
        return args.handler(args, _Session(config, out or sys.stdout))
    except (
        StoreFormatError,
        StoreLockedError,
        InsufficientStoreError,
        OSError,
    ) as err:
        _LOGGER.error("%s", err)
        return ExitCode.IO_ERROR
    except LaverError as err:
        _LOGGER.error("%s", err)
        return ExitCode.INVALID
