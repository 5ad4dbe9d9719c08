"""The `kdirac` command line.

Every command writes one report to stdout.  The exit status is 0 when all
checks pass, 1 when one fails and 2 when the run could not be carried out.
"""

from __future__ import annotations

import functools
import json
import logging
import os
import sys

import click

from kdirac import checks, partitions, syzygy
from kdirac.cache import MatrixCache
from kdirac.config import RunConfig, environment_overrides, load_config_file
from kdirac.consts import Command, OutputFormat
from kdirac.dirac import build_D0_flat
from kdirac.exceptions import CommandErrorUnknownCommand, CommandErrorUsage, KDiracError
from kdirac.polydiff import bracket_normalization
from kdirac.report import Report

__all__ = ["main"]

logger = logging.getLogger(__name__)

SENTRY_DSN_ENV = "KDIRAC_SENTRY_DSN"


def _setup_logging(level):
    logging.basicConfig(
        level=getattr(logging, level),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


def _setup_sentry():
    dsn = os.environ.get(SENTRY_DSN_ENV)
    if not dsn:
        return
    import sentry_sdk

    sentry_sdk.init(dsn=dsn)
    logger.debug("crash reporting enabled")


def run_options(func):
    """The options shared by every command."""
    options = [
        click.option("--k", "k", type=int, help="Number of matrix columns."),
        click.option("--n", "n", type=int, help="Half the number of matrix rows."),
        click.option("--degree", type=int, help="A single degree to check."),
        click.option("--max-degree", type=int, help="Check degrees 0..MAX_DEGREE."),
        click.option(
            "--format",
            "output_format",
            type=click.Choice([f.value for f in OutputFormat]),
            help="Report format.",
        ),
        click.option(
            "--cache",
            "cache_dir",
            type=click.Path(file_okay=False),
            help="Matrix cache directory (default from KDIRAC_CACHE_DIR).",
        ),
        click.option(
            "--allow-unstable-range",
            "allow_unstable_range",
            is_flag=True,
            default=None,
            help="Permit n < k or k < 2; predictions are then omitted.",
        ),
        click.option(
            "--config",
            "config_file",
            type=click.Path(dir_okay=False),
            help="YAML file with run settings.",
        ),
        click.option("--log-level", help="DEBUG, INFO, WARNING or ERROR."),
        click.option("--jobs", type=int, help="Worker processes for independent blocks."),
        click.option("--window", type=int, help="Extra orders searched during discovery."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def command(name):
    """Registers a command that turns a RunConfig into a Report."""

    def decorator(func):
        @cli.command(name)
        @run_options
        @functools.wraps(func)
        def wrapper(config_file=None, **flags):
            file_values = load_config_file(config_file) if config_file else {}
            config = RunConfig.build(
                Command(name), file_values, environment_overrides(), flags
            )
            _setup_logging(config.log_level)
            cache = MatrixCache(config.cache_dir) if config.cache_dir else None
            report = Report(
                command=name,
                k=config.k,
                n=config.n,
                normalization=_normalization(config),
            )
            func(config, report, cache)
            if cache is not None:
                report.cache_events = list(cache.events)
            click.echo(report.render(config.output_format), nl=False)
            return 0 if report.passed else 1

        return wrapper

    return decorator


def _normalization(config):
    try:
        return bracket_normalization(config.k, config.n).to_text()
    except KDiracError:
        logger.warning("no bracket normalization for k=%d n=%d", config.k, config.n)
        return None


@click.group(name="kdirac")
def cli():
    """Exact-arithmetic checks for the k-Dirac complex."""


@command(Command.SK_TABLE.value)
def sk_table(config, report, cache):
    table = partitions.enumerate_Sk(config.k, config.n)
    for j in sorted(table.levels):
        for a in table.level(j):
            s = partitions.stats(a)
            report.rows.append(
                {"j": j, "partition": list(a.parts), "q": s.q, "d": s.d, "r": s.r}
            )
    pairs = partitions.cover_pairs(config.k, config.n, config.allow_unstable_range)
    report.extra["cover_pairs"] = [
        {"source": list(p.source.parts), "target": list(p.target.parts), "order": p.order}
        for p in pairs
    ]
    if config.n == config.k <= 4:
        orders = sorted({p.order for p in pairs})
        report.add_checks(
            [
                checks.Check(
                    "sk-table",
                    "cover orders in {1, 2}",
                    set(orders) <= {1, 2},
                    {"orders": orders},
                )
            ]
        )


@command(Command.DIMS.value)
def dims(config, report, cache):
    report.add_rows(
        partitions.dims_table(
            config.k, config.n, config.max_degree, config.allow_unstable_range
        )
    )
    report.add_checks(checks.slice_suite(config.k, config.n, config.max_degree))


@command(Command.VERIFY_LIEALG.value)
def verify_liealg(config, report, cache):
    report.add_checks(checks.liealg_suite(config.k, config.n))


@command(Command.VERIFY_FIELDS.value)
def verify_fields(config, report, cache):
    report.add_checks(checks.fields_suite(config.k, config.n))


@command(Command.VERIFY_DESCEND.value)
def verify_descend(config, report, cache):
    report.add_checks(
        checks.descend_suite(config.k, config.n, config.max_degree, cache=cache)
    )


@command(Command.DUALITY.value)
def duality(config, report, cache):
    report.add_checks(checks.duality_suite(config.k, config.n, config.max_degree))


@command(Command.SOLUTION_DIMS.value)
def solution_dims(config, report, cache):
    report.add_rows(
        syzygy.solution_dims(
            build_D0_flat(config.k, config.n),
            config.degrees,
            jobs=config.jobs,
            allow_unstable=config.allow_unstable_range,
        )
    )


def _operators(stack):
    return [
        {"name": op.name, "rows": op.target_dim, "cols": op.source_dim, "order": op.order}
        for op in stack.ops
    ]


@command(Command.DISCOVER.value)
def discover(config, report, cache):
    if config.degree is not None:
        stack = syzygy.OperatorStack.start(
            config.k, config.n, config.allow_unstable_range, config.jobs
        )
        rows, _ = syzygy.discovery_rows(stack, [config.degree])
        report.add_rows(rows)
        return
    result = syzygy.discover_complex(
        config.k,
        config.n,
        window=config.window,
        jobs=config.jobs,
        allow_unstable=config.allow_unstable_range,
    )
    report.add_rows(result.rows)
    report.add_checks(
        checks.Check("discover", "g0 closure", c.invariant, c.to_dict())
        for c in result.closures
    )
    report.add_checks(result.composites)
    report.extra["operators"] = _operators(result.stack)
    report.extra["window"] = config.window


@command(Command.VERIFY_COMPLEX.value)
def verify_complex(config, report, cache):
    result = syzygy.discover_complex(
        config.k,
        config.n,
        window=config.window,
        jobs=config.jobs,
        allow_unstable=config.allow_unstable_range,
    )
    stack = result.stack
    report.add_checks(result.composites)
    for spot in range(1, stack.length + 1):
        if config.degree is not None:
            degrees = [config.degree]
        else:
            degrees = range(config.max_degree + 2 - spot)
        report.add_rows(syzygy.verify_exactness(stack, spot, degrees))
    report.extra["operators"] = _operators(stack)


def _error_exit(error):
    click.echo(json.dumps(error.to_report(), sort_keys=True), err=True)
    return 2


def main(argv=None):
    _setup_sentry()
    try:
        status = cli.main(args=argv, prog_name="kdirac", standalone_mode=False)
    except KDiracError as e:
        logger.debug("run failed", exc_info=True)
        sys.exit(_error_exit(e))
    except click.UsageError as e:
        if e.message.startswith("No such command"):
            error = CommandErrorUnknownCommand(e.message)
        else:
            error = CommandErrorUsage(e.message)
        sys.exit(_error_exit(error))
    except click.Abort:
        sys.exit(1)
    sys.exit(status or 0)
