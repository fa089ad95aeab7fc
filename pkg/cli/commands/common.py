import functools
import logging
from typing import Callable, Optional, Union

import click

from cli.models.report_models import CommandReport, SuiteReport
from cli.parser.literal_parser import LiteralParser
from cli.services.verify_service import render_suite
from cli.services.workbench_service import (
    EXIT_CHECK_FAILED,
    EXIT_OK,
    WorkbenchService,
    exit_code_for,
    render_text,
)
from core.complexes.chain_complex import ChainComplex
from core.graded.graded_bridge import GradedAModule
from core.linear.exact_linear import ExactMatrix, RingDesc
from core.modules.fp_module import FPModule
from resources.config import get_settings
from shared.errors import GorhomError

logger = logging.getLogger(__name__)


def _parse_ring(ctx, param, value: str) -> RingDesc:
    try:
        return RingDesc.parse(value)
    except ValueError as e:
        raise click.BadParameter(str(e))


def workbench_options(command: Callable) -> Callable:
    """--ring, --format, --oracle and --bound, shared by every computing command."""
    options = [
        click.option("--ring", default="Z", callback=_parse_ring, help="Base ring: Z or Z/m."),
        click.option(
            "--format",
            "fmt",
            type=click.Choice(["text", "tree"]),
            default=None,
            help="text (default) or tree (JSON report).",
        ),
        click.option("--oracle", is_flag=True, help="Cross-check against brute-force enumeration."),
        click.option("--bound", type=int, default=None, help="Override the enumeration bound."),
    ]
    for option in reversed(options):
        command = option(command)
    return command


class Workbench:
    """Per-invocation state: the parsed options, a literal parser and the service."""

    def __init__(self, ring: RingDesc, fmt: Optional[str], oracle: bool, bound: Optional[int]):
        self.ring = ring
        self.fmt = fmt or get_settings().default_format
        self.parser = LiteralParser(ring)
        self.service = WorkbenchService(ring, oracle, bound)

    def obj(self, text: str) -> Union[FPModule, ChainComplex]:
        return self.parser.parse_object(text)

    def amodule(self, text: str) -> GradedAModule:
        return self.parser.parse_amodule(text)

    def matrix(self, text: str) -> ExactMatrix:
        return self.parser.parse_matrix(text)


def emit(report: Union[CommandReport, SuiteReport], fmt: str) -> None:
    if fmt == "tree":
        click.echo(report.model_dump_json(indent=2))
    elif isinstance(report, SuiteReport):
        click.echo(render_suite(report))
    else:
        click.echo(render_text(report))


def run_report(fmt: str, action: Callable[[], Union[CommandReport, SuiteReport]]) -> None:
    """Runs one command, prints its report and exits with 0, 1 or 2."""
    try:
        report = action()
    except GorhomError as e:
        logger.info("Command failed with %s", type(e).__name__)
        click.echo(f"error: {e}", err=True)
        raise SystemExit(exit_code_for(e))
    emit(report, fmt)
    failed = report.failed if isinstance(report, CommandReport) else not report.passed
    raise SystemExit(EXIT_CHECK_FAILED if failed else EXIT_OK)


def workbench_command(name: str, **kwargs):
    """A click command with the shared options; the body receives a Workbench first."""

    def decorate(body: Callable[..., CommandReport]):
        @click.command(name, **kwargs)
        @workbench_options
        @functools.wraps(body)
        def command(ring, fmt, oracle, bound, **params):
            bench = Workbench(ring, fmt, oracle, bound)
            run_report(bench.fmt, lambda: body(bench, **params))

        return command

    return decorate
