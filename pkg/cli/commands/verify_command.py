import click

from cli.commands.common import run_report
from cli.services.verify_service import VerifyService
from resources.config import get_settings


@click.command("verify")
@click.argument("suite")
@click.option("--seed", type=int, default=None, help="Seed for randomized checks.")
@click.option("--oracle", is_flag=True, help="Add oracle cross-checks where sizes permit.")
@click.option("--bound", type=int, default=None, help="Override the enumeration bound.")
@click.option(
    "--format", "fmt", type=click.Choice(["text", "tree"]), default=None, help="text or tree."
)
@click.option("--progress/--no-progress", default=True, help="Show a progress bar on stderr.")
def verify(suite: str, seed, oracle: bool, bound, fmt, progress: bool):
    """Runs 'paper-suite' or a suite file of literals and expect lines."""
    settings = get_settings()
    service = VerifyService(
        seed if seed is not None else settings.seed, oracle=oracle, bound=bound, progress=progress
    )
    run_report(fmt or settings.default_format, lambda: service.run(suite))


commands = [verify]
