import click

from cli.commands import complex_commands, graded_commands, module_commands, verify_command
from shared.logging_mixin import setup_logging


@click.group(name="gorhom")
@click.option("--log-level", default=None, help="Overrides GORHOM_LOG_LEVEL.")
def gorhom(log_level):
    """Exact homological algebra over Z and Z/m."""
    setup_logging(log_level)


for commands_module in (module_commands, complex_commands, graded_commands, verify_command):
    for command in commands_module.commands:
        gorhom.add_command(command)
