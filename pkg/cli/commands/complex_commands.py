import click

from cli.commands.common import Workbench, workbench_command


def _derived_command(command: str, help_text: str):
    @workbench_command(command, help=help_text)
    @click.argument("i", type=click.IntRange(min=0))
    @click.argument("x")
    @click.argument("y")
    def derived(bench: Workbench, i: int, x: str, y: str):
        return getattr(bench.service, command)(i, bench.obj(x), bench.obj(y))

    return derived


extch = _derived_command("extch", "Ext^i(X, Y) in the category of complexes, via a disk resolution of X.")
barext = _derived_command("barext", "bar-Ext^i(X, Y): degree n is Ext^i(X, Σ^{-n} Y).")
bartor = _derived_command("bartor", "bar-Tor_i(X, Y) through Pontryagin duality.")


def _bifunctor_command(command: str, help_text: str):
    @workbench_command(command, help=help_text)
    @click.argument("x")
    @click.argument("y")
    def bifunctor(bench: Workbench, x: str, y: str):
        return getattr(bench.service, command)(bench.obj(x), bench.obj(y))

    return bifunctor


bartensor = _bifunctor_command("bartensor", "The modified tensor complex X ⊗̄ Y.")
homprime = _bifunctor_command("homprime", "The total Hom complex Hom′(X, Y).")
barhom = _bifunctor_command("barhom", "bar-Hom(X, Y); degree 0 is the module of chain maps.")


@workbench_command("susp")
@click.argument("x")
@click.option("--k", "k", type=int, default=1, help="Shift amount; negative values shift down.")
def susp(bench: Workbench, x: str, k: int):
    """Suspension Σ^k X, with boundaries twisted by (-1)^k."""
    return bench.service.susp(k, bench.obj(x))


commands = [extch, barext, bartor, bartensor, homprime, barhom, susp]
