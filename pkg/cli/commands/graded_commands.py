import click

from cli.commands.common import Workbench, workbench_command


@workbench_command("phi")
@click.argument("amodule")
def phi(bench: Workbench, amodule: str):
    """The complex Φ(M) of a graded R[x]/(x²)-module: pieces with x as boundary."""
    return bench.service.phi(bench.amodule(amodule))


@workbench_command("psi")
@click.argument("x")
def psi(bench: Workbench, x: str):
    """The graded R[x]/(x²)-module Ψ(X) of a complex."""
    return bench.service.psi(bench.obj(x))


@workbench_command("exta")
@click.argument("i", type=click.IntRange(min=0))
@click.argument("m")
@click.argument("n")
def exta(bench: Workbench, i: int, m: str, n: str):
    """Graded Ext^i over R[x]/(x²)."""
    return bench.service.exta(i, bench.amodule(m), bench.amodule(n))


@workbench_command("tora")
@click.argument("i", type=click.IntRange(min=0))
@click.argument("m")
@click.argument("n")
def tora(bench: Workbench, i: int, m: str, n: str):
    """Graded Tor_i over R[x]/(x²), one module per degree."""
    return bench.service.tora(i, bench.amodule(m), bench.amodule(n))


commands = [phi, psi, exta, tora]
