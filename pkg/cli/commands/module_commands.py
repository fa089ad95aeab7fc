import click

from cli.commands.common import Workbench, workbench_command


@workbench_command("canon")
@click.argument("literal")
def canon(bench: Workbench, literal: str):
    """Canonical invariant-factor form of a module (or degreewise, of a complex)."""
    return bench.service.canon(bench.obj(literal))


@workbench_command("ext")
@click.argument("i", type=click.IntRange(min=0))
@click.argument("m")
@click.argument("n")
def ext(bench: Workbench, i: int, m: str, n: str):
    """Ext^i(M, N) from a free resolution of M."""
    return bench.service.ext(i, bench.obj(m), bench.obj(n))


@workbench_command("tor")
@click.argument("i", type=click.IntRange(min=0))
@click.argument("m")
@click.argument("n")
def tor(bench: Workbench, i: int, m: str, n: str):
    """Tor_i(M, N) from a free resolution of M."""
    return bench.service.tor(i, bench.obj(m), bench.obj(n))


def _dimension_command(command: str, name: str, help_text: str):
    @workbench_command(command, help=help_text)
    @click.argument("literal")
    def dimension(bench: Workbench, literal: str):
        return bench.service.dimension(name, bench.obj(literal))

    return dimension


pd = _dimension_command("pd", "pd", "Projective dimension of a module or complex.")
gpd = _dimension_command("gpd", "Gpd", "Gorenstein projective dimension, with its justification.")
gid = _dimension_command("gid", "Gid", "Gorenstein injective dimension, with its justification.")
gfd = _dimension_command("gfd", "Gfd", "Gorenstein flat dimension, with its justification.")


@workbench_command("dual")
@click.argument("literal")
@click.option("--n", "n", type=click.IntRange(min=2), default=None, help="Use Z/n instead of the exponent.")
def dual(bench: Workbench, literal: str, n):
    """Character dual Hom(M, Z/n) of a module, or the Pontryagin dual of a complex."""
    return bench.service.dual(bench.obj(literal), n)


@workbench_command("tensor")
@click.argument("a")
@click.argument("b")
def tensor(bench: Workbench, a: str, b: str):
    """M ⊗ N for modules, or the total tensor complex X ⊗ Y."""
    return bench.service.tensor(bench.obj(a), bench.obj(b))


@workbench_command("wpure")
@click.argument("ambient")
@click.argument("generators")
def wpure(bench: Workbench, ambient: str, generators: str):
    """Decides whether the submodule spanned by the generator columns is W-pure."""
    return bench.service.wpure(bench.obj(ambient), bench.matrix(generators))


@workbench_command("filtration")
@click.argument("literal")
def filtration(bench: Workbench, literal: str):
    """Builds and re-verifies a filtration of a finite module by cyclic quotients."""
    return bench.service.filtration(bench.obj(literal))


@workbench_command("witness")
@click.argument("pair")
@click.argument("literal")
@click.option("--r", "r", type=click.IntRange(min=0), default=0, help="Dimension index r.")
def witness(bench: Workbench, pair: str, literal: str, r: int):
    """Approximation sequence for PAIR (GP_W, W_GI, Pr_perp, GFr_perp), re-verified."""
    return bench.service.witness(pair, bench.obj(literal), r)


@workbench_command("cogen")
@click.argument("kind")
@click.option("--r", "r", type=click.IntRange(min=0), default=0, help="Dimension index r.")
def cogen(bench: Workbench, kind: str, r: int):
    """Lists the cogenerating set T, S or X over --ring."""
    return bench.service.cogen(kind, r)


commands = [canon, ext, tor, pd, gpd, gid, gfd, dual, tensor, wpure, filtration, witness, cogen]
