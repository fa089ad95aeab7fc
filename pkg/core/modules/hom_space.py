"""
Hom_R(M, N) for finitely presented M, N.

Both modules are brought to diagonal form first; between cyclic modules the hom
group is closed form: Hom(R/(a), R/(b)) is cyclic of order gcd(a, b), generated by
1 ↦ b / gcd(a, b).
"""

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import List, Sequence, Tuple

from core.linear.exact_linear import ExactMatrix
from core.modules.fp_module import FPModule, ModuleHom
from shared.errors import InvariantViolationError, RingMismatchError


@dataclass(frozen=True)
class _HomCell:
    row: int  # index into the target's diagonal generators
    col: int  # index into the source's diagonal generators
    order: int  # 0 means infinite cyclic
    step: int  # the generator sends e_col to step · f_row


@dataclass(frozen=True)
class HomSpace:
    """
    Hom(src, dst) as a module, with a basis of homs and a coordinate map.

    basis[k] corresponds to generator k of `module`.
    """

    src: FPModule
    dst: FPModule
    module: FPModule
    basis: Tuple[ModuleHom, ...]
    cells: Tuple[_HomCell, ...]

    def coordinates(self, f: ModuleHom) -> Tuple[int, ...]:
        if f.src != self.src or f.dst != self.dst:
            raise InvariantViolationError("Hom does not belong to this hom space")
        src_simp = self.src.simplification
        dst_simp = self.dst.simplification
        diagonal = dst_simp.to_target.lift() @ f.mat.lift() @ src_simp.from_target.lift()
        coords = []
        for cell in self.cells:
            b = dst_simp.factors[cell.row]
            value = diagonal[cell.row, cell.col]
            if b:
                value %= b
            if value % cell.step:
                raise InvariantViolationError(
                    "Hom coordinates are not a multiple of the cell generator"
                )
            coords.append(self.module.ring.reduce(value // cell.step))
        return tuple(coords)

    def hom(self, coordinates: Sequence[int]) -> ModuleHom:
        mat = ExactMatrix.zeros(self.src.ring, self.dst.gens, self.src.gens)
        for c, basis_hom in zip(coordinates, self.basis):
            if c:
                mat = mat + basis_hom.mat.scale(c)
        return ModuleHom(self.src, self.dst, mat)


def _cell_order(a: int, b: int) -> Tuple[int, int]:
    """(order, step) of Hom(Z/a, Z/b) over Z, with 0 standing for Z."""
    if b == 0:
        return (0, 1) if a == 0 else (1, 1)
    if a == 0:
        return b, 1
    g = gcd(a, b)
    return g, b // g


@lru_cache(maxsize=4096)
def hom_module(src: FPModule, dst: FPModule) -> HomSpace:
    if src.ring != dst.ring:
        raise RingMismatchError("Hom between modules over different rings")
    ring = src.ring
    src_simp = src.simplification
    dst_simp = dst.simplification
    cells: List[_HomCell] = []
    for row, b in enumerate(dst_simp.factors):
        for col, a in enumerate(src_simp.factors):
            order, step = _cell_order(a, b)
            if order != 1:
                cells.append(_HomCell(row, col, order, step))

    basis = []
    for cell in cells:
        diagonal = [[0] * len(src_simp.factors) for _ in dst_simp.factors]
        diagonal[cell.row][cell.col] = cell.step
        d = ExactMatrix.from_rows(ring, diagonal, len(src_simp.factors))
        basis.append(ModuleHom(src, dst, dst_simp.from_target @ d @ src_simp.to_target))

    factors = [cell.order for cell in cells]
    module = FPModule.from_factors(ring, factors)
    return HomSpace(src, dst, module, tuple(basis), tuple(cells))


def hom_between(src: FPModule, dst: FPModule) -> FPModule:
    return hom_module(src, dst).module


def post_compose(space_from: HomSpace, space_to: HomSpace, g: ModuleHom) -> ModuleHom:
    """g_* : Hom(M, N) → Hom(M, N') for g: N → N', as a hom of hom modules."""
    columns = [space_to.coordinates(g @ phi) for phi in space_from.basis]
    return ModuleHom(
        space_from.module,
        space_to.module,
        ExactMatrix.from_columns(g.src.ring, space_to.module.gens, columns),
    )


def pre_compose(space_from: HomSpace, space_to: HomSpace, f: ModuleHom) -> ModuleHom:
    """f^* : Hom(M', N) → Hom(M, N) for f: M → M', as a hom of hom modules."""
    columns = [space_to.coordinates(phi @ f) for phi in space_from.basis]
    return ModuleHom(
        space_from.module,
        space_to.module,
        ExactMatrix.from_columns(f.src.ring, space_to.module.gens, columns),
    )
