"""
Free resolutions, syzygies, projective covers, injective envelopes and cosyzygies.
"""

import logging
from dataclasses import dataclass
from typing import List, Tuple

from sympy import factorint

from core.linear.exact_linear import ExactMatrix, kernel_generators, span_basis
from core.modules.fp_module import (
    FPModule,
    ModuleHom,
    cokernel,
    is_exact_at,
    subquotient,
)
from shared.errors import InvariantViolationError, UnsupportedRingError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Resolution:
    """
    P_length → ... → P_0 → target → 0.

    maps[0] is the augmentation P_0 → target, maps[i] is P_i → P_{i-1}.
    `complete` is set when the last map is injective, so the resolution has ended.
    """

    target: FPModule
    terms: Tuple[FPModule, ...]
    maps: Tuple[ModuleHom, ...]
    complete: bool

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def verify(self) -> None:
        if not self.maps[0].is_surjective():
            raise InvariantViolationError("Augmentation is not surjective", degree=0)
        for i in range(1, len(self.maps)):
            if not is_exact_at(self.maps[i], self.maps[i - 1]):
                raise InvariantViolationError("Resolution is not exact", degree=i - 1)
        if self.complete and not self.maps[-1].is_injective():
            raise InvariantViolationError(
                "Last map of a finished resolution is not injective", degree=self.length
            )


def _kernel_basis(f: ModuleHom) -> ExactMatrix:
    """Generators of ker f for f out of a free module, reduced to a minimal spanning set."""
    ring = f.src.ring
    system = f.mat.lift().hstack(-f.dst.relations_z)
    solutions = kernel_generators(system)
    x_parts = solutions.submatrix(0, f.src.gens, 0, solutions.cols).over(ring)
    if x_parts.cols == 0:
        return x_parts
    return span_basis(x_parts)


def free_resolution(m: FPModule, length: int) -> Resolution:
    if length < 0:
        raise ValueError("Resolution length must be non-negative")
    ring = m.ring
    simp = m.simplification
    p0 = FPModule.free(ring, simp.target.gens)
    maps: List[ModuleHom] = [ModuleHom(p0, m, simp.from_target)]
    terms: List[FPModule] = [p0]
    complete = False
    for i in range(1, length + 1):
        generators = _kernel_basis(maps[-1])
        if generators.cols == 0:
            complete = True
            break
        term = FPModule.free(ring, generators.cols)
        maps.append(ModuleHom(term, terms[-1], generators))
        terms.append(term)
    else:
        complete = _kernel_basis(maps[-1]).cols == 0
    resolution = Resolution(m, tuple(terms), tuple(maps), complete)
    resolution.verify()
    logger.debug("Resolved %s to length %d", m, resolution.length)
    return resolution


def syzygy(m: FPModule, i: int) -> FPModule:
    """Ω^i(m): the image of d_i inside P_{i-1}, presented minimally."""
    if i < 1:
        raise ValueError("Syzygy index must be positive")
    resolution = free_resolution(m, i)
    if resolution.length < i:
        return FPModule.zero(m.ring)
    d = resolution.maps[i]
    return subquotient(d.dst, d.mat).module


def _require_finite_ring(m: FPModule, operation: str) -> None:
    if m.ring.is_integers:
        logger.warning("%s refused over %s", operation, m.ring)
        raise UnsupportedRingError(f"{operation} is only available over Z/m")


def _prime_power_parts(d: int, modulus: int) -> List[Tuple[int, int, int]]:
    """(p, v_p(d), v_p(m)) for each prime p dividing d."""
    full = factorint(modulus)
    return [(int(p), int(a), int(full[p])) for p, a in sorted(factorint(d).items())]


def projective_cover(m: FPModule) -> ModuleHom:
    """A surjection P → m with P projective and superfluous kernel (Z/m only)."""
    _require_finite_ring(m, "Projective cover")
    ring = m.ring
    simp = m.simplification
    summands, columns = [], []
    for j, d in enumerate(simp.factors):
        for p, a, full in _prime_power_parts(d, ring.modulus):
            summands.append(p**full)
            column = [0] * len(simp.factors)
            column[j] = d // p**a
            columns.append(column)
    cover = FPModule.from_factors(ring, summands)
    onto_target = ExactMatrix.from_columns(ring, len(simp.factors), columns)
    return ModuleHom(cover, m, simp.from_target @ onto_target)


def injective_envelope(m: FPModule) -> ModuleHom:
    """An essential mono m → E with E injective (Z/m only)."""
    _require_finite_ring(m, "Injective envelope")
    ring = m.ring
    simp = m.simplification
    summands, rows = [], []
    for j, d in enumerate(simp.factors):
        for p, a, full in _prime_power_parts(d, ring.modulus):
            summands.append(p**full)
            row = [0] * len(simp.factors)
            row[j] = p ** (full - a)
            rows.append(row)
    envelope = FPModule.from_factors(ring, summands)
    embed = ExactMatrix.from_rows(ring, rows, len(simp.factors))
    hom = ModuleHom(m, envelope, embed @ simp.to_target)
    if not hom.is_injective():
        raise InvariantViolationError("Injective envelope is not a monomorphism")
    return hom


def cosyzygy(m: FPModule, i: int) -> FPModule:
    """Ω^{-i}(m), the i-th cokernel of the minimal injective coresolution."""
    _require_finite_ring(m, "Cosyzygy")
    if i < 1:
        raise ValueError("Cosyzygy index must be positive")
    current = m
    for _ in range(i):
        current = cokernel(injective_envelope(current)).dst
    return current
