"""
Finitely presented modules over a RingDesc and the homs between them.

A module is R^gens / column-span(rels). All relation bookkeeping is done over Z
on the lifted presentation; for Z/m the lift carries the extra relations m·I,
so a Z/m-module is simply a Z-module killed by m.
"""

import logging
from dataclasses import dataclass
from functools import cached_property, reduce
from math import gcd, prod
from typing import Optional, Sequence, Tuple

from core.linear.exact_linear import (
    ExactMatrix,
    RingDesc,
    kernel_generators,
    snf,
    solve,
    solve_vector,
    span_basis,
)
from shared.errors import (
    DimensionMismatchError,
    InvariantViolationError,
    RingMismatchError,
)

logger = logging.getLogger(__name__)


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else 0


@dataclass(frozen=True)
class CanonicalForm:
    """Invariant factors d1 | d2 | ... (all != 1) plus free rank over Z."""

    factors: Tuple[int, ...]
    free_rank: int = 0

    @property
    def is_zero(self) -> bool:
        return not self.factors and self.free_rank == 0

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def cardinality(self) -> Optional[int]:
        return prod(self.factors) if self.is_finite else None

    @property
    def torsion_exponent(self) -> int:
        return reduce(lcm, self.factors, 1)

    @property
    def generator_count(self) -> int:
        return len(self.factors) + self.free_rank

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.factors]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return " ⊕ ".join(parts) if parts else "0"


@dataclass(frozen=True)
class FPModule:
    ring: RingDesc
    gens: int
    rels: ExactMatrix

    def __post_init__(self):
        if self.rels.ring != self.ring:
            raise RingMismatchError(
                f"Relations over {self.rels.ring} for a module over {self.ring}"
            )
        if self.rels.rows != self.gens:
            raise DimensionMismatchError(
                f"Relation matrix has {self.rels.rows} rows for {self.gens} generators"
            )

    @classmethod
    def free(cls, ring: RingDesc, rank: int) -> "FPModule":
        return cls(ring, rank, ExactMatrix.zeros(ring, rank, 0))

    @classmethod
    def zero(cls, ring: RingDesc) -> "FPModule":
        return cls.free(ring, 0)

    @classmethod
    def from_factors(
        cls, ring: RingDesc, factors: Sequence[int], free_rank: int = 0
    ) -> "FPModule":
        """Direct sum of cyclic modules R/(d) followed by free_rank copies of R."""
        n = len(factors) + free_rank
        columns = []
        for i, d in enumerate(factors):
            if ring.reduce(d) != 0:
                column = [0] * n
                column[i] = d
                columns.append(column)
        return cls(ring, n, ExactMatrix.from_columns(ring, n, columns))

    @classmethod
    def cyclic(cls, ring: RingDesc, d: int) -> "FPModule":
        return cls.from_factors(ring, [d])

    @cached_property
    def relations_z(self) -> ExactMatrix:
        """The relation matrix over Z, including m·I for Z/m."""
        lifted = self.rels.lift()
        if self.ring.is_integers:
            return lifted
        return lifted.hstack(
            ExactMatrix.identity(lifted.ring, self.gens).scale(self.ring.modulus)
        )

    @cached_property
    def simplification(self) -> "Simplification":
        return _simplify(self)

    @property
    def canonical(self) -> CanonicalForm:
        return self.simplification.form

    def is_zero(self) -> bool:
        return self.canonical.is_zero

    def is_free(self) -> bool:
        return self.rels.is_zero()

    def literal(self) -> str:
        if self.is_free():
            return f"free {self.gens}"
        return f"coker {self.rels.literal()}"

    def __str__(self) -> str:
        return str(self.canonical)


def canonical_form(m: FPModule) -> CanonicalForm:
    return m.canonical


@dataclass(frozen=True)
class Simplification:
    """
    An isomorphism between a presentation and its diagonal (invariant-factor) form.

    to_target maps source coordinates to target coordinates, from_target goes back.
    """

    source: FPModule
    target: FPModule
    factors: Tuple[int, ...]
    to_target: ExactMatrix
    from_target: ExactMatrix

    @property
    def form(self) -> CanonicalForm:
        if self.source.ring.is_integers:
            torsion = tuple(d for d in self.factors if d)
            return CanonicalForm(torsion, sum(1 for d in self.factors if d == 0))
        return CanonicalForm(self.factors, 0)


def _simplify(m: FPModule) -> Simplification:
    ring = m.ring
    relations = m.relations_z
    result = snf(relations)
    diagonal = list(result.diagonal) + [0] * (m.gens - len(result.diagonal))
    kept = [i for i in range(m.gens) if diagonal[i] != 1]
    factors = tuple(diagonal[i] for i in kept)
    to_target = ExactMatrix.from_rows(
        ring, [list(result.u.row(i)) for i in kept], m.gens
    )
    from_target = ExactMatrix.from_columns(
        ring, m.gens, [result.u_inv.column(i) for i in kept]
    )
    target = FPModule.from_factors(ring, factors)
    return Simplification(m, target, factors, to_target, from_target)


@dataclass(frozen=True)
class ModuleHom:
    """A hom given by the images of generators; relation compatibility is checked."""

    src: FPModule
    dst: FPModule
    mat: ExactMatrix

    def __post_init__(self):
        if self.src.ring != self.dst.ring or self.mat.ring != self.src.ring:
            raise RingMismatchError("Hom components live over different rings")
        if self.mat.shape != (self.dst.gens, self.src.gens):
            raise DimensionMismatchError(
                f"Hom matrix is {self.mat.shape}, expected {(self.dst.gens, self.src.gens)}"
            )
        if self.src.rels.cols:
            images = self.mat.lift() @ self.src.rels.lift()
            if solve(self.dst.relations_z, images) is None:
                raise InvariantViolationError(
                    "Matrix does not respect the source relations"
                )

    @classmethod
    def identity(cls, m: FPModule) -> "ModuleHom":
        return cls(m, m, ExactMatrix.identity(m.ring, m.gens))

    @classmethod
    def zero(cls, src: FPModule, dst: FPModule) -> "ModuleHom":
        return cls(src, dst, ExactMatrix.zeros(src.ring, dst.gens, src.gens))

    def __matmul__(self, other: "ModuleHom") -> "ModuleHom":
        """self ∘ other"""
        if other.dst != self.src:
            raise DimensionMismatchError("Homs are not composable")
        return ModuleHom(other.src, self.dst, self.mat @ other.mat)

    def __add__(self, other: "ModuleHom") -> "ModuleHom":
        return ModuleHom(self.src, self.dst, self.mat + other.mat)

    def __neg__(self) -> "ModuleHom":
        return self.scale(-1)

    def __sub__(self, other: "ModuleHom") -> "ModuleHom":
        return self + (-other)

    def scale(self, k: int) -> "ModuleHom":
        return ModuleHom(self.src, self.dst, self.mat.scale(k))

    def is_zero(self) -> bool:
        if self.mat.cols == 0:
            return True
        return solve(self.dst.relations_z, self.mat.lift()) is not None

    def equals(self, other: "ModuleHom") -> bool:
        """Equality as maps, i.e. modulo the target relations."""
        return (self - other).is_zero()

    def is_injective(self) -> bool:
        return kernel(self).module.is_zero()

    def is_surjective(self) -> bool:
        return cokernel(self).dst.is_zero()

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()


@dataclass(frozen=True)
class Subquotient:
    """
    (span(generators) + R_amb) / (R_amb + span(extra)) inside an ambient module,
    presented on the given generators (already simplified).
    """

    ambient: FPModule
    module: FPModule
    generators: ExactMatrix
    extra: ExactMatrix

    def coordinates(self, vector: Sequence[int]) -> Tuple[int, ...]:
        """Coordinates in `module` of an ambient vector lying in the subquotient."""
        system = self.generators.lift().hstack(
            self.ambient.relations_z, self.extra.lift()
        )
        x = solve_vector(system, [int(v) for v in vector])
        if x is None:
            raise InvariantViolationError("Vector does not lie in the subquotient")
        return tuple(self.module.ring.reduce(c) for c in x[: self.generators.cols])

    @property
    def inclusion(self) -> ModuleHom:
        """Inclusion into the ambient module; only valid when there are no extra relations."""
        if self.extra.cols:
            raise InvariantViolationError(
                "A proper subquotient has no inclusion into its ambient module"
            )
        return ModuleHom(self.module, self.ambient, self.generators)


def subquotient(
    ambient: FPModule, generators: ExactMatrix, extra: Optional[ExactMatrix] = None
) -> Subquotient:
    ring = ambient.ring
    if extra is None:
        extra = ExactMatrix.zeros(ring, ambient.gens, 0)
    g = generators.lift()
    quotient_by = ambient.relations_z.hstack(extra.lift())
    relation_space = kernel_generators(g.hstack(-quotient_by))
    relations = relation_space.submatrix(0, generators.cols, 0, relation_space.cols)
    raw = FPModule(ring, generators.cols, relations.over(ring))
    simp = raw.simplification
    return Subquotient(
        ambient=ambient,
        module=simp.target,
        generators=generators @ simp.from_target,
        extra=extra,
    )


def kernel(f: ModuleHom) -> Subquotient:
    """ker f as a submodule of f.src; `.inclusion` is the canonical mono."""
    ring = f.src.ring
    system = f.mat.lift().hstack(-f.dst.relations_z)
    solutions = kernel_generators(system)
    x_parts = solutions.submatrix(0, f.src.gens, 0, solutions.cols).over(ring)
    return subquotient(f.src, x_parts)


def image(f: ModuleHom) -> Subquotient:
    return subquotient(f.dst, f.mat)


def cokernel(f: ModuleHom) -> ModuleHom:
    """The projection f.dst → coker f onto the simplified cokernel."""
    raw = FPModule(f.dst.ring, f.dst.gens, f.dst.rels.hstack(f.mat))
    simp = raw.simplification
    return ModuleHom(f.dst, simp.target, simp.to_target)


def homology_at(alpha: ModuleHom, beta: ModuleHom) -> Subquotient:
    """ker(beta) / im(alpha) for A → B → C with beta ∘ alpha = 0."""
    if alpha.dst != beta.src:
        raise DimensionMismatchError("Homs are not composable")
    if not (beta @ alpha).is_zero():
        raise InvariantViolationError("Composite of consecutive maps is not zero")
    cycles = kernel(beta)
    return subquotient(beta.src, cycles.generators, alpha.mat)


def is_exact_at(alpha: ModuleHom, beta: ModuleHom) -> bool:
    return homology_at(alpha, beta).module.is_zero()


def direct_sum(modules: Sequence[FPModule], ring: Optional[RingDesc] = None) -> FPModule:
    if ring is None:
        if not modules:
            raise ValueError("Empty direct sum needs an explicit ring")
        ring = modules[0].ring
    for m in modules:
        if m.ring != ring:
            raise RingMismatchError("Direct summands over different rings")
    return FPModule(
        ring,
        sum(m.gens for m in modules),
        ExactMatrix.block_diagonal(ring, [m.rels for m in modules]),
    )


def power(m: FPModule, k: int) -> FPModule:
    return direct_sum([m] * k, m.ring)


def tensor_modules(m: FPModule, n: FPModule) -> FPModule:
    """M ⊗ N on generators e_i ⊗ f_j indexed i * n.gens + j."""
    if m.ring != n.ring:
        raise RingMismatchError("Tensor factors over different rings")
    ring = m.ring
    left = m.rels.kron(ExactMatrix.identity(ring, n.gens))
    right = ExactMatrix.identity(ring, m.gens).kron(n.rels)
    return FPModule(ring, m.gens * n.gens, left.hstack(right))


def tensor_homs(f: ModuleHom, g: ModuleHom) -> ModuleHom:
    return ModuleHom(
        tensor_modules(f.src, g.src), tensor_modules(f.dst, g.dst), f.mat.kron(g.mat)
    )


@dataclass(frozen=True)
class ShortExactSequence:
    """0 → A --f--> B --g--> C → 0, re-verified on construction."""

    f: ModuleHom
    g: ModuleHom

    def __post_init__(self):
        if not self.f.is_injective():
            raise InvariantViolationError("First map of the sequence is not injective")
        if not self.g.is_surjective():
            raise InvariantViolationError("Second map of the sequence is not surjective")
        if not is_exact_at(self.f, self.g):
            raise InvariantViolationError("Sequence is not exact in the middle")

    @property
    def sub(self) -> FPModule:
        return self.f.src

    @property
    def middle(self) -> FPModule:
        return self.f.dst

    @property
    def quotient(self) -> FPModule:
        return self.g.dst

    @classmethod
    def from_inclusion(cls, incl: ModuleHom) -> "ShortExactSequence":
        return cls(incl, cokernel(incl))

    def is_split(self) -> bool:
        """True when g admits a section (checked by solving for one)."""
        from core.modules.hom_space import hom_module

        space = hom_module(self.quotient, self.middle)
        target = ModuleHom.identity(self.quotient)
        candidates = [self.g @ h for h in space.basis]
        if not candidates:
            return target.is_zero()
        # g ∘ s = id is linear in the coordinates of s
        columns = [c.mat.lift().entries for c in candidates]
        rels_block = _vectorized_relations(self.quotient)
        system = ExactMatrix.from_columns(
            rels_block.ring, len(columns[0]), columns
        ).hstack(rels_block)
        rhs = ExactMatrix.column_vector(rels_block.ring, target.mat.lift().entries)
        return solve(system, rhs) is not None


def _vectorized_relations(m: FPModule) -> ExactMatrix:
    """Relations on m.gens × m.gens matrices (row-major), each column of the matrix free mod rels."""
    zz = m.relations_z.ring
    rows = m.gens * m.gens
    columns = []
    for j in range(m.gens):
        for r in m.relations_z.columns():
            column = [0] * rows
            for i, value in enumerate(r):
                column[i * m.gens + j] = value
            columns.append(column)
    return ExactMatrix.from_columns(zz, rows, columns)
