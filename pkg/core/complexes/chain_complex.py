"""
Bounded chain complexes of finitely presented modules and the maps between them.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from core.linear.exact_linear import ExactMatrix, RingDesc, solve
from core.modules.fp_module import (
    FPModule,
    ModuleHom,
    Subquotient,
    homology_at,
)
from core.modules.hom_space import hom_module
from shared.errors import (
    DimensionMismatchError,
    InvariantViolationError,
    RingMismatchError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChainComplex:
    """
    X_lo ← ... ← X_hi, zero outside [lo, hi].

    boundaries[k] is ∂_{lo+k+1} : X_{lo+k+1} → X_{lo+k}.
    """

    ring: RingDesc
    lo: int
    hi: int
    terms: Tuple[FPModule, ...]
    boundaries: Tuple[ModuleHom, ...]

    def __post_init__(self):
        if self.lo > self.hi:
            raise DimensionMismatchError(f"Empty window [{self.lo}, {self.hi}]")
        if len(self.terms) != self.hi - self.lo + 1:
            raise DimensionMismatchError("One term per degree of the window is required")
        if len(self.boundaries) != self.hi - self.lo:
            raise DimensionMismatchError("One boundary per inner degree is required")
        for t in self.terms:
            if t.ring != self.ring:
                raise RingMismatchError(f"Term over {t.ring} in a complex over {self.ring}")
        for k, d in enumerate(self.boundaries):
            n = self.lo + k + 1
            if d.src != self.term(n) or d.dst != self.term(n - 1):
                raise DimensionMismatchError(
                    f"Boundary at degree {n} does not match its terms"
                )
        for n in range(self.lo + 2, self.hi + 1):
            if not (self.boundary(n - 1) @ self.boundary(n)).is_zero():
                raise InvariantViolationError("∂∘∂ is not zero", degree=n)

    @classmethod
    def build(
        cls, ring: RingDesc, lo: int, terms: Sequence[FPModule], mats: Sequence[ExactMatrix]
    ) -> "ChainComplex":
        """terms[k] sits in degree lo+k; mats[k] is the matrix of ∂_{lo+k+1}."""
        terms = tuple(terms)
        boundaries = tuple(
            ModuleHom(terms[k + 1], terms[k], mat) for k, mat in enumerate(mats)
        )
        return cls(ring, lo, lo + len(terms) - 1, terms, boundaries)

    @classmethod
    def zero(cls, ring: RingDesc, degree: int = 0) -> "ChainComplex":
        return cls(ring, degree, degree, (FPModule.zero(ring),), ())

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def term(self, n: int) -> FPModule:
        if self.lo <= n <= self.hi:
            return self.terms[n - self.lo]
        return FPModule.zero(self.ring)

    def boundary(self, n: int) -> ModuleHom:
        """∂_n : X_n → X_{n-1}; zero when either end lies outside the window."""
        if self.lo < n <= self.hi:
            return self.boundaries[n - self.lo - 1]
        return ModuleHom.zero(self.term(n), self.term(n - 1))

    def is_zero(self) -> bool:
        return all(t.is_zero() for t in self.terms)

    def literal(self) -> str:
        """deg hi..lo : ∂_hi, ..., ∂_{lo+1} [over X_hi | ... | X_lo]"""
        mats = ", ".join(self.boundary(n).mat.literal() for n in range(self.hi, self.lo, -1))
        head = f"deg {self.hi}..{self.lo} :"
        if mats and all(t.is_free() for t in self.terms):
            return f"{head} {mats}"
        modules = " | ".join(self.term(n).literal() for n in range(self.hi, self.lo - 1, -1))
        return f"{head} {mats} over {modules}" if mats else f"{head} over {modules}"

    def describe(self) -> str:
        return "  ".join(f"[{n}] {self.term(n).canonical}" for n in self.degrees())


@dataclass(frozen=True)
class ChainMap:
    """components[k] : src_{src.lo+k} → dst_{src.lo+k}."""

    src: ChainComplex
    dst: ChainComplex
    components: Tuple[ModuleHom, ...]

    def __post_init__(self):
        if len(self.components) != len(self.src.terms):
            raise DimensionMismatchError("One component per source degree is required")
        for n, f in zip(self.src.degrees(), self.components):
            if f.src != self.src.term(n) or f.dst != self.dst.term(n):
                raise DimensionMismatchError(f"Component at degree {n} has the wrong ends")
        for n in range(self.src.lo, self.src.hi + 2):
            left = self.dst.boundary(n) @ self.component(n)
            right = self.component(n - 1) @ self.src.boundary(n)
            if not left.equals(right):
                raise InvariantViolationError("Chain map does not commute with ∂", degree=n)

    @classmethod
    def from_matrices(
        cls, src: ChainComplex, dst: ChainComplex, mats: Sequence[ExactMatrix]
    ) -> "ChainMap":
        return cls(
            src,
            dst,
            tuple(
                ModuleHom(src.term(n), dst.term(n), mat)
                for n, mat in zip(src.degrees(), mats)
            ),
        )

    @classmethod
    def identity(cls, x: ChainComplex) -> "ChainMap":
        return cls(x, x, tuple(ModuleHom.identity(t) for t in x.terms))

    @classmethod
    def zero(cls, src: ChainComplex, dst: ChainComplex) -> "ChainMap":
        return cls(
            src, dst, tuple(ModuleHom.zero(src.term(n), dst.term(n)) for n in src.degrees())
        )

    def component(self, n: int) -> ModuleHom:
        if self.src.lo <= n <= self.src.hi:
            return self.components[n - self.src.lo]
        return ModuleHom.zero(self.src.term(n), self.dst.term(n))

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.components)

    def is_isomorphism(self) -> bool:
        degrees = range(min(self.src.lo, self.dst.lo), max(self.src.hi, self.dst.hi) + 1)
        return all(self.component(n).is_isomorphism() for n in degrees)


@dataclass(frozen=True)
class DegreeMap:
    """A map of degree n: components[k] : src_{src.lo+k} → dst_{src.lo+k+n}."""

    src: ChainComplex
    dst: ChainComplex
    degree: int
    components: Tuple[ModuleHom, ...]

    def __post_init__(self):
        if len(self.components) != len(self.src.terms):
            raise DimensionMismatchError("One component per source degree is required")
        for k, f in zip(self.src.degrees(), self.components):
            if f.src != self.src.term(k) or f.dst != self.dst.term(k + self.degree):
                raise DimensionMismatchError(f"Component at degree {k} has the wrong ends")

    def component(self, k: int) -> ModuleHom:
        if self.src.lo <= k <= self.src.hi:
            return self.components[k - self.src.lo]
        return ModuleHom.zero(self.src.term(k), self.dst.term(k + self.degree))

    def boundary(self) -> "DegreeMap":
        """(∂^Y_{k+n} ∘ f_k − (−1)^n f_{k−1} ∘ ∂^X_k)_k, of degree n − 1."""
        n = self.degree
        sign = -1 if n % 2 == 0 else 1
        components = []
        for k in self.src.degrees():
            post = self.dst.boundary(k + n) @ self.component(k)
            pre = self.component(k - 1) @ self.src.boundary(k)
            components.append(post + pre.scale(sign))
        return DegreeMap(self.src, self.dst, n - 1, tuple(components))

    def to_chain_map(self) -> ChainMap:
        if self.degree != 0:
            raise InvariantViolationError("Only degree-0 maps can be chain maps")
        return ChainMap(self.src, self.dst, self.components)


@dataclass(frozen=True)
class Homotopy:
    """components[k] = s_k : src_k → dst_{k+1} with f_k = ∂_{k+1} s_k + s_{k−1} ∂_k."""

    f: ChainMap
    components: Tuple[ModuleHom, ...]

    def __post_init__(self):
        for n in self.f.src.degrees():
            rebuilt = self.f.dst.boundary(n + 1) @ self.component(n) + (
                self.component(n - 1) @ self.f.src.boundary(n)
            )
            if not rebuilt.equals(self.f.component(n)):
                raise InvariantViolationError("Homotopy identity fails", degree=n)

    def component(self, k: int) -> ModuleHom:
        src = self.f.src
        if src.lo <= k <= src.hi:
            return self.components[k - src.lo]
        return ModuleHom.zero(src.term(k), self.f.dst.term(k + 1))


def sphere(m: int, c: FPModule) -> ChainComplex:
    return ChainComplex(c.ring, m, m, (c,), ())


def disk(m: int, c: FPModule) -> ChainComplex:
    """D^m(C): C in degrees m and m−1 with identity boundary."""
    return ChainComplex(c.ring, m - 1, m, (c, c), (ModuleHom.identity(c),))


def suspension(k: int, x: ChainComplex) -> ChainComplex:
    sign = -1 if k % 2 else 1
    return ChainComplex(
        x.ring,
        x.lo + k,
        x.hi + k,
        x.terms,
        tuple(d.scale(sign) if sign < 0 else d for d in x.boundaries),
    )


def direct_sum_complexes(parts: Sequence[ChainComplex], ring: RingDesc) -> ChainComplex:
    from core.modules.fp_module import direct_sum

    if not parts:
        return ChainComplex.zero(ring)
    lo = min(p.lo for p in parts)
    hi = max(p.hi for p in parts)
    terms = [direct_sum([p.term(n) for p in parts], ring) for n in range(lo, hi + 1)]
    mats = [
        ExactMatrix.block_diagonal(ring, [p.boundary(n).mat for p in parts])
        for n in range(lo + 1, hi + 1)
    ]
    return ChainComplex.build(ring, lo, terms, mats)


def homology(x: ChainComplex, m: int) -> Subquotient:
    return homology_at(x.boundary(m + 1), x.boundary(m))


def is_exact(x: ChainComplex) -> bool:
    return all(homology(x, m).module.is_zero() for m in x.degrees())


def _slack(relations_z: ExactMatrix, ncols: int) -> ExactMatrix:
    """Relation columns for rows × ncols matrices vectorised row-major, per column."""
    rows = relations_z.rows * ncols
    columns = []
    for j in range(ncols):
        for r in relations_z.columns():
            column = [0] * rows
            for i, value in enumerate(r):
                column[i * ncols + j] = value
            columns.append(column)
    return ExactMatrix.from_columns(relations_z.ring, rows, columns)


def null_homotopy(f: ChainMap) -> Optional[Homotopy]:
    """Solves f_k = ∂ s_k + s_{k−1} ∂ for all k at once."""
    x, y = f.src, f.dst
    spaces = {k: hom_module(x.term(k), y.term(k + 1)) for k in x.degrees()}
    unknowns: List[Tuple[int, int]] = [
        (k, b) for k in x.degrees() for b in range(len(spaces[k].basis))
    ]
    equation_rows: Dict[int, int] = {}
    offset = 0
    for k in x.degrees():
        equation_rows[k] = offset
        offset += y.term(k).gens * x.term(k).gens
    total_rows = offset

    def place(k: int, mat: ExactMatrix) -> List[int]:
        column = [0] * total_rows
        base = equation_rows[k]
        for i, value in enumerate(mat.lift().entries):
            column[base + i] = value
        return column

    columns = []
    for k, b in unknowns:
        s = spaces[k].basis[b]
        column = [0] * total_rows
        # s_k contributes ∂_{k+1} s_k at degree k and s_k ∂_{k+1} at degree k+1
        for target, mat in (
            (k, (y.boundary(k + 1) @ s).mat),
            (k + 1, (s @ x.boundary(k + 1)).mat if k + 1 <= x.hi else None),
        ):
            if mat is None or target not in equation_rows:
                continue
            for i, value in enumerate(place(target, mat)):
                column[i] += value
        columns.append(column)

    zz = RingDesc.integers()
    system = ExactMatrix.from_columns(zz, total_rows, columns)
    slack = [_slack(y.term(k).relations_z, x.term(k).gens) for k in x.degrees()]
    system = system.hstack(ExactMatrix.block_diagonal(zz, slack))
    rhs = [0] * total_rows
    for k in x.degrees():
        for i, value in enumerate(place(k, f.component(k).mat)):
            rhs[i] += value
    solution = solve(system, ExactMatrix.column_vector(zz, rhs))
    if solution is None:
        return None
    coords = solution.column(0)
    components = []
    for k in x.degrees():
        picked = [coords[i] for i, (kk, _) in enumerate(unknowns) if kk == k]
        components.append(spaces[k].hom(picked))
    logger.debug("Found a null homotopy of a map out of %s", x.describe())
    return Homotopy(f, tuple(components))
