"""
Derived functors in the category of bounded complexes.

Projective complexes are built as sums of disks ⊕_m D^m(F_m) on free modules; a
chain map out of such a sum is the same as a family of homs F_m → Y_m, so the
chain-map groups Hom_Ch(P, Y) are ⊕_m Y_m^{rank F_m}.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

from core.complexes.chain_complex import (
    ChainComplex,
    ChainMap,
    is_exact,
    suspension,
)
from core.complexes.functors import bar_tensor, bar_tensor_map
from core.linear.exact_linear import ExactMatrix, RingDesc
from core.modules.dimensions import Dimension, INFINITE, projective_dimension
from core.modules.fp_module import (
    FPModule,
    ModuleHom,
    Subquotient,
    direct_sum,
    homology_at,
    kernel,
    power,
)
from shared.errors import InvariantViolationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DiskSum:
    """⊕_m D^m(R^{ranks[m]}); degree j holds F_j ⊕ F_{j+1} in that order."""

    ranks: Tuple[Tuple[int, int], ...]
    complex: ChainComplex

    def rank(self, m: int) -> int:
        return dict(self.ranks).get(m, 0)

    def generator_degrees(self) -> List[int]:
        return [m for m, r in self.ranks if r]


def disk_sum(ring: RingDesc, ranks: Dict[int, int]) -> DiskSum:
    degrees = sorted(ranks)
    if not degrees:
        return DiskSum((), ChainComplex.zero(ring))
    r = lambda m: ranks.get(m, 0)  # noqa: E731
    lo, hi = degrees[0] - 1, degrees[-1]
    terms = [FPModule.free(ring, r(j) + r(j + 1)) for j in range(lo, hi + 1)]
    mats = []
    for j in range(lo + 1, hi + 1):
        # the F_j summand of degree j maps onto the F_j summand of degree j−1
        mats.append(
            ExactMatrix.blocks(
                ring,
                [r(j - 1), r(j)],
                [r(j), r(j + 1)],
                {(1, 0): ExactMatrix.identity(ring, r(j))},
            )
        )
    return DiskSum(tuple(sorted(ranks.items())), ChainComplex.build(ring, lo, terms, mats))


def disk_cover(x: ChainComplex) -> Tuple[DiskSum, ChainMap]:
    """A degreewise surjection from a sum of disks on frees onto x."""
    ring = x.ring
    ranks, lifts = {}, {}
    for m in x.degrees():
        raw = FPModule(ring, x.term(m).gens, x.term(m).rels.hstack(x.boundary(m + 1).mat))
        simp = raw.simplification
        ranks[m] = simp.target.gens
        lifts[m] = simp.from_target
    cover = disk_sum(ring, ranks)
    p = cover.complex
    components = []
    for j in p.degrees():
        target = x.term(j)
        blocks = []
        if j in lifts:
            blocks.append(lifts[j])
        else:
            blocks.append(ExactMatrix.zeros(ring, target.gens, cover.rank(j)))
        if j + 1 in lifts:
            blocks.append(x.boundary(j + 1).mat @ lifts[j + 1])
        else:
            blocks.append(ExactMatrix.zeros(ring, target.gens, cover.rank(j + 1)))
        components.append(ModuleHom(p.term(j), target, blocks[0].hstack(blocks[1])))
    return cover, ChainMap(p, x, tuple(components))


def kernel_complex(f: ChainMap) -> Tuple[ChainComplex, ChainMap]:
    """Degreewise kernel of f with its inclusion into f.src."""
    src = f.src
    subs: Dict[int, Subquotient] = {n: kernel(f.component(n)) for n in src.degrees()}
    mats = []
    for n in range(src.lo + 1, src.hi + 1):
        moved = src.boundary(n).mat @ subs[n].generators
        columns = [subs[n - 1].coordinates(moved.column(c)) for c in range(moved.cols)]
        mats.append(
            ExactMatrix.from_columns(src.ring, subs[n - 1].module.gens, columns)
        )
    k = ChainComplex.build(src.ring, src.lo, [subs[n].module for n in src.degrees()], mats)
    inclusion = ChainMap(k, src, tuple(subs[n].inclusion for n in src.degrees()))
    return k, inclusion


def compose_chain_maps(f: ChainMap, g: ChainMap) -> ChainMap:
    """f ∘ g"""
    return ChainMap(g.src, f.dst, tuple(f.component(n) @ g.component(n) for n in g.src.degrees()))


@dataclass(frozen=True)
class ComplexResolution:
    """
    ... → P^1 → P^0 → target with every P^j a sum of disks on free modules.

    maps[0] is the augmentation, maps[j] : P^j → P^{j−1}.
    """

    target: ChainComplex
    terms: Tuple[DiskSum, ...]
    maps: Tuple[ChainMap, ...]
    complete: bool

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def verify(self) -> None:
        for j, term in enumerate(self.terms):
            if not is_projective_complex(term.complex):
                raise InvariantViolationError(f"Term {j} is not a projective complex")
        for n in range(self.target.lo, self.target.hi + 1):
            if not self.maps[0].component(n).is_surjective():
                raise InvariantViolationError("Augmentation is not surjective", degree=n)
        for j in range(1, len(self.maps)):
            lower = self.maps[j - 1]
            for n in self.terms[j - 1].complex.degrees():
                upper = self.maps[j].component(n)
                if not homology_at(upper, lower.component(n)).module.is_zero():
                    raise InvariantViolationError(
                        f"Resolution is not exact at term {j - 1}", degree=n
                    )


def disk_resolution(x: ChainComplex, length: int) -> ComplexResolution:
    cover, augmentation = disk_cover(x)
    terms, maps = [cover], [augmentation]
    current_kernel, inclusion = kernel_complex(augmentation)
    complete = current_kernel.is_zero()
    while not complete and len(terms) <= length:
        cover, onto_kernel = disk_cover(current_kernel)
        terms.append(cover)
        maps.append(compose_chain_maps(inclusion, onto_kernel))
        current_kernel, inclusion = kernel_complex(onto_kernel)
        complete = current_kernel.is_zero()
    resolution = ComplexResolution(x, tuple(terms), tuple(maps), complete)
    resolution.verify()
    logger.debug("Disk resolution of %s has length %d", x.describe(), resolution.length)
    return resolution


def _generator_blocks(
    d: ChainMap, upper: DiskSum, lower: DiskSum, m: int
) -> Tuple[ExactMatrix, ExactMatrix]:
    """
    The restriction of d_m to the generators F^upper_m, split as
    (A: → F^lower_m, B: → F^lower_{m+1}).
    """
    mat = d.component(m).mat
    width = upper.rank(m)
    a_rows, b_rows = lower.rank(m), lower.rank(m + 1)
    a = mat.submatrix(0, a_rows, 0, width) if a_rows else ExactMatrix.zeros(mat.ring, 0, width)
    b = mat.submatrix(a_rows, a_rows + b_rows, 0, width)
    return a, b


@dataclass(frozen=True)
class ChainHomCochain:
    """Hom_Ch(P^j, Y) = ⊕_m Y_m^{rank F^j_m} with the induced coboundaries."""

    terms: Tuple[FPModule, ...]
    degrees: Tuple[Tuple[int, ...], ...]
    coboundaries: Tuple[ModuleHom, ...]


def chain_hom_cochain(resolution: ComplexResolution, y: ChainComplex) -> ChainHomCochain:
    ring = y.ring
    degrees = [tuple(m for m, r in term.ranks) for term in resolution.terms]
    terms = [
        direct_sum([power(y.term(m), term.rank(m)) for m in degs], ring)
        for term, degs in zip(resolution.terms, degrees)
    ]
    coboundaries = []
    for j in range(1, len(resolution.terms)):
        upper, lower = resolution.terms[j], resolution.terms[j - 1]
        rows, cols = degrees[j], degrees[j - 1]
        parts = {}
        for i, m in enumerate(rows):
            a, b = _generator_blocks(resolution.maps[j], upper, lower, m)
            if m in cols:
                identity = ExactMatrix.identity(ring, y.term(m).gens)
                parts[(i, cols.index(m))] = a.transpose().kron(identity)
            if m + 1 in cols:
                # h_{m+1} feeds F_m through the bottom copy of D^{m+1}
                parts[(i, cols.index(m + 1))] = b.transpose().kron(y.boundary(m + 1).mat)
        mat = ExactMatrix.blocks(
            ring,
            [y.term(m).gens * upper.rank(m) for m in rows],
            [y.term(m).gens * lower.rank(m) for m in cols],
            parts,
        )
        coboundaries.append(ModuleHom(terms[j - 1], terms[j], mat))
    return ChainHomCochain(tuple(terms), tuple(degrees), tuple(coboundaries))


def _cohomology(cochain: ChainHomCochain, i: int, ring: RingDesc) -> Subquotient:
    if i >= len(cochain.terms):
        zero = FPModule.zero(ring)
        return homology_at(ModuleHom.zero(zero, zero), ModuleHom.zero(zero, zero))
    term = cochain.terms[i]
    zero = FPModule.zero(ring)
    incoming = cochain.coboundaries[i - 1] if i >= 1 else ModuleHom.zero(zero, term)
    outgoing = (
        cochain.coboundaries[i]
        if i < len(cochain.coboundaries)
        else ModuleHom.zero(term, zero)
    )
    return homology_at(incoming, outgoing)


def ext_ch_classes(i: int, x: ChainComplex, y: ChainComplex) -> Subquotient:
    if i < 0:
        raise ValueError("Ext degree must be non-negative")
    resolution = disk_resolution(x, i + 1)
    return _cohomology(chain_hom_cochain(resolution, y), i, y.ring)


def ext_ch(i: int, x: ChainComplex, y: ChainComplex) -> FPModule:
    """Ext^i in Ch(R-Mod), as the group of classes."""
    return ext_ch_classes(i, x, y).module


def _shift_window(resolution: ComplexResolution, y: ChainComplex) -> range:
    """Degrees n for which Σ^{−n} Y meets a generator degree of the resolution."""
    generator_degrees = [m for term in resolution.terms for m, _ in term.ranks]
    if not generator_degrees:
        return range(0, 1)
    return range(y.lo - max(generator_degrees), y.hi - min(generator_degrees) + 1)


def bar_ext(i: int, x: ChainComplex, y: ChainComplex) -> ChainComplex:
    """
    Degree n holds Ext^i(x, Σ^{−n} y); the boundary is induced by post-composition
    with ∂^Y.
    """
    if i < 0:
        raise ValueError("Ext degree must be non-negative")
    ring = y.ring
    resolution = disk_resolution(x, i + 1)
    window = _shift_window(resolution, y)
    classes = {
        n: _cohomology(chain_hom_cochain(resolution, suspension(-n, y)), i, ring)
        for n in window
    }
    mats = []
    if i < len(resolution.terms):
        term = resolution.terms[i]
        degrees = [m for m, _ in term.ranks]
        for n in window[1:]:
            post = ExactMatrix.block_diagonal(
                ring,
                [
                    ExactMatrix.identity(ring, term.rank(m)).kron(y.boundary(m + n).mat)
                    for m in degrees
                ],
            )
            moved = post @ classes[n].generators
            columns = [classes[n - 1].coordinates(moved.column(c)) for c in range(moved.cols)]
            mats.append(ExactMatrix.from_columns(ring, classes[n - 1].module.gens, columns))
    else:
        mats = [
            ExactMatrix.zeros(ring, classes[n - 1].module.gens, classes[n].module.gens)
            for n in window[1:]
        ]
    return ChainComplex.build(ring, window.start, [classes[n].module for n in window], mats)


def bar_tor(i: int, x: ChainComplex, y: ChainComplex) -> ChainComplex:
    """Degree n holds H_i of (P^• ⊗̄ Y)_n; the boundary is induced by ∂^P ⊗ 1."""
    if i < 0:
        raise ValueError("Tor degree must be non-negative")
    ring = y.ring
    resolution = disk_resolution(x, i + 1)
    if i > resolution.length:
        return ChainComplex.zero(ring)
    barred = [bar_tensor(term.complex, y) for term in resolution.terms]
    middle = barred[i]
    outgoing = (
        bar_tensor_map(resolution.maps[i], y, middle, barred[i - 1]) if i >= 1 else {}
    )
    incoming = (
        bar_tensor_map(resolution.maps[i + 1], y, barred[i + 1], middle)
        if i + 1 <= resolution.length
        else {}
    )
    zero = FPModule.zero(ring)
    classes = {}
    for n in middle.degrees():
        t = middle.term(n)
        out_map = outgoing.get(n, ModuleHom.zero(t, zero))
        in_map = incoming.get(n, ModuleHom.zero(zero, t))
        classes[n] = homology_at(in_map, out_map)
    mats = []
    for n in range(middle.lo + 1, middle.hi + 1):
        moved = middle.boundary(n).mat @ classes[n].generators
        columns = [classes[n - 1].coordinates(moved.column(c)) for c in range(moved.cols)]
        mats.append(ExactMatrix.from_columns(ring, classes[n - 1].module.gens, columns))
    return ChainComplex.build(ring, middle.lo, [classes[n].module for n in middle.degrees()], mats)


def cycle_modules(x: ChainComplex) -> Dict[int, FPModule]:
    return {m: kernel(x.boundary(m)).module for m in x.degrees()}


def is_projective_complex(x: ChainComplex) -> bool:
    """Exact with projective cycle modules."""
    if not is_exact(x):
        return False
    return all(projective_dimension(z) == 0 for z in cycle_modules(x).values())


def pd_complex(x: ChainComplex) -> Dimension:
    if not is_exact(x):
        return INFINITE
    return max((projective_dimension(z) for z in cycle_modules(x).values()), default=0)


@dataclass(frozen=True)
class BarOrthogonality:
    vanishes: bool
    """Every term of bar-Ext¹(x, y) is zero."""
    termwise: Dict[int, bool]
    """k ↦ Ext¹(x, Σ^{−k} y) = 0 across the shift window."""

    @property
    def agrees(self) -> bool:
        return self.vanishes == all(self.termwise.values())


def bar_ext_orthogonal(x: ChainComplex, y: ChainComplex) -> BarOrthogonality:
    barred = bar_ext(1, x, y)
    termwise = {
        k: ext_ch(1, x, suspension(-k, y)).is_zero() for k in barred.degrees()
    }
    return BarOrthogonality(barred.is_zero(), termwise)
