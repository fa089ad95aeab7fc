"""
Functors on bounded complexes: ⊗, bar-⊗, Hom′, bar-Hom and the Pontryagin complex.

Hom′ and bar-Hom keep the hom spaces they are built from so that degree maps can
be converted to and from coordinates.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from core.complexes.chain_complex import ChainComplex, ChainMap, DegreeMap, disk
from core.linear.exact_linear import ExactMatrix, RingDesc
from core.modules.duality import character_hom_space, common_exponent
from core.modules.fp_module import (
    FPModule,
    ModuleHom,
    Subquotient,
    direct_sum,
    kernel,
    tensor_modules,
)
from core.modules.hom_space import HomSpace, hom_module, post_compose, pre_compose
from shared.errors import RingMismatchError

logger = logging.getLogger(__name__)


def _check_rings(x: ChainComplex, y: ChainComplex) -> RingDesc:
    if x.ring != y.ring:
        raise RingMismatchError(f"Complexes over {x.ring} and {y.ring}")
    return x.ring


def _tensor_summands(x: ChainComplex, y: ChainComplex, n: int) -> List[int]:
    return [k for k in x.degrees() if y.lo <= n - k <= y.hi]


def _tensor_parts(x: ChainComplex, y: ChainComplex):
    ring = _check_rings(x, y)
    lo, hi = x.lo + y.lo, x.hi + y.hi
    summands = {n: _tensor_summands(x, y, n) for n in range(lo, hi + 1)}
    modules = {
        n: [tensor_modules(x.term(k), y.term(n - k)) for k in summands[n]]
        for n in summands
    }
    return ring, lo, hi, summands, modules


def _tensor_boundary(x, y, n, summands, modules, ring, with_y: bool) -> ExactMatrix:
    """∂_n on ⊕_k X_k ⊗ Y_{n−k}; with_y adds the Koszul-signed Y part."""
    src, dst = summands[n], summands[n - 1]
    parts = {}
    for col, k in enumerate(src):
        identity_y = ExactMatrix.identity(ring, y.term(n - k).gens)
        if k - 1 in dst:
            row = dst.index(k - 1)
            parts[(row, col)] = x.boundary(k).mat.kron(identity_y)
        if with_y and k in dst:
            row = dst.index(k)
            sign = -1 if k % 2 else 1
            identity_x = ExactMatrix.identity(ring, x.term(k).gens)
            parts[(row, col)] = identity_x.kron(y.boundary(n - k).mat).scale(sign)
    return ExactMatrix.blocks(
        ring,
        [m.gens for m in modules[n - 1]],
        [m.gens for m in modules[n]],
        parts,
    )


def tensor(x: ChainComplex, y: ChainComplex) -> ChainComplex:
    ring, lo, hi, summands, modules = _tensor_parts(x, y)
    terms = [direct_sum(modules[n], ring) for n in range(lo, hi + 1)]
    mats = [
        _tensor_boundary(x, y, n, summands, modules, ring, with_y=True)
        for n in range(lo + 1, hi + 1)
    ]
    return ChainComplex.build(ring, lo, terms, mats)


def bar_tensor(x: ChainComplex, y: ChainComplex) -> ChainComplex:
    """(X ⊗ Y)_n / B_n(X ⊗ Y) with boundary ∂^X ⊗ 1."""
    full = tensor(x, y)
    ring, lo, hi, summands, modules = _tensor_parts(x, y)
    terms = []
    for n in full.degrees():
        t = full.term(n)
        boundaries = full.boundary(n + 1).mat
        terms.append(FPModule(ring, t.gens, t.rels.hstack(boundaries)))
    mats = [
        _tensor_boundary(x, y, n, summands, modules, ring, with_y=False)
        for n in range(lo + 1, hi + 1)
    ]
    return ChainComplex.build(ring, lo, terms, mats)


@dataclass(frozen=True)
class HomPrimeComplex:
    """Hom′(X, Y) with the hom spaces of every product factor."""

    source: ChainComplex
    target: ChainComplex
    complex: ChainComplex
    factors: Dict[int, Tuple[Tuple[int, HomSpace], ...]]

    def coordinates(self, f: DegreeMap) -> Tuple[int, ...]:
        coords: List[int] = []
        for k, space in self.factors[f.degree]:
            coords.extend(space.coordinates(f.component(k)))
        return tuple(coords)

    def degree_map(self, n: int, coords: Sequence[int]) -> DegreeMap:
        by_degree = {}
        offset = 0
        for k, space in self.factors[n]:
            size = space.module.gens
            by_degree[k] = space.hom(coords[offset : offset + size])
            offset += size
        components = tuple(
            by_degree.get(k)
            or ModuleHom.zero(self.source.term(k), self.target.term(k + n))
            for k in self.source.degrees()
        )
        return DegreeMap(self.source, self.target, n, components)

    def post_composition(self, n: int) -> ModuleHom:
        """f ↦ (∂^Y ∘ f_k)_k from Hom′_n to Hom′_{n−1}."""
        ring = self.complex.ring
        src, dst = self.factors[n], dict(self.factors.get(n - 1, ()))
        parts = {}
        dst_keys = [k for k, _ in self.factors.get(n - 1, ())]
        for col, (k, space) in enumerate(src):
            if k in dst:
                parts[(dst_keys.index(k), col)] = post_compose(
                    space, dst[k], self.target.boundary(k + n)
                ).mat
        mat = ExactMatrix.blocks(
            ring,
            [s.module.gens for _, s in self.factors.get(n - 1, ())],
            [s.module.gens for _, s in src],
            parts,
        )
        return ModuleHom(self.complex.term(n), self.complex.term(n - 1), mat)


def hom_prime_complex(x: ChainComplex, y: ChainComplex) -> HomPrimeComplex:
    ring = _check_rings(x, y)
    lo, hi = y.lo - x.hi, y.hi - x.lo
    factors = {}
    for n in range(lo, hi + 1):
        factors[n] = tuple(
            (k, hom_module(x.term(k), y.term(n + k)))
            for k in x.degrees()
            if y.lo <= n + k <= y.hi
        )
    terms = [direct_sum([s.module for _, s in factors[n]], ring) for n in range(lo, hi + 1)]

    mats = []
    for n in range(lo + 1, hi + 1):
        src, dst = factors[n], factors[n - 1]
        dst_index = {k: i for i, (k, _) in enumerate(dst)}
        sign = -1 if n % 2 == 0 else 1  # −(−1)^n
        parts = {}
        for col, (k, space) in enumerate(src):
            if k in dst_index:
                block = post_compose(space, dst[dst_index[k]][1], y.boundary(n + k)).mat
                parts[(dst_index[k], col)] = block
            if k + 1 in dst_index:
                block = pre_compose(space, dst[dst_index[k + 1]][1], x.boundary(k + 1)).mat
                key = (dst_index[k + 1], col)
                parts[key] = block.scale(sign) if key not in parts else parts[key] + block.scale(sign)
        mats.append(
            ExactMatrix.blocks(
                ring, [s.module.gens for _, s in dst], [s.module.gens for _, s in src], parts
            )
        )
    complex_ = ChainComplex.build(ring, lo, terms, mats)
    return HomPrimeComplex(x, y, complex_, factors)


def hom_prime(x: ChainComplex, y: ChainComplex) -> ChainComplex:
    return hom_prime_complex(x, y).complex


@dataclass(frozen=True)
class BarHomComplex:
    """bar-Hom(X, Y)_n = Z_n(Hom′(X, Y)) with boundary f ↦ ∂^Y ∘ f."""

    prime: HomPrimeComplex
    cycles: Dict[int, Subquotient]
    complex: ChainComplex

    def coordinates(self, f: DegreeMap) -> Tuple[int, ...]:
        return self.cycles[f.degree].coordinates(self.prime.coordinates(f))

    def degree_map(self, n: int, coords: Sequence[int]) -> DegreeMap:
        ambient = self.cycles[n].generators.apply(list(coords))
        return self.prime.degree_map(n, ambient)

    def chain_maps(self) -> List[ChainMap]:
        """Chain maps X → Y for the generators of the degree-0 term."""
        gens = self.cycles[0].module.gens if 0 in self.cycles else 0
        result = []
        for i in range(gens):
            coords = [1 if j == i else 0 for j in range(gens)]
            result.append(self.degree_map(0, coords).to_chain_map())
        return result


def bar_hom_complex(x: ChainComplex, y: ChainComplex) -> BarHomComplex:
    prime = hom_prime_complex(x, y)
    hp = prime.complex
    ring = hp.ring
    cycles = {n: kernel(hp.boundary(n)) for n in hp.degrees()}
    mats = []
    for n in range(hp.lo + 1, hp.hi + 1):
        moved = prime.post_composition(n).mat @ cycles[n].generators
        columns = [cycles[n - 1].coordinates(moved.column(c)) for c in range(moved.cols)]
        mats.append(ExactMatrix.from_columns(ring, cycles[n - 1].module.gens, columns))
    complex_ = ChainComplex.build(
        ring, hp.lo, [cycles[n].module for n in hp.degrees()], mats
    )
    return BarHomComplex(prime, cycles, complex_)


def bar_hom(x: ChainComplex, y: ChainComplex) -> ChainComplex:
    return bar_hom_complex(x, y).complex


def _complex_exponent(x: ChainComplex) -> int:
    return common_exponent(list(x.terms))


def pontryagin(x: ChainComplex, n: Optional[int] = None) -> ChainComplex:
    """(X⁺)_m = Hom(X_{−m−1}, Z/N) with boundary (−1)^{m−1} Hom(∂^X_{−m}, Z/N)."""
    if n is None:
        n = _complex_exponent(x)
    lo, hi = -x.hi - 1, -x.lo - 1
    spaces = {m: character_hom_space(x.term(-m - 1), n) for m in range(lo, hi + 1)}
    mats = []
    for m in range(lo + 1, hi + 1):
        sign = 1 if (m - 1) % 2 == 0 else -1
        dual = pre_compose(spaces[m], spaces[m - 1], x.boundary(-m))
        mats.append(dual.mat.scale(sign))
    return ChainComplex.build(x.ring, lo, [spaces[m].module for m in range(lo, hi + 1)], mats)


def divisible_disk(x: ChainComplex, n: Optional[int] = None) -> ChainComplex:
    """D⁰(Z/N): the finite stand-in for D⁰(Q/Z) used against x."""
    if n is None:
        n = _complex_exponent(x)
    return disk(0, FPModule.cyclic(x.ring, n))


def pontryagin_comparison(x: ChainComplex, n: Optional[int] = None) -> ChainMap:
    """
    X⁺ → bar-Hom(X, D⁰(Z/N)) sending g ∈ (X⁺)_m to the cycle f with
    f_{−m−1} = (−1)^m g and f_{−m} = g ∘ ∂^X_{−m}.
    """
    if n is None:
        n = _complex_exponent(x)
    plus = pontryagin(x, n)
    target = divisible_disk(x, n)
    bar = bar_hom_complex(x, target)
    components = []
    for m in plus.degrees():
        space = character_hom_space(x.term(-m - 1), n)
        sign = 1 if m % 2 == 0 else -1
        columns = []
        for g in space.basis:
            parts = {}
            parts[-m - 1] = g.scale(sign)
            parts[-m] = g @ x.boundary(-m)
            comps = tuple(
                parts.get(k) if k in parts and x.lo <= k <= x.hi
                else ModuleHom.zero(x.term(k), target.term(k + m))
                for k in x.degrees()
            )
            f = DegreeMap(x, target, m, comps)
            columns.append(bar.coordinates(f))
        dst = bar.complex.term(m)
        components.append(
            ModuleHom(plus.term(m), dst, ExactMatrix.from_columns(x.ring, dst.gens, columns))
        )
    # degrees where bar-Hom is nonzero but X⁺ is not are covered by ChainMap's zero components
    return ChainMap(plus, bar.complex, tuple(components))


def tensor_map_matrix(f: ChainMap, y: ChainComplex, n: int) -> ExactMatrix:
    """(f ⊗ 1_Y)_n between the degree-n terms of src ⊗ Y and dst ⊗ Y."""
    ring = _check_rings(f.src, y)
    src_keys = _tensor_summands(f.src, y, n)
    dst_keys = _tensor_summands(f.dst, y, n)
    parts = {}
    for col, k in enumerate(src_keys):
        if k in dst_keys:
            identity_y = ExactMatrix.identity(ring, y.term(n - k).gens)
            parts[(dst_keys.index(k), col)] = f.component(k).mat.kron(identity_y)
    return ExactMatrix.blocks(
        ring,
        [f.dst.term(k).gens * y.term(n - k).gens for k in dst_keys],
        [f.src.term(k).gens * y.term(n - k).gens for k in src_keys],
        parts,
    )


def bar_tensor_map(
    f: ChainMap, y: ChainComplex, source: ChainComplex, target: ChainComplex
) -> Dict[int, ModuleHom]:
    """f ⊗̄ 1_Y degreewise, given source = f.src ⊗̄ Y and target = f.dst ⊗̄ Y."""
    return {
        n: ModuleHom(source.term(n), target.term(n), tensor_map_matrix(f, y, n))
        for n in source.degrees()
    }


def chain_isomorphism(x: ChainComplex, y: ChainComplex, limit: int = 4096) -> Optional[ChainMap]:
    """
    A chain isomorphism x → y found among combinations of the chain maps that
    generate bar-Hom(x, y)_0, or None. Over Z only coefficients in {0, ±1, ±2} are
    tried; at most `limit` combinations are tested.
    """
    bar = bar_hom_complex(x, y)
    gens = bar.cycles[0].module.gens if 0 in bar.cycles else 0
    if not gens:
        zero = ChainMap.zero(x, y)
        return zero if zero.is_isomorphism() else None
    ring = x.ring
    coefficients = (1, 0, -1, 2, -2) if ring.is_integers else tuple(range(1, ring.modulus)) + (0,)
    for coords in itertools.islice(itertools.product(coefficients, repeat=gens), limit):
        f = bar.degree_map(0, [ring.reduce(c) for c in coords]).to_chain_map()
        if f.is_isomorphism():
            return f
    logger.debug("No chain isomorphism among %d combinations", limit)
    return None
