"""
Seeded sample populations for the suites: small finite modules, bounded
complexes with ∂² = 0 by construction, and inclusions over Z.
"""

import itertools
import random
from typing import List, Sequence, Tuple

from sympy import divisors

from core.complexes.chain_complex import ChainComplex, direct_sum_complexes, disk, sphere
from core.linear.exact_linear import ExactMatrix, RingDesc
from core.modules.fp_module import FPModule, subquotient
from core.modules.purity import InclusionWitness


def finite_forms(ring: RingDesc, max_size: int) -> List[Tuple[int, ...]]:
    """Every factor list d1 | d2 | ... of proper divisors of m with product ≤ max_size."""
    choices = [d for d in divisors(ring.modulus) if d > 1]
    forms: List[Tuple[int, ...]] = [()]
    frontier: List[Tuple[int, ...]] = [()]
    while frontier:
        grown = []
        for form in frontier:
            for d in choices:
                if form and d % form[-1]:
                    continue
                candidate = form + (d,)
                size = 1
                for f in candidate:
                    size *= f
                if size <= max_size:
                    grown.append(candidate)
        forms += grown
        frontier = grown
    return forms


def finite_modules(ring: RingDesc, max_size: int) -> List[FPModule]:
    return [FPModule.from_factors(ring, list(form)) for form in finite_forms(ring, max_size)]


def random_module(rng: random.Random, ring: RingDesc, max_factors: int = 2) -> FPModule:
    if ring.is_integers:
        pool = [2, 3, 4, 6]
    else:
        pool = [d for d in divisors(ring.modulus) if d > 1]
    factors = [rng.choice(pool) for _ in range(rng.randint(1, max_factors))]
    return FPModule.from_factors(ring, factors)


def _multiplication_chain(ring: RingDesc, lo: int, scalars: Sequence[int]) -> ChainComplex:
    """R → R → ... with the given consecutive scalars; adjacent products must vanish."""
    terms = [FPModule.free(ring, 1)] * (len(scalars) + 1)
    mats = [ExactMatrix.from_rows(ring, [[s]]) for s in scalars]
    return ChainComplex.build(ring, lo, terms, mats)


def _chains(ring: RingDesc) -> List[List[int]]:
    if ring.is_integers:
        return [[2], [3]]
    m = ring.modulus
    pairs = [
        [a, b]
        for a, b in itertools.product(divisors(m), repeat=2)
        if 1 < a < m and 1 < b < m and (a * b) % m == 0
    ]
    return pairs + [[d] for d in divisors(m) if 1 < d < m]


def random_complex(rng: random.Random, ring: RingDesc, max_parts: int = 2) -> ChainComplex:
    """
    A direct sum of spheres, disks and multiplication chains on cyclic modules,
    kept inside degrees -1..2.
    """
    parts = []
    for _ in range(rng.randint(1, max_parts)):
        kind = rng.choice(("sphere", "disk", "chain"))
        if kind == "chain":
            scalars = rng.choice(_chains(ring))
            parts.append(_multiplication_chain(ring, rng.randint(-1, 2 - len(scalars)), scalars))
            continue
        c = random_module(rng, ring, 1)
        if kind == "sphere":
            parts.append(sphere(rng.randint(-1, 2), c))
        else:
            parts.append(disk(rng.randint(0, 2), c))
    return direct_sum_complexes(parts, ring)


def free_integer_complexes(rng: random.Random, count: int) -> List[ChainComplex]:
    """Bounded complexes of f.g. free Z-modules."""
    ring = RingDesc.integers()
    found = []
    for _ in range(count):
        a, b = rng.randint(1, 2), rng.randint(1, 2)
        mat = [[rng.randint(-3, 3) for _ in range(a)] for _ in range(b)]
        two_term = ChainComplex.build(
            ring,
            rng.randint(-1, 1),
            [FPModule.free(ring, b), FPModule.free(ring, a)],
            [ExactMatrix.from_rows(ring, mat, a)],
        )
        found.append(two_term)
    return found


def exact_integer_complexes(rng: random.Random, count: int) -> List[ChainComplex]:
    ring = RingDesc.integers()
    z = FPModule.free(ring, 1)
    short = ChainComplex.build(
        ring,
        0,
        [z, FPModule.free(ring, 2), z],
        [ExactMatrix.from_rows(ring, [[1, -1]]), ExactMatrix.from_rows(ring, [[1], [1]])],
    )
    found = []
    for _ in range(count):
        parts = [disk(rng.randint(-1, 2), FPModule.free(ring, rng.randint(1, 2)))]
        if rng.random() < 0.5:
            parts.append(short)
        found.append(direct_sum_complexes(parts, ring))
    return found


def non_exact_integer_complexes(rng: random.Random, count: int) -> List[ChainComplex]:
    ring = RingDesc.integers()
    found = []
    for _ in range(count):
        k = rng.randint(-1, 2)
        if rng.random() < 0.5:
            found.append(sphere(k, FPModule.free(ring, rng.randint(1, 2))))
        else:
            d = rng.choice((2, 3, 4))
            found.append(_multiplication_chain(ring, k, [d]))
    return found


def random_integer_inclusion(rng: random.Random, exponent: int = 24) -> InclusionWitness:
    """A cyclic submodule of a finitely generated abelian group with torsion exponent dividing `exponent`."""
    ring = RingDesc.integers()
    pool = [d for d in divisors(exponent) if d > 1]
    factors = [rng.choice(pool) for _ in range(rng.randint(1, 2))]
    ambient = FPModule.from_factors(ring, factors, rng.randint(0, 1))
    vector = [rng.randint(0, 4) for _ in range(ambient.gens)]
    if not any(vector):
        vector[-1] = 1
    sub = subquotient(ambient, ExactMatrix.column_vector(ring, vector))
    return InclusionWitness.of(sub.inclusion)
