"""Homological dimensions of finitely presented modules, decided from canonical forms."""

import logging
import math
from collections import defaultdict
from typing import Dict, List, Tuple, Union

from sympy import factorint

from core.linear.exact_linear import RingDesc
from core.modules.fp_module import CanonicalForm, FPModule
from shared.errors import UnsupportedRingError

logger = logging.getLogger(__name__)

Dimension = Union[int, float]
INFINITE: Dimension = math.inf


def elementary_divisors(form: CanonicalForm) -> List[Tuple[int, int]]:
    """Prime powers p^a of the torsion part, as (p, a) pairs in ascending order."""
    pairs = []
    for d in form.factors:
        for p, a in factorint(d).items():
            pairs.append((int(p), int(a)))
    return sorted(pairs)


def form_from_elementary(pairs: List[Tuple[int, int]], free_rank: int = 0) -> CanonicalForm:
    """Reassembles invariant factors d1 | d2 | ... from prime-power pairs."""
    by_prime: Dict[int, List[int]] = defaultdict(list)
    for p, a in pairs:
        by_prime[p].append(a)
    length = max((len(v) for v in by_prime.values()), default=0)
    factors = [1] * length
    for p, exponents in by_prime.items():
        exponents.sort()
        offset = length - len(exponents)
        for i, a in enumerate(exponents):
            factors[offset + i] *= p**a
    return CanonicalForm(tuple(d for d in factors if d != 1), free_rank)


def _is_locally_free(form: CanonicalForm, ring: RingDesc) -> bool:
    exponents = {int(p): int(a) for p, a in factorint(ring.modulus).items()}
    return all(exponents.get(p) == a for p, a in elementary_divisors(form))


def projective_dimension(m: FPModule) -> Dimension:
    form = m.canonical
    if m.ring.is_integers:
        return 0 if not form.factors else 1
    return 0 if _is_locally_free(form, m.ring) else INFINITE


def flat_dimension(m: FPModule) -> Dimension:
    # finitely presented flat modules are projective
    return projective_dimension(m)


def injective_dimension(m: FPModule) -> Dimension:
    if m.ring.is_integers:
        logger.warning("Injective dimension refused over %s", m.ring)
        raise UnsupportedRingError(
            "Injective dimension over Z is not decidable on finitely generated data"
        )
    # quasi-Frobenius: injectives and projectives coincide
    return projective_dimension(m)


pd = projective_dimension
fd = flat_dimension


def is_projective(m: FPModule) -> bool:
    return projective_dimension(m) == 0


def is_injective(m: FPModule) -> bool:
    if m.ring.is_integers:
        # the only finitely generated divisible group is 0
        return m.is_zero()
    return is_projective(m)


def is_flat(m: FPModule) -> bool:
    return flat_dimension(m) == 0


def stable_form(m: FPModule) -> CanonicalForm:
    """The canonical form with every projective summand stripped."""
    form = m.canonical
    if m.ring.is_integers:
        return CanonicalForm(form.factors, 0)
    exponents = {int(p): int(a) for p, a in factorint(m.ring.modulus).items()}
    kept = [(p, a) for p, a in elementary_divisors(form) if exponents.get(p) != a]
    return form_from_elementary(kept)


def format_dimension(value: Dimension) -> str:
    return "∞" if value == INFINITE else str(int(value))
