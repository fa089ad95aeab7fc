"""
Inclusions and W-purity: N ⊆ M is W-pure when W ⊗ N → W ⊗ M stays injective
for every W in the ring's test family.
"""

import logging
from dataclasses import dataclass
from typing import List

from sympy import divisors

from core.modules.fp_module import (
    FPModule,
    ModuleHom,
    cokernel,
    is_exact_at,
    tensor_homs,
)
from shared.errors import InvariantViolationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InclusionWitness:
    incl: ModuleHom
    projection: ModuleHom

    def __post_init__(self):
        if not self.incl.is_injective():
            raise InvariantViolationError("Inclusion has a nonzero kernel")
        if self.projection.src != self.incl.dst:
            raise InvariantViolationError("Projection does not start at the ambient module")
        if not self.projection.is_surjective() or not is_exact_at(self.incl, self.projection):
            raise InvariantViolationError("Quotient is not the cokernel of the inclusion")

    @classmethod
    def of(cls, incl: ModuleHom) -> "InclusionWitness":
        return cls(incl, cokernel(incl))

    @property
    def sub(self) -> FPModule:
        return self.incl.src

    @property
    def ambient(self) -> FPModule:
        return self.incl.dst

    @property
    def quotient(self) -> FPModule:
        return self.projection.dst


def w_test_family(w: InclusionWitness) -> List[FPModule]:
    """
    Over Z/m the family is {R}. Over Z it is R together with Z/d for every d > 1
    dividing the torsion exponent of the ambient module or of the quotient.
    """
    ring = w.ambient.ring
    family = [FPModule.free(ring, 1)]
    if not ring.is_integers:
        return family
    orders = set()
    for m in (w.ambient, w.quotient):
        orders.update(int(d) for d in divisors(m.canonical.torsion_exponent) if d > 1)
    family.extend(FPModule.cyclic(ring, d) for d in sorted(orders))
    return family


def is_w_pure(w: InclusionWitness) -> bool:
    for test in w_test_family(w):
        tensored = tensor_homs(ModuleHom.identity(test), w.incl)
        if not tensored.is_injective():
            logger.info("Inclusion fails purity against %s", test)
            return False
    return True
