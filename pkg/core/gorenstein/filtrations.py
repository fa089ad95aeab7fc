"""
Finite S-filtrations 0 = M_0 ⊆ M_1 ⊆ ... ⊆ M_l = M of finite modules, and a finite
Eklof check for bar-extensions of complexes.
"""

import itertools
from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from core.complexes.chain_complex import ChainComplex, ChainMap, sphere
from core.complexes.complex_derived import BarOrthogonality, bar_ext_orthogonal
from core.linear.exact_linear import ExactMatrix, solve
from core.modules.fp_module import (
    CanonicalForm,
    FPModule,
    ModuleHom,
    lcm,
    subquotient,
)
from core.modules.purity import InclusionWitness
from resources.config import get_settings
from shared.errors import FiltrationError, OracleBoundError, PreconditionError
from shared.logging_mixin import LoggingMixin


@dataclass(frozen=True)
class FiltrationFamily:
    """The set S: either every cyclic module or an explicit list, compared by canonical form."""

    cyclic: bool
    members: Tuple[FPModule, ...] = ()

    @classmethod
    def cyclics(cls) -> "FiltrationFamily":
        return cls(True)

    @classmethod
    def of(cls, members: Sequence[FPModule]) -> "FiltrationFamily":
        return cls(False, tuple(members))

    @property
    def forms(self) -> Tuple[CanonicalForm, ...]:
        return tuple(m.canonical for m in self.members)

    def contains(self, m: FPModule) -> bool:
        if self.cyclic:
            return m.canonical.generator_count <= 1
        return m.canonical in self.forms

    def describe(self) -> str:
        if self.cyclic:
            return "cyclic modules"
        return "{" + ", ".join(str(f) for f in self.forms) + "}"


@dataclass(frozen=True)
class FiltrationChain:
    """stages[i] is M_i ↪ M; quotients[i] is M_{i+1}/M_i."""

    module: FPModule
    stages: Tuple[InclusionWitness, ...]
    quotients: Tuple[FPModule, ...]

    @property
    def length(self) -> int:
        return len(self.quotients)

    def render(self) -> str:
        pieces = " ⊆ ".join(str(s.sub) for s in self.stages)
        factors = ", ".join(str(q) for q in self.quotients) or "none"
        return f"{pieces}  (quotients: {factors})"


def _element_order(vector: Sequence[int], factors: Sequence[int]) -> int:
    return reduce(lcm, (d // gcd(d, v) for v, d in zip(vector, factors)), 1)


class FiltrationBuilder(LoggingMixin):
    """
    Peels cyclic submodules generated by the lexicographically least element of
    maximal admissible order in the current quotient.
    """

    def __init__(self, family: FiltrationFamily, bound: Optional[int] = None):
        self.family = family
        self.bound = bound if bound is not None else get_settings().enumeration_bound

    def build(self, m: FPModule) -> FiltrationChain:
        if not m.canonical.is_finite:
            raise PreconditionError(f"Filtrations are built for finite modules, got {m}")
        ring = m.ring
        chosen = ExactMatrix.zeros(ring, m.gens, 0)
        stages = [self._stage(m, chosen)]
        quotients: List[FPModule] = []
        while True:
            raw = FPModule(ring, m.gens, m.rels.hstack(chosen))
            simp = raw.simplification
            if simp.target.is_zero():
                break
            vector, order = self._pick(simp.factors)
            lifted = simp.from_target.apply(list(vector))
            chosen = chosen.hstack(ExactMatrix.column_vector(ring, lifted))
            quotients.append(FPModule.cyclic(ring, order))
            stages.append(self._stage(m, chosen))
        chain = FiltrationChain(m, tuple(stages), tuple(quotients))
        self.logger.info("Filtered %s in %d steps", m, chain.length)
        return chain

    def _stage(self, m: FPModule, chosen: ExactMatrix) -> InclusionWitness:
        sub = subquotient(m, chosen)
        return InclusionWitness.of(sub.inclusion)

    def _pick(self, factors: Tuple[int, ...]) -> Tuple[Tuple[int, ...], int]:
        size = reduce(lambda a, b: a * b, factors, 1)
        if size > self.bound:
            raise OracleBoundError(
                f"Quotient of size {size} exceeds the enumeration bound {self.bound}"
            )
        best: Optional[Tuple[Tuple[int, ...], int]] = None
        for vector in itertools.product(*(range(d) for d in factors)):
            order = _element_order(vector, factors)
            if order == 1 or not self._admits(order):
                continue
            if best is None or order > best[1]:
                best = (vector, order)
        if best is None:
            raise FiltrationError(
                f"No element of the quotient {CanonicalForm(factors)} generates a "
                f"member of {self.family.describe()}"
            )
        return best

    def _admits(self, order: int) -> bool:
        if self.family.cyclic:
            return True
        return CanonicalForm((order,)) in self.family.forms


def build_filtration(
    m: FPModule, family: FiltrationFamily, bound: Optional[int] = None
) -> FiltrationChain:
    return FiltrationBuilder(family, bound).build(m)


def _contained(lower: ModuleHom, upper: ModuleHom) -> bool:
    """im(lower) ⊆ im(upper) inside the common ambient module."""
    if lower.mat.cols == 0:
        return True
    system = upper.mat.lift().hstack(upper.dst.relations_z)
    return solve(system, lower.mat.lift()) is not None


def verify_filtration(chain: FiltrationChain, family: FiltrationFamily) -> bool:
    """Re-checks the chain conditions and every quotient from the raw stage data."""
    logger = FiltrationBuilder.class_logger()
    stages = chain.stages
    if not stages or not stages[0].sub.is_zero():
        logger.info("Filtration does not start at 0")
        return False
    if not stages[-1].incl.is_surjective() or stages[-1].ambient != chain.module:
        logger.info("Filtration does not end at the module")
        return False
    if len(stages) != len(chain.quotients) + 1:
        return False
    for i in range(1, len(stages)):
        lower, upper = stages[i - 1], stages[i]
        if upper.ambient != chain.module or not _contained(lower.incl, upper.incl):
            logger.info("Stage %d does not contain stage %d", i, i - 1)
            return False
        quotient = subquotient(chain.module, upper.incl.mat, lower.incl.mat).module
        if quotient.canonical != chain.quotients[i - 1].canonical:
            logger.info("Stored quotient %d disagrees with the stages", i - 1)
            return False
        if not family.contains(quotient):
            logger.info("Quotient %s is not in %s", quotient, family.describe())
            return False
    return True


@dataclass(frozen=True)
class EklofReport:
    """
    Brutal truncations σ_{≤k} X, whose successive quotients are the spheres
    S^k(X_k), tested for bar-orthogonality against y.
    """

    stages: Tuple[ChainMap, ...]
    quotients: Dict[int, BarOrthogonality] = field(repr=False)
    top: BarOrthogonality = field(repr=False)

    @property
    def quotients_orthogonal(self) -> bool:
        return all(q.vanishes for q in self.quotients.values())

    @property
    def holds(self) -> bool:
        """When every quotient is bar-orthogonal to y, so is the top object."""
        return not self.quotients_orthogonal or self.top.vanishes

    @property
    def suspension_agrees(self) -> bool:
        return self.top.agrees and all(q.agrees for q in self.quotients.values())


def brutal_truncation(x: ChainComplex, k: int) -> ChainMap:
    """σ_{≤k} X ↪ X"""
    terms = [x.term(n) for n in range(x.lo, k + 1)]
    mats = [x.boundary(n).mat for n in range(x.lo + 1, k + 1)]
    truncated = ChainComplex.build(x.ring, x.lo, terms, mats)
    return ChainMap(truncated, x, tuple(ModuleHom.identity(t) for t in terms))


def eklof_check(x: ChainComplex, y: ChainComplex) -> EklofReport:
    stages = tuple(brutal_truncation(x, k) for k in x.degrees())
    quotients = {k: bar_ext_orthogonal(sphere(k, x.term(k)), y) for k in x.degrees()}
    report = EklofReport(stages, quotients, bar_ext_orthogonal(x, y))
    FiltrationBuilder.class_logger().info(
        "Eklof check on %s: quotients orthogonal=%s, top orthogonal=%s",
        x.describe(),
        report.quotients_orthogonal,
        report.top.vanishes,
    )
    return report
