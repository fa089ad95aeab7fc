"""
Approximation witnesses for the complete cotorsion pairs of the Gorenstein model
structures: a special cover 0 → B → A → X → 0 or a special envelope
0 → X → B′ → A′ → 0, each term carrying a re-checkable class certificate.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Tuple

from core.gorenstein.contexts import GorensteinContext, GorensteinContextFactory
from core.linear.exact_linear import ExactMatrix
from core.modules.fp_module import (
    FPModule,
    ModuleHom,
    ShortExactSequence,
    direct_sum,
    kernel,
)
from core.modules.resolutions import free_resolution, projective_cover
from shared.errors import InvariantViolationError, NotComputableError, UnsupportedRingError
from shared.logging_mixin import LoggingMixin


class ApproximationPair(str, Enum):
    GP_W = "GP_W"
    W_GI = "W_GI"
    PR_PERP = "Pr_perp"
    GFR_PERP = "GFr_perp"


class ClassName(str, Enum):
    GP_R = "GP_r"
    GI_R = "GI_r"
    GF_R = "GF_r"
    P_R = "P_r"
    W = "W"
    P_R_PERP = "P_r^⊥"
    GF_R_PERP = "GF_r^⊥"


_DECIDERS: Dict[ClassName, Callable[[GorensteinContext, FPModule, int], bool]] = {
    ClassName.GP_R: lambda c, m, r: c.gp_r_member(m, r),
    ClassName.GI_R: lambda c, m, r: c.gi_r_member(m, r),
    ClassName.GF_R: lambda c, m, r: c.gf_r_member(m, r),
    ClassName.P_R: lambda c, m, r: c.p_r_member(m, r),
    ClassName.W: lambda c, m, r: c.is_w_member(m),
    ClassName.P_R_PERP: lambda c, m, r: c.p_r_perp_member(m, r),
    ClassName.GF_R_PERP: lambda c, m, r: c.gf_r_perp_member(m, r),
}

# (left class, right class) of each pair
_PAIR_CLASSES: Dict[ApproximationPair, Tuple[ClassName, ClassName]] = {
    ApproximationPair.GP_W: (ClassName.GP_R, ClassName.W),
    ApproximationPair.W_GI: (ClassName.W, ClassName.GI_R),
    ApproximationPair.PR_PERP: (ClassName.P_R, ClassName.P_R_PERP),
    ApproximationPair.GFR_PERP: (ClassName.GF_R, ClassName.GF_R_PERP),
}


@dataclass(frozen=True)
class ClassCertificate:
    position: str
    module: FPModule
    claim: ClassName
    holds: bool


def decide_membership(module: FPModule, claim: ClassName, r: int) -> bool:
    context = GorensteinContextFactory.for_ring(module.ring)
    return _DECIDERS[claim](context, module, r)


@dataclass(frozen=True)
class ApproximationWitness:
    """
    covering: 0 → B → A → X → 0 with A in the left class, B in the right class.
    otherwise: 0 → X → B′ → A′ → 0 with B′ in the right class, A′ in the left class.
    """

    pair: ApproximationPair
    subject: FPModule
    r: int
    covering: bool
    sequence: ShortExactSequence
    certificates: Tuple[ClassCertificate, ...]

    def verify(self) -> bool:
        """Rebuilds the sequence and re-decides every certificate from scratch."""
        try:
            ShortExactSequence(self.sequence.f, self.sequence.g)
        except InvariantViolationError:
            return False
        end = self.sequence.quotient if self.covering else self.sequence.sub
        if end != self.subject:
            return False
        return all(
            c.holds and decide_membership(c.module, c.claim, self.r) for c in self.certificates
        )

    def render(self) -> str:
        s = self.sequence
        arrow = f"0 → {s.sub} → {s.middle} → {s.quotient} → 0"
        claims = ", ".join(f"{c.position} ∈ {c.claim.value}" for c in self.certificates)
        return f"{self.pair.value} (r = {self.r}): {arrow}  [{claims}]"


def _trivial_cover(x: FPModule) -> ShortExactSequence:
    zero = FPModule.zero(x.ring)
    return ShortExactSequence(ModuleHom.zero(zero, x), ModuleHom.identity(x))


def _free_presentation(x: FPModule) -> ShortExactSequence:
    augmentation = free_resolution(x, 0).maps[0]
    return ShortExactSequence(kernel(augmentation).inclusion, augmentation)


def _projective_cover_sequence(x: FPModule) -> ShortExactSequence:
    cover = projective_cover(x)
    return ShortExactSequence(kernel(cover).inclusion, cover)


def _free_summand_envelope(x: FPModule) -> ShortExactSequence:
    """0 → X → X ⊕ R → R → 0"""
    ring = x.ring
    free = FPModule.free(ring, 1)
    middle = direct_sum([x, free], ring)
    embed = ExactMatrix.identity(ring, x.gens).vstack(ExactMatrix.zeros(ring, 1, x.gens))
    project = ExactMatrix.zeros(ring, 1, x.gens).hstack(ExactMatrix.identity(ring, 1))
    return ShortExactSequence(ModuleHom(x, middle, embed), ModuleHom(middle, free, project))


class WitnessBuilder(LoggingMixin):
    """Builds the approximation sequence for a (pair, ring, r) combination."""

    def __init__(self, pair: ApproximationPair, r: int = 0):
        self.pair = pair
        self.r = r

    def build(self, x: FPModule) -> ApproximationWitness:
        integers = x.ring.is_integers
        if self.pair is ApproximationPair.GP_W:
            covering, sequence = True, (_free_presentation(x) if integers else _trivial_cover(x))
        elif self.pair is ApproximationPair.W_GI:
            if integers:
                self.logger.warning("GI approximations refused over %s", x.ring)
                raise UnsupportedRingError("GI cotorsion pairs are not available over Z")
            covering, sequence = False, _free_summand_envelope(x)
        elif self.pair is ApproximationPair.PR_PERP:
            covering = True
            if not integers:
                sequence = _projective_cover_sequence(x)
            elif self.r == 0:
                sequence = _free_presentation(x)
            else:
                sequence = _trivial_cover(x)
        else:
            if integers and self.r == 0:
                raise NotComputableError("(GF_0, GF_0^⊥) approximations over Z are not computable")
            covering, sequence = True, _trivial_cover(x)
        witness = ApproximationWitness(
            self.pair, x, self.r, covering, sequence, self._certify(sequence, covering)
        )
        if not witness.verify():
            raise InvariantViolationError(f"{self.pair.value} witness for {x} failed to verify")
        self.logger.info("Built %s witness for %s", self.pair.value, x)
        return witness

    def _certify(
        self, sequence: ShortExactSequence, covering: bool
    ) -> Tuple[ClassCertificate, ...]:
        left, right = _PAIR_CLASSES[self.pair]
        if covering:
            placed = [("B", sequence.sub, right), ("A", sequence.middle, left)]
        else:
            placed = [("B′", sequence.middle, right), ("A′", sequence.quotient, left)]
        return tuple(
            ClassCertificate(position, module, claim, decide_membership(module, claim, self.r))
            for position, module, claim in placed
        )


def approximation_witness(
    pair: ApproximationPair, x: FPModule, r: int = 0
) -> ApproximationWitness:
    return WitnessBuilder(pair, r).build(x)
