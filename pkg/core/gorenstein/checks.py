"""
Instance-level checks of the structural identities between Gorenstein classes.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from sympy import primefactors

from core.complexes.chain_complex import ChainComplex, disk
from core.complexes.complex_derived import bar_tor
from core.complexes.functors import pontryagin
from core.derived.derived import TorLESReport, tor_les
from core.gorenstein.classify import GorensteinReport, classify, gf_r_member, gi_r_member
from core.gorenstein.contexts import GorensteinContextFactory
from core.modules.dimensions import injective_dimension
from core.modules.fp_module import FPModule, ShortExactSequence
from core.modules.purity import InclusionWitness, is_w_pure, w_test_family
from shared.errors import PreconditionError, UnsupportedRingError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PurityClosureReport:
    """A W-pure submodule S of a Gorenstein-flat E: S and E/S are Gorenstein-flat."""

    sub: GorensteinReport
    quotient: GorensteinReport
    sub_flat: bool
    quotient_flat: bool
    tor_sequences: Dict[str, TorLESReport]
    tor1_quotient_vanishes: bool

    @property
    def holds(self) -> bool:
        exact = all(report.all_exact for report in self.tor_sequences.values())
        return self.sub_flat and self.quotient_flat and exact and self.tor1_quotient_vanishes


def w_purity_closure_check(e: FPModule, w: InclusionWitness) -> PurityClosureReport:
    if w.ambient != e:
        raise PreconditionError("The inclusion does not land in the given module")
    if not gf_r_member(e, 0):
        raise PreconditionError(f"{e} is not Gorenstein-flat")
    if not is_w_pure(w):
        raise PreconditionError("The inclusion is not W-pure")
    ses = ShortExactSequence(w.incl, w.projection)
    sequences = {str(test.canonical): tor_les(test, ses) for test in w_test_family(w)}
    tor1_vanishes = all(
        report.terms["Tor1(W,C)"].is_zero() for report in sequences.values()
    )
    report = PurityClosureReport(
        sub=classify(w.sub),
        quotient=classify(w.quotient),
        sub_flat=gf_r_member(w.sub, 0),
        quotient_flat=gf_r_member(w.quotient, 0),
        tor_sequences=sequences,
        tor1_quotient_vanishes=tor1_vanishes,
    )
    logger.info("Purity closure for %s ⊆ %s: %s", w.sub, e, report.holds)
    return report


@dataclass(frozen=True)
class PerpIntersectionReport:
    """y ∈ (GP_r)^⊥ against y ∈ (P_r)^⊥ ∩ W."""

    gp_perp: bool
    p_perp: bool
    w_member: bool

    @property
    def agrees(self) -> bool:
        return self.gp_perp == (self.p_perp and self.w_member)


def perp_intersection_check(y: FPModule, r: int) -> PerpIntersectionReport:
    context = GorensteinContextFactory.for_ring(y.ring)
    return PerpIntersectionReport(
        gp_perp=context.gp_r_perp_member(y, r),
        p_perp=context.p_r_perp_member(y, r),
        w_member=context.is_w_member(y),
    )


@dataclass(frozen=True)
class GIWReport:
    """x ∈ GI_r ∩ W against id(x) ≤ r."""

    gi_member: bool
    w_member: bool
    i_r_member: bool

    @property
    def agrees(self) -> bool:
        return (self.gi_member and self.w_member) == self.i_r_member


def gi_w_check(x: FPModule, r: int) -> GIWReport:
    if x.ring.is_integers:
        logger.warning("GI_r ∩ W check refused over %s", x.ring)
        raise UnsupportedRingError("Injective dimension over Z is not decidable here")
    return GIWReport(
        gi_member=gi_r_member(x, r),
        w_member=classify(x).w_member,
        i_r_member=injective_dimension(x) <= r,
    )


@dataclass(frozen=True)
class FlatComplexReport:
    """
    Three characterizations of a Gorenstein-r-flat complex; None where a condition
    cannot be decided over the ring.
    """

    degreewise_flat: bool
    bar_tor_vanishes: bool
    tested: Tuple[str, ...]
    dual_degreewise_injective: Optional[bool]

    @property
    def agrees(self) -> bool:
        values = [self.degreewise_flat, self.bar_tor_vanishes]
        if self.dual_degreewise_injective is not None:
            values.append(self.dual_degreewise_injective)
        return len(set(values)) == 1


def _trivial_test_modules(x: ChainComplex) -> List[FPModule]:
    """Finite-pd modules against which the disks are built."""
    ring = x.ring
    if not ring.is_integers:
        return [FPModule.free(ring, 1)]
    exponent = 1
    for t in x.terms:
        exponent *= max(t.canonical.torsion_exponent, 1)
    primes = {2} | set(primefactors(exponent))
    return [FPModule.free(ring, 1)] + [FPModule.cyclic(ring, int(p)) for p in sorted(primes)]


def gf_complex_report(x: ChainComplex, r: int) -> FlatComplexReport:
    degreewise = gf_r_member(x, r)
    tested, vanishes = [], True
    # disks on finite-pd modules are exact with cycles in W
    for w in _trivial_test_modules(x):
        for k in range(x.lo, x.hi + 2):
            tested.append(f"D^{k}({w})")
            if not bar_tor(r + 1, disk(k, w), x).is_zero():
                vanishes = False
    dual: Optional[bool] = None
    if not x.ring.is_integers:
        dual = gi_r_member(pontryagin(x), r)
    report = FlatComplexReport(degreewise, vanishes, tuple(tested), dual)
    logger.info("Gorenstein-flat characterizations of %s agree: %s", x.describe(), report.agrees)
    return report
