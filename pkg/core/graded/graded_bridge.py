"""
Graded modules over A = R[x]/(x²) and the isomorphism of A-Mod with Ch(R-Mod).

A graded A-module is stored as the complex Φ(M): the degree-n piece is M_n and
multiplication by x, which lowers the degree by one, is the boundary. Ψ reads a
complex back as an A-module. Both directions are the identity on the data.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple

from sympy import primefactors

from core.complexes.chain_complex import (
    ChainComplex,
    ChainMap,
    disk,
    homology,
    is_exact,
    null_homotopy,
    suspension,
)
from core.complexes.complex_derived import bar_tor, ext_ch
from core.complexes.functors import bar_hom_complex, bar_tensor
from core.gorenstein.classify import classify
from core.gorenstein.cogeneration import CogenerationKind, cogenerating_set
from core.gorenstein.contexts import GorensteinContextFactory
from core.linear.exact_linear import ExactMatrix, RingDesc
from core.modules.dimensions import flat_dimension, injective_dimension
from core.modules.fp_module import FPModule, ModuleHom, image, kernel
from shared.errors import (
    OracleBoundError,
    PreconditionError,
    RingMismatchError,
    UnsupportedRingError,
)
from shared.logging_mixin import LoggingMixin

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GradedAModule:
    base: RingDesc
    carrier: ChainComplex

    def __post_init__(self):
        if self.carrier.ring != self.base:
            raise RingMismatchError(
                f"Carrier over {self.carrier.ring} for A = {self.base}[x]/(x²)"
            )

    def piece(self, n: int) -> FPModule:
        return self.carrier.term(n)

    def x_action(self, n: int) -> ModuleHom:
        """x · − : M_n → M_{n−1}"""
        return self.carrier.boundary(n)

    def describe(self) -> str:
        return f"A-module over {self.base}: {self.carrier.describe()}"


def phi(m: GradedAModule) -> ChainComplex:
    return m.carrier


def psi(x: ChainComplex) -> GradedAModule:
    return GradedAModule(x.ring, x)


def free_a_module(base: RingDesc, rank: int, degree: int = 0) -> GradedAModule:
    """A^rank with its generators in the given degree, i.e. Ψ(D^degree(R^rank))."""
    return psi(disk(degree, FPModule.free(base, rank)))


def unit_module(base: RingDesc) -> GradedAModule:
    return free_a_module(base, 1, 0)


@dataclass(frozen=True)
class GradedAHom:
    """A degree-preserving A-linear map; commuting with x is commuting with ∂."""

    src: GradedAModule
    dst: GradedAModule
    components: Tuple[ModuleHom, ...]

    def __post_init__(self):
        # ChainMap re-checks x-linearity degree by degree
        self.to_chain_map()

    @classmethod
    def from_chain_map(cls, f: ChainMap) -> "GradedAHom":
        return cls(psi(f.src), psi(f.dst), f.components)

    def to_chain_map(self) -> ChainMap:
        return ChainMap(self.src.carrier, self.dst.carrier, self.components)


def _check_bases(m: GradedAModule, n: GradedAModule) -> None:
    if m.base != n.base:
        raise RingMismatchError(f"A-modules over {m.base} and {n.base}")


def a_tensor(m: GradedAModule, n: GradedAModule) -> GradedAModule:
    """M ⊗_A N = Ψ(Φ(M) ⊗̄ Φ(N))"""
    _check_bases(m, n)
    return psi(bar_tensor(phi(m), phi(n)))


def ext_a(i: int, m: GradedAModule, n: GradedAModule) -> FPModule:
    _check_bases(m, n)
    return ext_ch(i, phi(m), phi(n))


def tor_a(i: int, m: GradedAModule, n: GradedAModule) -> ChainComplex:
    _check_bases(m, n)
    return bar_tor(i, phi(m), phi(n))


def a_homs(m: GradedAModule, n: GradedAModule) -> List[GradedAHom]:
    """Generators of Hom_A(M, N), read off the degree-0 bar-Hom term."""
    _check_bases(m, n)
    return [GradedAHom.from_chain_map(f) for f in bar_hom_complex(phi(m), phi(n)).chain_maps()]


class DGKind(str, Enum):
    DG_PROJECTIVE = "dg_projective_r"
    DG_INJECTIVE = "dg_injective_r"
    DG_FLAT = "dg_flat_r"


@dataclass(frozen=True)
class DGClassCertificate:
    """
    Sufficient-condition decision: bounded plus degreewise membership, backed by
    null-homotopy checks of maps against sampled exact complexes. A sample whose
    maps are not all null-homotopic refutes membership; acceptance does not decide
    the converse.
    """

    kind: DGKind
    r: int
    degreewise: bool
    sampled_maps: int
    null_homotopic: int
    refuted_by: Tuple[str, ...] = ()
    sufficient_only: bool = True

    @property
    def accepted(self) -> bool:
        return self.degreewise and not self.refuted_by and self.null_homotopic == self.sampled_maps


def _degreewise_dimensions(x: ChainComplex, kind: DGKind):
    if kind is DGKind.DG_PROJECTIVE:
        context = GorensteinContextFactory.for_ring(x.ring)
        return [context.pd(t) for t in x.terms]
    if kind is DGKind.DG_FLAT:
        return [flat_dimension(t) for t in x.terms]
    return [injective_dimension(t) for t in x.terms]


def _test_modules(ring: RingDesc) -> List[FPModule]:
    if ring.is_integers:
        return [FPModule.free(ring, 1), FPModule.cyclic(ring, 2)]
    return [FPModule.free(ring, 1), FPModule.cyclic(ring, int(primefactors(ring.modulus)[0]))]


def presentation_complex(c: FPModule) -> Optional[ChainComplex]:
    """
    0 → K → F → c → 0 in degrees 2..0 with F free on the generators of c. Exact;
    None when K = 0, where the complex is split and adds nothing to the disks.
    """
    ring = c.ring
    free = FPModule.free(ring, c.gens)
    cover = ModuleHom(free, c, ExactMatrix.identity(ring, c.gens))
    syz = kernel(cover)
    if syz.module.is_zero():
        return None
    return ChainComplex.build(ring, 0, [c, free, syz.module], [cover.mat, syz.inclusion.mat])


class DGClassTester(LoggingMixin):
    def __init__(self, kind: DGKind, r: int):
        self.kind = kind
        self.r = r

    def test(self, x: ChainComplex) -> DGClassCertificate:
        if self.kind is DGKind.DG_INJECTIVE and x.ring.is_integers:
            self.logger.warning("dg-injective test refused over %s", x.ring)
            raise UnsupportedRingError("Injective dimension over Z is not decidable here")
        degreewise = all(d <= self.r for d in _degreewise_dimensions(x, self.kind))
        sampled, null, refuted = 0, 0, []
        for test in self._samples(x):
            if self.kind is DGKind.DG_INJECTIVE:
                maps = bar_hom_complex(test, x).chain_maps()
            else:
                maps = bar_hom_complex(x, test).chain_maps()
            homotopic = [null_homotopy(f) is not None for f in maps]
            sampled += len(homotopic)
            null += sum(homotopic)
            if not all(homotopic):
                refuted.append(test.describe())
        certificate = DGClassCertificate(self.kind, self.r, degreewise, sampled, null, tuple(refuted))
        self.logger.info(
            "%s test on %s: accepted=%s (%d/%d sampled maps null-homotopic)",
            self.kind.value,
            x.describe(),
            certificate.accepted,
            null,
            sampled,
        )
        return certificate

    def _modules(self, ring: RingDesc) -> List[FPModule]:
        """Small modules plus the nonzero members of the syzygy cogenerating set, one per form."""
        modules = {m.canonical: m for m in _test_modules(ring)}
        for member in cogenerating_set(CogenerationKind.T_SYZYGY, ring, self.r).members:
            if isinstance(member, FPModule) and not member.is_zero():
                modules.setdefault(member.canonical, member)
        return list(modules.values())

    def _orthogonal(self, c: FPModule) -> bool:
        # cycles of the samples must lie in P_r^⊥; over Z/m every module lies in ⊥I_r
        if self.kind is DGKind.DG_INJECTIVE:
            return True
        return GorensteinContextFactory.for_ring(c.ring).p_r_perp_member(c, self.r)

    def _samples(self, x: ChainComplex) -> List[ChainComplex]:
        """
        Exact complexes with cycles in the orthogonal class: disks, which are
        contractible and only fix the count, and shifted presentation complexes,
        which are not and can refute.
        """
        modules = [c for c in self._modules(x.ring) if self._orthogonal(c)]
        samples = [disk(k, c) for c in modules for k in range(x.lo, x.hi + 2)]
        for c in modules:
            e = presentation_complex(c)
            if e is None or not self._orthogonal(e.term(2)):
                continue
            samples += [suspension(k, e) for k in range(x.lo - 2, x.hi + 1)]
        return samples


def dg_class_test(x: ChainComplex, kind: DGKind, r: int = 0) -> DGClassCertificate:
    return DGClassTester(kind, r).test(x)


@dataclass(frozen=True)
class ExactWReport:
    exact: bool
    w_member: bool

    @property
    def agrees(self) -> bool:
        return self.exact == self.w_member


def exact_w_correspondence(x: ChainComplex) -> ExactWReport:
    """x exact ⟺ Ψ(x) ∈ W, with W decided on the A-side report."""
    report = classify(phi(psi(x)))
    return ExactWReport(is_exact(x), report.w_member)


@dataclass(frozen=True)
class CorrespondenceReport:
    base_note: str
    dg_projective: DGClassCertificate
    a_gorenstein_projective: bool
    exactness: ExactWReport
    contradictions: Tuple[str, ...]
    trail: Tuple[str, ...]

    @property
    def consistent(self) -> bool:
        return not self.contradictions


def correspondence_harness(x: ChainComplex, r: int = 0) -> CorrespondenceReport:
    if not x.ring.is_integers:
        raise UnsupportedRingError(
            "The dg-to-Gorenstein correspondence is checked over Z, a Noetherian ring of "
            "finite global dimension"
        )
    certificate = dg_class_test(x, DGKind.DG_PROJECTIVE, r)
    a_side = classify(phi(psi(x)))
    a_gp = a_side.gpd is not None and a_side.gpd <= r
    exactness = exact_w_correspondence(x)
    contradictions = []
    if certificate.accepted and not a_gp:
        contradictions.append("dg-r-projective complex whose A-module is not Gorenstein-r-projective")
    if not exactness.agrees:
        contradictions.append("exactness and W-membership of the A-module disagree")
    trail = (
        f"dg test: degreewise={certificate.degreewise}, "
        f"{certificate.null_homotopic}/{certificate.sampled_maps} sampled maps null-homotopic",
        f"A-side: Gpd = {a_side.gpd}, pd = {a_side.pd}, W = {a_side.w_member}",
        f"exact = {exactness.exact}",
    )
    report = CorrespondenceReport(
        base_note="base ring Z: Noetherian of global dimension 1",
        dg_projective=certificate,
        a_gorenstein_projective=a_gp,
        exactness=exactness,
        contradictions=tuple(contradictions),
        trail=trail,
    )
    logger.info("Correspondence on %s: consistent=%s", x.describe(), report.consistent)
    return report


def _shadow(x: ChainComplex) -> Tuple:
    """Degreewise forms of terms, boundary images and homology."""
    return tuple(
        (
            n,
            x.term(n).canonical,
            image(x.boundary(n)).module.canonical,
            homology(x, n).module.canonical,
        )
        for n in x.degrees()
        if not x.term(n).is_zero()
    )


@dataclass(frozen=True)
class IsoSequenceReport:
    unit_law: bool
    ext: Dict[int, Optional[bool]]
    tor: Dict[int, Optional[bool]]
    """None where the instance is outside the oracle's bounds."""

    @property
    def holds(self) -> bool:
        values = [self.unit_law] + [v for v in self.ext.values() if v is not None]
        values += [v for v in self.tor.values() if v is not None]
        return all(values)


def iso_sequence_check(
    m: GradedAModule, n: Optional[GradedAModule] = None, degrees: Tuple[int, ...] = (0, 1)
) -> IsoSequenceReport:
    """
    A ⊗_A M ≅ M, and Ext_A / Tor^A through the bridge against the brute-force A-side
    computation of the oracle.
    """
    # the oracle reads A-modules through this module
    from core.oracle.oracle import brute_ext_graded_a, brute_tor1_graded_a

    n = n or m
    unit = a_tensor(unit_module(m.base), m)
    unit_law = _shadow(phi(unit)) == _shadow(phi(m))
    ext_matches: Dict[int, Optional[bool]] = {}
    tor_matches: Dict[int, Optional[bool]] = {}
    for i in degrees:
        try:
            expected = brute_ext_graded_a(i, m, n)
            ext_matches[i] = ext_a(i, m, n).canonical.cardinality == expected
        except (OracleBoundError, PreconditionError):
            ext_matches[i] = None
        if i != 1:
            continue
        try:
            orders = brute_tor1_graded_a(m, n)
            computed = tor_a(1, m, n)
            tor_matches[i] = all(
                computed.term(k).canonical.cardinality == order for k, order in orders.items()
            )
        except (OracleBoundError, PreconditionError):
            tor_matches[i] = None
    return IsoSequenceReport(unit_law, ext_matches, tor_matches)
