"""
Explicit cogenerating sets for the Gorenstein cotorsion pairs and a sampling
check of their orthogonality.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy import divisors, factorint

from core.complexes.chain_complex import ChainComplex, sphere
from core.complexes.complex_derived import disk_cover, ext_ch, kernel_complex
from core.derived.derived import ext
from core.linear.exact_linear import RingDesc
from core.modules.fp_module import CanonicalForm, FPModule
from core.modules.resolutions import syzygy
from resources.config import get_settings
from shared.errors import UnsupportedRingError
from shared.logging_mixin import LoggingMixin

Member = Union[FPModule, ChainComplex]


class CogenerationKind(str, Enum):
    T_SYZYGY = "T"
    S_R_INJECTIVE = "S"
    X_COMPLEXES = "X"


@dataclass(frozen=True)
class CogeneratingSet:
    kind: CogenerationKind
    ring: RingDesc
    r: int
    bound: int
    members: Tuple[Member, ...]

    def render(self) -> List[str]:
        return [_describe(m) for m in self.members]


def _describe(member: Member) -> str:
    if isinstance(member, ChainComplex):
        return member.describe()
    return str(member.canonical)


def _signature(member: Member) -> Tuple:
    if isinstance(member, ChainComplex):
        return (member.lo, member.hi) + tuple(t.canonical for t in member.terms)
    return (member.canonical,)


def _deduplicate(members: Sequence[Member]) -> Tuple[Member, ...]:
    seen, kept = set(), []
    for m in members:
        key = _signature(m)
        if key not in seen:
            seen.add(key)
            kept.append(m)
    return tuple(kept)


class CogenerationBuilder(LoggingMixin):
    def __init__(self, ring: RingDesc, r: int = 0, bound: Optional[int] = None):
        self.ring = ring
        self.r = r
        self.bound = bound

    def build(self, kind: CogenerationKind) -> CogeneratingSet:
        if kind is CogenerationKind.T_SYZYGY:
            bound = self.bound if self.bound is not None else get_settings().cogeneration_ideal_bound
            members = self._syzygies_of_cyclics(bound)
        elif kind is CogenerationKind.S_R_INJECTIVE:
            bound = self.bound or 0
            members = self._syzygies_of_injectives()
        else:
            bound = (
                self.bound if self.bound is not None else get_settings().cogeneration_degree_bound
            )
            members = self._sphere_syzygies(bound)
        result = CogeneratingSet(kind, self.ring, self.r, bound, _deduplicate(members))
        self.logger.info(
            "Cogenerating set %s over %s has %d members", kind.value, self.ring, len(result.members)
        )
        return result

    def _syzygies_of_cyclics(self, ideal_bound: int) -> List[FPModule]:
        """Ω^n(R/I) for the ideals I; n = 0 over Z/m and n = 1 over Z."""
        if not self.ring.is_integers:
            return [FPModule.cyclic(self.ring, int(d)) for d in divisors(self.ring.modulus)]
        cyclics = [FPModule.cyclic(self.ring, d) for d in range(0, ideal_bound + 1)]
        return [syzygy(c, 1) for c in cyclics]

    def _indecomposable_injectives(self) -> List[FPModule]:
        if self.ring.is_integers:
            self.logger.warning("Injective cogenerating set refused over %s", self.ring)
            raise UnsupportedRingError("S(r) needs finitely generated injectives, which Z lacks")
        return [
            FPModule.cyclic(self.ring, int(p) ** int(a))
            for p, a in sorted(factorint(self.ring.modulus).items())
        ]

    def _syzygies_of_injectives(self) -> List[FPModule]:
        """Ω^i(J) for i ≥ r, stopping at the first zero syzygy."""
        members: List[FPModule] = []
        for injective in self._indecomposable_injectives():
            i = self.r
            while True:
                current = injective if i == 0 else syzygy(injective, i)
                members.append(current)
                if current.is_zero():
                    break
                i += 1
        return members

    def _sphere_syzygies(self, degree_bound: int) -> List[ChainComplex]:
        degrees = range(-degree_bound, degree_bound + 1)
        ring = self.ring
        if not ring.is_integers:
            quotients = [FPModule.cyclic(ring, int(d)) for d in divisors(ring.modulus)]
            spheres = [sphere(k, c) for c in quotients for k in degrees if not c.is_zero()]
            return spheres
        ideal_bound = get_settings().cogeneration_ideal_bound
        members: List[ChainComplex] = [sphere(k, FPModule.free(ring, 1)) for k in degrees]
        for d in range(2, ideal_bound + 1):
            for k in degrees:
                _, cover = disk_cover(sphere(k, FPModule.cyclic(ring, d)))
                omega, _ = kernel_complex(cover)
                if not omega.is_zero():
                    members.append(omega)
        return members


def cogenerating_set(
    kind: CogenerationKind, ring: RingDesc, r: int = 0, bound: Optional[int] = None
) -> CogeneratingSet:
    return CogenerationBuilder(ring, r, bound).build(kind)


@dataclass(frozen=True)
class CogenerationReport:
    """
    Ext¹(s, y) for every set member s and sample y. This samples the claimed
    orthogonality; it proves nothing about objects outside the sample.
    """

    set_members: Tuple[str, ...]
    samples: Tuple[str, ...]
    expected: Tuple[bool, ...]
    matrix: Dict[Tuple[int, int], CanonicalForm]
    sampling: bool = True

    def annihilates(self, j: int) -> bool:
        return all(self.matrix[(i, j)].is_zero for i in range(len(self.set_members)))

    @property
    def members_annihilate(self) -> bool:
        return all(self.annihilates(j) for j, member in enumerate(self.expected) if member)

    @property
    def nonmembers_detected(self) -> bool:
        return all(not self.annihilates(j) for j, member in enumerate(self.expected) if not member)

    @property
    def consistent(self) -> bool:
        return self.members_annihilate and self.nonmembers_detected


def _ext1(s: Member, y: Member) -> CanonicalForm:
    if isinstance(s, ChainComplex):
        return ext_ch(1, s, y).canonical
    return ext(1, s, y).value.canonical


def verify_cogeneration(
    cset: CogeneratingSet,
    samples: Sequence[Tuple[Member, bool]],
    workers: Optional[int] = None,
) -> CogenerationReport:
    """samples pairs each object with whether it is expected in the right-hand class."""
    workers = workers or get_settings().verify_workers
    cells = [(i, j) for i in range(len(cset.members)) for j in range(len(samples))]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        values = list(pool.map(lambda c: _ext1(cset.members[c[0]], samples[c[1]][0]), cells))
    return CogenerationReport(
        set_members=tuple(cset.render()),
        samples=tuple(_describe(y) for y, _ in samples),
        expected=tuple(bool(member) for _, member in samples),
        matrix=dict(zip(cells, values)),
    )
