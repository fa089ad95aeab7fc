"""
Ring-specific deciders for Gorenstein classes and dimensions.

Membership in GP_r, GI_r and GF_r quantifies over proper classes, so it is decided
by the collapse theorem available for the ring rather than by search. Z/m is
quasi-Frobenius (0-Gorenstein); Z has global dimension 1 (1-Gorenstein).
"""

import threading
from abc import ABC, abstractmethod
from enum import Enum
from typing import ClassVar, Dict, List

from sympy import divisors, primefactors

from core.derived.derived import ext
from core.linear.exact_linear import RingDesc
from core.modules.dimensions import (
    Dimension,
    INFINITE,
    injective_dimension,
    projective_dimension,
    flat_dimension,
)
from core.modules.fp_module import FPModule
from shared.errors import NotComputableError
from shared.logging_mixin import LoggingMixin


class Justification(str, Enum):
    QUASI_FROBENIUS = "quasi-Frobenius collapse"
    FINITE_GLOBAL_DIMENSION = "finite global dimension collapse"
    DEGREEWISE = "degreewise characterization"
    FINITE_PD = "finite projective dimension"
    NOT_COMPUTABLE = "not computable over this ring"

    @property
    def rule(self) -> str:
        return _RULES[self]


_RULES = {
    Justification.QUASI_FROBENIUS: (
        "over a quasi-Frobenius ring every module is Gorenstein-projective, "
        "Gorenstein-injective and Gorenstein-flat"
    ),
    Justification.FINITE_GLOBAL_DIMENSION: (
        "over a ring of finite global dimension Gorenstein-projective modules are "
        "projective, so Gpd = pd and Gfd = fd"
    ),
    Justification.DEGREEWISE: (
        "a bounded complex is Gorenstein-r-projective (flat, injective) exactly when "
        "every term is"
    ),
    Justification.FINITE_PD: (
        "an object lies in W iff its projective dimension is finite, iff its "
        "injective dimension is finite"
    ),
    Justification.NOT_COMPUTABLE: (
        "finitely generated data cannot separate the candidate values over this ring"
    ),
}


def _cyclic_test_family(ring: RingDesc, y: FPModule) -> List[FPModule]:
    """
    Cyclic modules R/I that decide injectivity of y by Baer's criterion: every
    ideal (d) of Z/m, or Z/p for p = 2 and the primes of y's torsion over Z.
    """
    if not ring.is_integers:
        return [FPModule.cyclic(ring, int(d)) for d in divisors(ring.modulus) if d > 1]
    primes = {2} | set(primefactors(y.canonical.torsion_exponent))
    return [FPModule.cyclic(ring, int(p)) for p in sorted(primes)]


class GorensteinContext(ABC, LoggingMixin):
    """Decides Gorenstein dimensions and class memberships for modules over one ring."""

    def __init__(self, ring: RingDesc):
        self.ring = ring

    @property
    @abstractmethod
    def fdp(self) -> int:
        """sup of the finite projective dimensions."""

    @property
    @abstractmethod
    def fdi(self) -> int:
        """sup of the finite injective dimensions."""

    @property
    @abstractmethod
    def justification(self) -> Justification:
        """The collapse theorem this context decides by."""

    @abstractmethod
    def gpd(self, m: FPModule) -> Dimension: ...

    @abstractmethod
    def gid(self, m: FPModule) -> Dimension: ...

    @abstractmethod
    def gfd(self, m: FPModule) -> Dimension: ...

    @abstractmethod
    def gi_r_member(self, m: FPModule, r: int) -> bool: ...

    @abstractmethod
    def gf_r_perp_member(self, y: FPModule, r: int) -> bool: ...

    def pd(self, m: FPModule) -> Dimension:
        return projective_dimension(m)

    def is_w_member(self, m: FPModule) -> bool:
        return self.pd(m) != INFINITE

    def gp_r_member(self, m: FPModule, r: int) -> bool:
        return self.gpd(m) <= r

    def gf_r_member(self, m: FPModule, r: int) -> bool:
        return self.gfd(m) <= r

    def p_r_member(self, m: FPModule, r: int) -> bool:
        return self.pd(m) <= r

    def annihilated_by(self, tests: List[FPModule], y: FPModule) -> bool:
        """Ext¹(t, y) = 0 for every t in tests."""
        return all(ext(1, t, y).value.is_zero() for t in tests)

    def gp_r_perp_member(self, y: FPModule, r: int) -> bool:
        """y ∈ (GP_r)^⊥, decided by Ext¹ against cyclic members of GP_r."""
        tests = [t for t in _cyclic_test_family(self.ring, y) if self.gp_r_member(t, r)]
        return self.annihilated_by(tests, y)

    def p_r_perp_member(self, y: FPModule, r: int) -> bool:
        """y ∈ (P_r)^⊥, decided by Ext¹ against R and the cyclic members of P_r."""
        tests = [FPModule.free(self.ring, 1)]
        tests += [t for t in _cyclic_test_family(self.ring, y) if self.p_r_member(t, r)]
        return self.annihilated_by(tests, y)

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.ring})"


class QuasiFrobeniusContext(GorensteinContext):
    """Z/m: projectives and injectives coincide, every module is Gorenstein."""

    @property
    def fdp(self) -> int:
        return 0

    @property
    def fdi(self) -> int:
        return 0

    @property
    def justification(self) -> Justification:
        return Justification.QUASI_FROBENIUS

    def gpd(self, m: FPModule) -> Dimension:
        return 0

    def gid(self, m: FPModule) -> Dimension:
        return 0

    def gfd(self, m: FPModule) -> Dimension:
        return 0

    def id(self, m: FPModule) -> Dimension:
        return injective_dimension(m)

    def gi_r_member(self, m: FPModule, r: int) -> bool:
        return self.gid(m) <= r

    def gf_r_perp_member(self, y: FPModule, r: int) -> bool:
        # GF_r is everything, so the perp is the injectives
        return self.annihilated_by(_cyclic_test_family(self.ring, y), y)


class IntegersContext(GorensteinContext):
    """Z: Gorenstein-projective collapses to projective, Gid is out of reach."""

    @property
    def fdp(self) -> int:
        return 1

    @property
    def fdi(self) -> int:
        return 1

    @property
    def justification(self) -> Justification:
        return Justification.FINITE_GLOBAL_DIMENSION

    def gpd(self, m: FPModule) -> Dimension:
        return projective_dimension(m)

    def gid(self, m: FPModule) -> Dimension:
        self.logger.warning("Gid refused over %s", self.ring)
        raise NotComputableError("Gid over Z is not computable from finitely generated data")

    def gfd(self, m: FPModule) -> Dimension:
        return flat_dimension(m)

    def gi_r_member(self, m: FPModule, r: int) -> bool:
        if r >= self.fdp:
            # every Gid is bounded by the Gorenstein order of the ring
            return True
        raise NotComputableError("GI_0 membership over Z is not computable")

    def gf_r_perp_member(self, y: FPModule, r: int) -> bool:
        if r == 0:
            raise NotComputableError(
                "(GF_0)^⊥ over Z involves non-finitely generated flat modules"
            )
        return self.annihilated_by(_cyclic_test_family(self.ring, y), y)


class GorensteinContextFactory:
    """
    Hands out one decider per ring.

    Deciders hold no mutable state, so the cache only saves re-construction.
    """

    _contexts: ClassVar[Dict[RingDesc, GorensteinContext]] = {}
    _lock: ClassVar[threading.Lock] = threading.Lock()

    @classmethod
    def for_ring(cls, ring: RingDesc) -> GorensteinContext:
        with cls._lock:
            if ring not in cls._contexts:
                context_class = IntegersContext if ring.is_integers else QuasiFrobeniusContext
                cls._contexts[ring] = context_class(ring)
                cls._contexts[ring].logger.debug("Created decider for %s", ring)
            return cls._contexts[ring]

    @classmethod
    def reset(cls) -> None:
        with cls._lock:
            cls._contexts.clear()
