"""
Gorenstein reports for modules and bounded complexes.

Complexes are classified degreewise: a bounded complex lies in GP_r (GF_r, GI_r)
exactly when each of its terms does, and it lies in W when it is exact with
cycles of finite projective dimension.
"""

import logging
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple, Union

from core.complexes.chain_complex import ChainComplex
from core.complexes.complex_derived import pd_complex
from core.gorenstein.contexts import (
    GorensteinContext,
    GorensteinContextFactory,
    Justification,
)
from core.modules.dimensions import Dimension, INFINITE, format_dimension
from core.modules.fp_module import FPModule
from core.modules.resolutions import syzygy
from shared.errors import InvariantViolationError, NotComputableError

logger = logging.getLogger(__name__)

Subject = Union[FPModule, ChainComplex]


@dataclass(frozen=True)
class GorensteinReport:
    """None in a dimension field means "not computable over this ring"."""

    subject: Subject
    gpd: Optional[Dimension]
    gid: Optional[Dimension]
    gfd: Optional[Dimension]
    pd: Dimension
    w_member: bool
    justification: Tuple[Justification, ...]

    @property
    def is_complex(self) -> bool:
        return isinstance(self.subject, ChainComplex)

    def render(self, name: str) -> str:
        """e.g. 'Gpd = 0 (quasi-Frobenius collapse); pd = ∞'"""
        value = {"Gpd": self.gpd, "Gid": self.gid, "Gfd": self.gfd}[name]
        reason = self.justification[0]
        if value is None:
            text = Justification.NOT_COMPUTABLE.value
            return f"{name} = {text}; pd = {format_dimension(self.pd)}"
        return f"{name} = {format_dimension(value)} ({reason.value}); pd = {format_dimension(self.pd)}"


def _context(subject: Subject) -> GorensteinContext:
    return GorensteinContextFactory.for_ring(subject.ring)


def _or_none(decide: Callable[[FPModule], Dimension], m: FPModule) -> Optional[Dimension]:
    try:
        return decide(m)
    except NotComputableError:
        return None


def _degreewise_max(values: List[Optional[Dimension]]) -> Optional[Dimension]:
    if any(v is None for v in values):
        return None
    return max(values, default=0)


def _check_bounds(report: GorensteinReport, context: GorensteinContext) -> None:
    if report.gpd is not None and report.gpd > context.fdi:
        raise InvariantViolationError(
            f"Gpd {report.gpd} exceeds the finite injective dimension bound {context.fdi}"
        )
    if report.pd != INFINITE and report.gpd is not None and report.gpd > report.pd:
        raise InvariantViolationError("Gpd exceeds a finite pd")


def classify(subject: Subject) -> GorensteinReport:
    context = _context(subject)
    if isinstance(subject, ChainComplex):
        terms = list(subject.terms)
        pd = pd_complex(subject)
        report = GorensteinReport(
            subject=subject,
            gpd=_degreewise_max([context.gpd(t) for t in terms]),
            gid=_degreewise_max([_or_none(context.gid, t) for t in terms]),
            gfd=_degreewise_max([context.gfd(t) for t in terms]),
            pd=pd,
            w_member=pd != INFINITE,
            justification=(
                context.justification,
                Justification.DEGREEWISE,
                Justification.FINITE_PD,
            ),
        )
    else:
        pd = context.pd(subject)
        report = GorensteinReport(
            subject=subject,
            gpd=context.gpd(subject),
            gid=_or_none(context.gid, subject),
            gfd=context.gfd(subject),
            pd=pd,
            w_member=pd != INFINITE,
            justification=(context.justification, Justification.FINITE_PD),
        )
    _check_bounds(report, context)
    logger.debug(
        "Classified %s: Gpd=%s pd=%s W=%s",
        subject.describe() if report.is_complex else subject,
        report.gpd,
        report.pd,
        report.w_member,
    )
    return report


def _syzygy_agrees(context: GorensteinContext, m: FPModule, r: int, member: bool) -> None:
    """m ∈ GP_r iff Ω^r(m) is Gorenstein-projective."""
    shifted = m if r == 0 else syzygy(m, r)
    if (context.gpd(shifted) == 0) != member:
        raise InvariantViolationError(
            f"Syzygy criterion disagrees with Gpd for {m} at r = {r}"
        )


def gp_r_member(subject: Subject, r: int) -> bool:
    context = _context(subject)
    if isinstance(subject, ChainComplex):
        return all(gp_r_member(t, r) for t in subject.terms)
    member = context.gp_r_member(subject, r)
    _syzygy_agrees(context, subject, r, member)
    return member


def gi_r_member(subject: Subject, r: int) -> bool:
    """Raises NotComputableError where the ring cannot decide GI_r."""
    context = _context(subject)
    if isinstance(subject, ChainComplex):
        return all(context.gi_r_member(t, r) for t in subject.terms)
    return context.gi_r_member(subject, r)


def gf_r_member(subject: Subject, r: int) -> bool:
    context = _context(subject)
    if isinstance(subject, ChainComplex):
        return all(context.gf_r_member(t, r) for t in subject.terms)
    return context.gf_r_member(subject, r)


def w_member(subject: Subject) -> bool:
    return classify(subject).w_member
