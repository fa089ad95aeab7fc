"""
Character duals M⁺ = Hom_Z(M, Q/Z) for finite modules, realised as Hom(M, Z/N).

Any N divisible by the exponent of M gives the same dual; operations on several
modules pick a common N so that dual homs compose.
"""

import logging
from functools import reduce
from typing import Optional, Sequence

from core.linear.exact_linear import ExactMatrix
from core.modules.fp_module import FPModule, ModuleHom, ShortExactSequence, lcm
from core.modules.hom_space import HomSpace, hom_module, pre_compose
from shared.errors import PreconditionError

logger = logging.getLogger(__name__)


def exponent(m: FPModule) -> int:
    form = m.canonical
    if not form.is_finite:
        raise PreconditionError(
            f"Character dual needs a finite module, got {form} over {m.ring}"
        )
    return form.torsion_exponent


def common_exponent(modules: Sequence[FPModule]) -> int:
    return reduce(lcm, (exponent(m) for m in modules), 1)


def character_hom_space(m: FPModule, n: Optional[int] = None) -> HomSpace:
    """Hom(m, Z/n); n defaults to the exponent of m."""
    if n is None:
        n = exponent(m)
    elif n % exponent(m):
        raise PreconditionError(f"{n} is not a multiple of the exponent of {m}")
    return hom_module(m, FPModule.cyclic(m.ring, n))


def character_dual(m: FPModule, n: Optional[int] = None) -> FPModule:
    return character_hom_space(m, n).module


def character_dual_hom(f: ModuleHom, n: Optional[int] = None) -> ModuleHom:
    """f⁺ : dst⁺ → src⁺, both duals taken against the same Z/n."""
    if n is None:
        n = common_exponent([f.src, f.dst])
    source_space = character_hom_space(f.dst, n)
    target_space = character_hom_space(f.src, n)
    return pre_compose(source_space, target_space, f)


def dual_sequence(ses: ShortExactSequence, n: Optional[int] = None) -> ShortExactSequence:
    """0 → C⁺ → B⁺ → A⁺ → 0, re-verified."""
    if n is None:
        n = common_exponent([ses.sub, ses.middle, ses.quotient])
    return ShortExactSequence(
        character_dual_hom(ses.g, n), character_dual_hom(ses.f, n)
    )


def double_dual_unit(m: FPModule) -> ModuleHom:
    """Evaluation m → m⁺⁺, an isomorphism for finite m."""
    n = exponent(m)
    first = character_hom_space(m, n)
    second = character_hom_space(first.module, n)
    columns = []
    for i in range(m.gens):
        # x ↦ (φ ↦ φ(x)) evaluated on each basis hom
        values = [phi.mat[0, i] for phi in first.basis]
        evaluation = ModuleHom(
            first.module, FPModule.cyclic(m.ring, n),
            ExactMatrix.from_rows(m.ring, [values], first.module.gens),
        )
        columns.append(second.coordinates(evaluation))
    return ModuleHom(
        m, second.module, ExactMatrix.from_columns(m.ring, second.module.gens, columns)
    )
