"""
Ext and Tor of finitely presented modules from free resolutions, and the Tor
long exact sequence with its connecting map.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List

from core.linear.exact_linear import ExactMatrix, solve_vector
from core.modules.fp_module import (
    FPModule,
    ModuleHom,
    ShortExactSequence,
    Simplification,
    Subquotient,
    homology_at,
    is_exact_at,
    power,
)
from core.modules.resolutions import Resolution, free_resolution
from shared.errors import InvariantViolationError

logger = logging.getLogger(__name__)


class Variance(str, Enum):
    EXT = "Ext"
    TOR = "Tor"


@dataclass(frozen=True)
class DerivedModule:
    value: FPModule
    degree: int
    variance: Variance
    provenance: int
    """Length of the resolution the value was computed from."""
    homology: Subquotient = field(compare=False, repr=False)

    def __str__(self) -> str:
        return f"{self.variance.value}^{self.degree} = {self.value.canonical}"


def _zero_into(target: FPModule) -> ModuleHom:
    return ModuleHom.zero(FPModule.zero(target.ring), target)


def _zero_out_of(source: FPModule) -> ModuleHom:
    return ModuleHom.zero(source, FPModule.zero(source.ring))


def hom_cochain(resolution: Resolution, n: FPModule, upto: int) -> List[ModuleHom]:
    """δ^j : Hom(P_{j-1}, N) → Hom(P_j, N) for j = 1..upto, with Hom(R^k, N) = N^k."""
    identity = ExactMatrix.identity(n.ring, n.gens)
    maps = []
    for j in range(1, min(upto, resolution.length) + 1):
        d = resolution.maps[j].mat
        maps.append(
            ModuleHom(power(n, d.rows), power(n, d.cols), d.transpose().kron(identity))
        )
    return maps


def ext(i: int, m: FPModule, n: FPModule, length: int = None) -> DerivedModule:
    if i < 0:
        raise ValueError("Ext degree must be non-negative")
    if length is None:
        length = i + 1
    resolution = free_resolution(m, length)
    cochain = hom_cochain(resolution, n, length)
    if i > resolution.length:
        term = FPModule.zero(m.ring)
        homology = homology_at(_zero_into(term), _zero_out_of(term))
    else:
        term = power(n, resolution.terms[i].gens)
        incoming = cochain[i - 1] if i >= 1 else _zero_into(term)
        outgoing = cochain[i] if i < len(cochain) else _zero_out_of(term)
        homology = homology_at(incoming, outgoing)
    logger.debug("Ext^%d(%s, %s) = %s", i, m, n, homology.module)
    return DerivedModule(homology.module, i, Variance.EXT, resolution.length, homology)


def tensor_chain(resolution: Resolution, n: FPModule, upto: int) -> List[ModuleHom]:
    """d_j ⊗ 1 : P_j ⊗ N → P_{j-1} ⊗ N for j = 1..upto, with R^k ⊗ N = N^k."""
    identity = ExactMatrix.identity(n.ring, n.gens)
    maps = []
    for j in range(1, min(upto, resolution.length) + 1):
        d = resolution.maps[j].mat
        maps.append(ModuleHom(power(n, d.cols), power(n, d.rows), d.kron(identity)))
    return maps


def _tor_homology(resolution: Resolution, n: FPModule, i: int) -> Subquotient:
    chain = tensor_chain(resolution, n, i + 1)
    if i > resolution.length:
        term = FPModule.zero(n.ring)
        return homology_at(_zero_into(term), _zero_out_of(term))
    term = power(n, resolution.terms[i].gens)
    outgoing = chain[i - 1] if i >= 1 else _zero_out_of(term)
    incoming = chain[i] if i < len(chain) else _zero_into(term)
    return homology_at(incoming, outgoing)


def tor(i: int, m: FPModule, n: FPModule, length: int = None) -> DerivedModule:
    if i < 0:
        raise ValueError("Tor degree must be non-negative")
    if length is None:
        length = i + 1
    resolution = free_resolution(m, length)
    homology = _tor_homology(resolution, n, i)
    logger.debug("Tor_%d(%s, %s) = %s", i, m, n, homology.module)
    return DerivedModule(homology.module, i, Variance.TOR, resolution.length, homology)


@dataclass(frozen=True)
class TorLESReport:
    """
    Tor_1(W,A) → Tor_1(W,B) → Tor_1(W,C) --∂--> W⊗A → W⊗B → W⊗C → 0

    Tor is computed from a resolution of W; W⊗X is presented as coker(d_1 ⊗ 1_X).
    """

    terms: Dict[str, FPModule]
    maps: Dict[str, ModuleHom]
    exactness: Dict[str, bool]
    connecting: ModuleHom

    @property
    def all_exact(self) -> bool:
        return all(self.exactness.values())


def _solve_in(system: ExactMatrix, relations: ExactMatrix, vector) -> List[int]:
    x = solve_vector(system.lift().hstack(relations), list(vector))
    if x is None:
        raise InvariantViolationError("Diagram chase found no lift")
    return list(x[: system.cols])


def tor_les(w: FPModule, ses: ShortExactSequence) -> TorLESReport:
    ring = w.ring
    f, g = ses.f, ses.g
    resolution = free_resolution(w, 2)
    k0 = resolution.terms[0].gens
    k1 = resolution.terms[1].gens if resolution.length >= 1 else 0
    modules = {"A": ses.sub, "B": ses.middle, "C": ses.quotient}

    tor1: Dict[str, Subquotient] = {}
    zero_degree: Dict[str, Simplification] = {}
    for name, x in modules.items():
        tor1[name] = _tor_homology(resolution, x, 1)
        d1 = tensor_chain(resolution, x, 1)
        d1_mat = d1[0].mat if d1 else ExactMatrix.zeros(ring, k0 * x.gens, 0)
        raw = FPModule(ring, k0 * x.gens, power(x, k0).rels.hstack(d1_mat))
        zero_degree[name] = raw.simplification

    def lift_tensor(h: ModuleHom, k: int) -> ExactMatrix:
        return ExactMatrix.identity(ring, k).kron(h.mat)

    def tor1_map(h: ModuleHom, source: str, target: str) -> ModuleHom:
        src, dst = tor1[source], tor1[target]
        moved = lift_tensor(h, k1) @ src.generators
        columns = [dst.coordinates(moved.column(c)) for c in range(moved.cols)]
        return ModuleHom(
            src.module, dst.module, ExactMatrix.from_columns(ring, dst.module.gens, columns)
        )

    def zero_degree_map(h: ModuleHom, source: str, target: str) -> ModuleHom:
        src, dst = zero_degree[source], zero_degree[target]
        mat = dst.to_target @ lift_tensor(h, k0) @ src.from_target
        return ModuleHom(src.target, dst.target, mat)

    # snake: lift a cycle of P1⊗C to P1⊗B, push down with d1⊗1, pull back along 1⊗f
    d1_b = tensor_chain(resolution, ses.middle, 1)
    relations_c = power(ses.quotient, k1).relations_z
    relations_b = power(ses.middle, k0).relations_z
    g1, f0 = lift_tensor(g, k1), lift_tensor(f, k0)
    columns = []
    for c in range(tor1["C"].generators.cols):
        z = tor1["C"].generators.column(c)
        y = _solve_in(g1, relations_c, z)
        pushed = d1_b[0].mat.apply(y) if d1_b else ()
        x = _solve_in(f0, relations_b, pushed)
        columns.append(zero_degree["A"].to_target.apply(x))
    connecting = ModuleHom(
        tor1["C"].module,
        zero_degree["A"].target,
        ExactMatrix.from_columns(ring, zero_degree["A"].target.gens, columns),
    )

    maps = {
        "Tor1(W,A)->Tor1(W,B)": tor1_map(f, "A", "B"),
        "Tor1(W,B)->Tor1(W,C)": tor1_map(g, "B", "C"),
        "connecting": connecting,
        "W⊗A->W⊗B": zero_degree_map(f, "A", "B"),
        "W⊗B->W⊗C": zero_degree_map(g, "B", "C"),
    }
    chain = list(maps.values())
    tail = _zero_out_of(zero_degree["C"].target)
    exactness = {
        "Tor1(W,B)": is_exact_at(chain[0], chain[1]),
        "Tor1(W,C)": is_exact_at(chain[1], chain[2]),
        "W⊗A": is_exact_at(chain[2], chain[3]),
        "W⊗B": is_exact_at(chain[3], chain[4]),
        "W⊗C": is_exact_at(chain[4], tail),
    }
    terms = {f"Tor1(W,{name})": tor1[name].module for name in modules}
    terms.update({f"W⊗{name}": zero_degree[name].target for name in modules})
    report = TorLESReport(terms, maps, exactness, connecting)
    logger.info("Tor long exact sequence for W = %s: exact=%s", w, report.all_exact)
    return report
