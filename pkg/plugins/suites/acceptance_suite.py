"""
The acceptance suite: exact, instance-level consequences of the Gorenstein model
structure results, each registered as one named check of the "paper-suite".
"""

import itertools
import random
from typing import Callable, Iterable, List, Tuple

from sympy import primerange

from core.complexes.chain_complex import (
    ChainComplex,
    ChainMap,
    disk,
    sphere,
    suspension,
)
from core.complexes.complex_derived import bar_ext, bar_tor, ext_ch
from core.complexes.functors import (
    bar_hom,
    chain_isomorphism,
    pontryagin,
    pontryagin_comparison,
    tensor,
)
from core.derived.derived import ext, tor
from core.gorenstein.classify import classify, gp_r_member
from core.gorenstein.cogeneration import CogenerationKind, cogenerating_set, verify_cogeneration
from core.gorenstein.checks import w_purity_closure_check
from core.gorenstein.contexts import GorensteinContextFactory
from core.gorenstein.filtrations import FiltrationFamily, build_filtration, verify_filtration
from core.gorenstein.witnesses import ApproximationPair, approximation_witness
from core.graded.graded_bridge import correspondence_harness, ext_a, psi, tor_a
from core.linear.exact_linear import ExactMatrix, RingDesc
from core.modules.dimensions import INFINITE, stable_form
from core.modules.duality import character_dual
from core.modules.fp_module import FPModule, ModuleHom, tensor_homs, tensor_modules
from core.modules.hom_space import hom_module
from core.modules.purity import InclusionWitness, is_w_pure
from core.modules.resolutions import syzygy
from core.oracle.oracle import (
    brute_bar_tor1,
    brute_ext1,
    brute_ext1_complexes,
    brute_ext_graded_a,
    brute_stable_syzygy_form,
    brute_tensor_size,
    brute_tor1_graded_a,
    enumerate_chain_maps,
    hom_count,
)
from plugins.check_registry import CheckContext, CheckOutcome, check
from plugins.suites.samples import (
    exact_integer_complexes,
    finite_modules,
    free_integer_complexes,
    non_exact_integer_complexes,
    random_complex,
    random_integer_inclusion,
    random_module,
)
from shared.errors import OracleBoundError

SUITE = "paper-suite"

Z = RingDesc.integers()
Z2 = RingDesc.mod(2)
Z4 = RingDesc.mod(4)
Z6 = RingDesc.mod(6)


def tensor_disk_comparison(ring: RingDesc, c: FPModule, m: int = 1) -> ChainMap:
    """D^m(R) ⊗ S⁰(C) → D^m(C), the identity on R ⊗ C = C in both degrees."""
    product = tensor(disk(m, FPModule.free(ring, 1)), sphere(0, c))
    target = disk(m, c)
    return ChainMap.from_matrices(
        product, target, [ExactMatrix.identity(ring, c.gens) for _ in product.degrees()]
    )


def _first_failure(
    cases: Iterable, holds: Callable[..., bool], describe: Callable[..., str]
) -> CheckOutcome:
    count = 0
    for case in cases:
        count += 1
        if not holds(*case):
            return CheckOutcome(False, f"fails on {describe(*case)}", count)
    return CheckOutcome(True, f"{count} instances", count)


def _complexes(seed: int, ring: RingDesc, count: int, max_parts: int = 2) -> List[ChainComplex]:
    rng = random.Random(f"{seed}-{ring}")
    return [random_complex(rng, ring, max_parts) for _ in range(count)]


@check("pontryagin-iso", "X⁺ ≅ bar-Hom(X, D⁰(Z/N)) through the sign-twisted comparison", SUITE)
def pontryagin_iso(context: CheckContext) -> CheckOutcome:
    population = _complexes(context.seed, Z4, 10) + _complexes(context.seed, Z6, 10)
    return _first_failure(
        ((x,) for x in population),
        lambda x: pontryagin_comparison(x).is_isomorphism(),
        lambda x: x.describe(),
    )


@check("bar-duality", "bar-Ext¹(X, Y⁺) ≅ bar-Tor₁(X, Y)⁺ as complexes", SUITE)
def bar_duality(context: CheckContext) -> CheckOutcome:
    xs = _complexes(context.seed, Z4, 6, 1)
    ys = _complexes(context.seed + 1, Z4, 6, 1)

    def holds(x, y):
        # a ChainMap that does not commute with both boundaries is never constructed
        left, right = bar_ext(1, x, pontryagin(y)), pontryagin(bar_tor(1, x, y))
        return chain_isomorphism(left, right) is not None

    return _first_failure(zip(xs, ys), holds, lambda x, y: f"{x.describe()} / {y.describe()}")


@check("disk-bridging", "Ext¹(X, D^{m+1}(W)) ≅ Ext¹(X_m, W) for every m in the window", SUITE)
def disk_bridging(context: CheckContext) -> CheckOutcome:
    rng = random.Random(context.seed)
    pairs = [(random_complex(rng, Z4, 1), random_module(rng, Z4)) for _ in range(50)]

    def holds(x, w):
        return all(
            ext_ch(1, x, disk(m + 1, w)).canonical == ext(1, x.term(m), w).value.canonical
            for m in x.degrees()
        )

    return _first_failure(pairs, holds, lambda x, w: f"{x.describe()} against {w}")


@check("suspension-laws", "Σ^{-k}Σ^k = id and Ext^i(Σ^{-k}X, Y) ≅ Ext^i(X, Σ^k Y)", SUITE)
def suspension_laws(context: CheckContext) -> CheckOutcome:
    xs = _complexes(context.seed, Z4, 3, 1)
    ys = _complexes(context.seed + 2, Z4, 3, 1)
    cases = [(x, y, k, i) for x, y in zip(xs, ys) for k in range(-3, 4) for i in (0, 1)]

    def holds(x, y, k, i):
        if suspension(-k, suspension(k, x)) != x:
            return False
        return ext_ch(i, suspension(-k, x), y).canonical == ext_ch(i, x, suspension(k, y)).canonical

    return _first_failure(cases, holds, lambda x, y, k, i: f"k = {k}, i = {i}, {x.describe()}")


@check("z4-facts", "Z/2 and D¹(Z/2) over Z/4 are Gorenstein-projective of infinite pd", SUITE)
def z4_facts(context: CheckContext) -> CheckOutcome:
    z2 = FPModule.cyclic(Z4, 2)
    module = classify(z2)
    if (module.gpd, module.gid, module.gfd, module.pd) != (0, 0, 0, INFINITE):
        return CheckOutcome(False, f"classify(Z/2) = {module}")
    witness = classify(disk(1, z2))
    if witness.gpd != 0 or witness.pd != INFINITE:
        return CheckOutcome(False, "D¹(Z/2) is not Gorenstein-projective of infinite pd")
    comparison = tensor_disk_comparison(Z4, z2)
    if not comparison.is_isomorphism():
        return CheckOutcome(False, f"D¹(Z/4) ⊗ S⁰(Z/2) = {comparison.src.describe()}")
    return CheckOutcome(True, "module, complex and tensor facts hold", 3)


@check("gp-w-intersection", "GP₁ ∩ W = P₁ over Z on every small canonical form", SUITE)
def gp_w_intersection(context: CheckContext) -> CheckOutcome:
    ctx = GorensteinContextFactory.for_ring(Z)
    factor_lists = [
        list(c) for size in range(4) for c in itertools.combinations_with_replacement((2, 3, 4), size)
    ]
    cases = [(FPModule.from_factors(Z, f, rank),) for f in factor_lists for rank in range(3)]
    return _first_failure(
        cases,
        lambda m: (gp_r_member(m, 1) and ctx.is_w_member(m)) == ctx.p_r_member(m, 1),
        lambda m: str(m),
    )


@check("dimension-shifting", "Ext¹(Ω^r M, N) ≅ Ext^{r+1}(M, N) and Ext¹(M, N⁺) ≅ Tor₁(N, M)⁺", SUITE)
def dimension_shifting(context: CheckContext) -> CheckOutcome:
    rng = random.Random(context.seed)
    cases = []
    for _ in range(100):
        ring = rng.choice((Z4, Z6))
        cases.append((random_module(rng, ring), random_module(rng, ring), rng.randint(1, 2)))

    def holds(m, n, r):
        if ext(1, syzygy(m, r), n).value.canonical != ext(r + 1, m, n).value.canonical:
            return False
        dual_side = ext(1, m, character_dual(n)).value.canonical
        if dual_side != character_dual(tor(1, n, m).value).canonical:
            return False
        if context.oracle:
            return _oracle_ext_agrees(m, n)
        return True

    return _first_failure(cases, holds, lambda m, n, r: f"M = {m}, N = {n}, r = {r}")


def _oracle_ext_agrees(m: FPModule, n: FPModule) -> bool:
    try:
        return brute_ext1(m, n).form == ext(1, m, n).value.canonical
    except OracleBoundError:
        return True


def _module_oracle_cases() -> List[Tuple[FPModule, FPModule]]:
    pairs = []
    for ring in (Z2, Z4, Z6):
        modules = finite_modules(ring, 8)
        pairs += list(itertools.product(modules, repeat=2))
    torsion = [FPModule.cyclic(Z, 2), FPModule.cyclic(Z, 3), FPModule.cyclic(Z, 4)]
    return pairs + list(itertools.product(torsion, repeat=2))


def _module_oracle_agrees(m: FPModule, n: FPModule) -> bool:
    if hom_module(m, n).module.canonical.cardinality != hom_count(m, n):
        return False
    brute = brute_ext1(m, n)
    if ext(1, m, n).value.canonical != brute.form:
        return False
    # Tor₁(M, N)⁺ ≅ Ext¹(M, N⁺) and N⁺ ≅ N for finite modules
    if tor(1, m, n).value.canonical.cardinality != brute.order:
        return False
    if tensor_modules(m, n).canonical.cardinality != brute_tensor_size(m, n):
        return False
    if not m.ring.is_integers and stable_form(syzygy(m, 1)) != brute_stable_syzygy_form(m):
        return False
    return True


def _field_samples() -> List[ChainComplex]:
    k = FPModule.free(Z2, 1)
    return [sphere(0, k), sphere(-1, k), disk(0, k), disk(1, k)]


def _complex_oracle_agrees(x: ChainComplex, y: ChainComplex) -> bool:
    if bar_hom(x, y).term(0).canonical.cardinality != len(enumerate_chain_maps(x, y)):
        return False
    if ext_ch(1, x, y).canonical.cardinality != brute_ext1_complexes(x, y):
        return False
    computed = bar_tor(1, x, y)
    return all(computed.term(k).canonical.cardinality == o for k, o in brute_bar_tor1(x, y).items())


def _graded_oracle_agrees(x: ChainComplex, y: ChainComplex) -> bool:
    m, n = psi(x), psi(y)
    for i in (0, 1):
        if ext_a(i, m, n).canonical.cardinality != brute_ext_graded_a(i, m, n):
            return False
    computed = tor_a(1, m, n)
    return all(
        computed.term(k).canonical.cardinality == o for k, o in brute_tor1_graded_a(m, n).items()
    )


@check("oracle-equivalence", "Main path against exhaustive enumeration on small inputs", SUITE)
def oracle_equivalence(context: CheckContext) -> CheckOutcome:
    modules = _first_failure(
        _module_oracle_cases(), _module_oracle_agrees, lambda m, n: f"modules {m}, {n} over {m.ring}"
    )
    if not modules.passed:
        return modules
    samples = list(itertools.product(_field_samples(), repeat=2))
    complexes = _first_failure(
        samples, _complex_oracle_agrees, lambda x, y: f"complexes {x.describe()}, {y.describe()}"
    )
    if not complexes.passed:
        return complexes
    graded = _first_failure(
        samples, _graded_oracle_agrees, lambda x, y: f"A-modules {x.describe()}, {y.describe()}"
    )
    if not graded.passed:
        return graded
    total = modules.cases + complexes.cases + graded.cases
    return CheckOutcome(True, f"{total} pairs agree", total)


@check("cotorsion-consequences", "Cogeneration over Z/4 and approximation witnesses", SUITE)
def cotorsion_consequences(context: CheckContext) -> CheckOutcome:
    cset = cogenerating_set(CogenerationKind.T_SYZYGY, Z4)
    samples = [(FPModule.free(Z4, 1), True), (FPModule.free(Z4, 2), True)]
    samples.append((FPModule.cyclic(Z4, 2), False))
    report = verify_cogeneration(cset, samples)
    if not report.consistent:
        return CheckOutcome(False, "T over Z/4 does not separate projectives from Z/2")
    cases = [
        (pair, m)
        for pair in (ApproximationPair.GP_W, ApproximationPair.W_GI)
        for m in finite_modules(Z4, 16)
    ]
    outcome = _first_failure(
        cases,
        lambda pair, m: approximation_witness(pair, m).verify(),
        lambda pair, m: f"{pair.value} at {m}",
    )
    return CheckOutcome(outcome.passed, outcome.detail, outcome.cases + 1)


@check("graded-correspondence", "dg-projective complexes over Z give Gorenstein-projective A-modules", SUITE)
def graded_correspondence(context: CheckContext) -> CheckOutcome:
    rng = random.Random(context.seed)
    cases = [(x, "free") for x in free_integer_complexes(rng, 20)]
    cases += [(x, "exact") for x in exact_integer_complexes(rng, 20)]
    cases += [(x, "non-exact") for x in non_exact_integer_complexes(rng, 20)]

    def holds(x, kind):
        report = correspondence_harness(x)
        if not report.consistent:
            return False
        if kind == "free":
            return report.a_gorenstein_projective
        return report.exactness.w_member == (kind == "exact")

    return _first_failure(cases, holds, lambda x, kind: f"{kind} complex {x.describe()}")


def _prime_powers(limit: int) -> List[int]:
    powers = []
    for p in primerange(2, limit + 1):
        q = p
        while q <= limit:
            powers.append(q)
            q *= p
    return powers


def _exhaustively_pure(w: InclusionWitness, exponent: int) -> bool:
    """N ⊆ M is pure iff N ⊗ Z/q → M ⊗ Z/q stays injective for every prime power q."""
    ring = w.ambient.ring
    return all(
        tensor_homs(w.incl, ModuleHom.identity(FPModule.cyclic(ring, q))).is_injective()
        for q in _prime_powers(4 * exponent)
    )


@check("filtration-purity", "Cyclic filtrations, purity against exhaustive testing, purity closure", SUITE)
def filtration_purity(context: CheckContext) -> CheckOutcome:
    family = FiltrationFamily.cyclics()
    filtrations = _first_failure(
        ((m,) for m in finite_modules(Z4, 64)),
        lambda m: verify_filtration(build_filtration(m, family), family),
        lambda m: f"filtration of {m}",
    )
    if not filtrations.passed:
        return filtrations
    rng = random.Random(context.seed)
    inclusions = [(random_integer_inclusion(rng, 24),) for _ in range(100)]
    purity = _first_failure(
        inclusions,
        lambda w: is_w_pure(w) == _exhaustively_pure(w, 24),
        lambda w: f"{w.sub} ⊆ {w.ambient}",
    )
    if not purity.passed:
        return purity
    ambient = FPModule.from_factors(Z4, [2, 4])
    summand = ModuleHom(FPModule.cyclic(Z4, 2), ambient, ExactMatrix.from_rows(Z4, [[1], [0]]))
    closure = w_purity_closure_check(ambient, InclusionWitness.of(summand))
    if not closure.holds:
        return CheckOutcome(False, "purity closure fails for Z/2 ⊆ Z/2 ⊕ Z/4")
    total = filtrations.cases + purity.cases + 1
    return CheckOutcome(True, f"{total} instances", total)
