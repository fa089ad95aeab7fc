from typing import Callable, List, Optional, Union

from cli.models.report_models import (
    CanonicalFormModel,
    CommandReport,
    ComplexModel,
    GorensteinModel,
    OracleLineModel,
)
from core.complexes.chain_complex import ChainComplex, suspension
from core.complexes.complex_derived import bar_ext, bar_tor, ext_ch
from core.complexes.functors import bar_hom, bar_tensor, hom_prime, pontryagin, tensor
from core.derived.derived import ext, tor
from core.gorenstein.classify import GorensteinReport, classify
from core.gorenstein.cogeneration import CogenerationKind, cogenerating_set
from core.gorenstein.filtrations import FiltrationFamily, build_filtration, verify_filtration
from core.gorenstein.witnesses import ApproximationPair, approximation_witness
from core.graded.graded_bridge import GradedAModule, ext_a, phi, psi, tor_a
from core.linear.exact_linear import ExactMatrix, RingDesc
from core.modules.dimensions import format_dimension
from core.modules.duality import character_dual
from core.modules.fp_module import FPModule, subquotient, tensor_modules
from core.modules.purity import InclusionWitness, is_w_pure, w_test_family
from core.oracle.oracle import (
    brute_bar_tor1,
    brute_ext1,
    brute_ext1_complexes,
    brute_ext_graded_a,
    brute_tor1_graded_a,
    enumerate_chain_maps,
    table_form,
    translate,
)
from shared.errors import (
    DimensionMismatchError,
    FiltrationError,
    InvariantViolationError,
    OracleBoundError,
    PreconditionError,
    RingMismatchError,
    UnsupportedRingError,
)
from shared.logging_mixin import LoggingMixin

Subject = Union[FPModule, ChainComplex]

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def exit_code_for(error: Exception) -> int:
    """Broken mathematics exits 1; anything the caller can fix by changing the input exits 2."""
    if isinstance(error, (InvariantViolationError, FiltrationError)):
        return EXIT_CHECK_FAILED
    return EXIT_USAGE


def _expect_module(value: object, role: str) -> FPModule:
    if not isinstance(value, FPModule):
        raise PreconditionError(f"{role} must be a module literal")
    return value


def _expect_complex(value: object, role: str) -> ChainComplex:
    if not isinstance(value, ChainComplex):
        raise PreconditionError(f"{role} must be a complex literal ('deg hi..lo : ...')")
    return value


def _expect_amodule(value: object, role: str) -> GradedAModule:
    if isinstance(value, ChainComplex):
        return psi(value)
    if not isinstance(value, GradedAModule):
        raise PreconditionError(f"{role} must be an A-module literal ('deg hi..lo : ...')")
    return value


def _gorenstein_model(report: GorensteinReport) -> GorensteinModel:
    def fmt(value):
        return None if value is None else format_dimension(value)

    return GorensteinModel(
        gpd=fmt(report.gpd),
        gid=fmt(report.gid),
        gfd=fmt(report.gfd),
        pd=format_dimension(report.pd),
        w_member=report.w_member,
        justification=[j.value for j in report.justification],
        rules=[j.rule for j in report.justification],
    )


class WorkbenchService(LoggingMixin):
    """
    One method per CLI command. Each takes parsed objects and returns a
    CommandReport whose first text line is the result.
    """

    def __init__(self, ring: RingDesc, oracle: bool = False, bound: Optional[int] = None):
        self.ring = ring
        self.oracle = oracle
        self.bound = bound

    def _check_ring(self, *objects) -> None:
        for obj in objects:
            base = obj.base if isinstance(obj, GradedAModule) else obj.ring
            if base != self.ring:
                raise RingMismatchError(f"Object over {base} passed with --ring {self.ring}")

    def _report(self, command: str, arguments: List[str], lines: List[str], **fields) -> CommandReport:
        return CommandReport(
            command=command, ring=str(self.ring), arguments=arguments, lines=lines, **fields
        )

    def _module_report(self, command: str, arguments: List[str], label: str, m: FPModule, **fields):
        form = m.canonical
        return self._report(
            command, arguments, [f"{label}{form}"], module=CanonicalFormModel.of(form), **fields
        )

    def _complex_report(self, command: str, arguments: List[str], label: str, x: ChainComplex, **fields):
        return self._report(
            command, arguments, [f"{label}{x.describe()}"], complex=ComplexModel.of(x), **fields
        )

    def _cross_check(
        self, quantity: str, compute: Callable[[], object], matches: Callable[[object], bool]
    ) -> List[OracleLineModel]:
        """Empty unless --oracle; inputs beyond the oracle's reach are reported as skipped."""
        if not self.oracle:
            return []
        try:
            value = compute()
        except (OracleBoundError, PreconditionError, UnsupportedRingError) as e:
            self.logger.info("Oracle skipped %s: %s", quantity, e)
            return [OracleLineModel(quantity=quantity, performed=False, detail=str(e))]
        agrees = matches(value)
        if not agrees:
            self.logger.warning("Oracle disagrees on %s: %s", quantity, value)
        return [OracleLineModel(quantity=quantity, performed=True, agrees=agrees, detail=str(value))]

    def canon(self, obj: Subject) -> CommandReport:
        self._check_ring(obj)
        if isinstance(obj, ChainComplex):
            return self._complex_report("canon", [obj.literal()], "", obj)
        form = obj.canonical
        checks = self._cross_check(
            "canonical form", lambda: table_form(translate(obj)), lambda v: v == form
        )
        return self._module_report("canon", [obj.literal()], "", obj, oracle=checks)

    def ext(self, i: int, m: object, n: object) -> CommandReport:
        m, n = _expect_module(m, "M"), _expect_module(n, "N")
        self._check_ring(m, n)
        value = ext(i, m, n).value
        checks = []
        if i == 1:
            checks = self._cross_check(
                "Ext^1", lambda: brute_ext1(m, n).form, lambda v: v == value.canonical
            )
        return self._module_report("ext", [str(i), m.literal(), n.literal()], f"Ext^{i} = ", value, oracle=checks)

    def tor(self, i: int, m: object, n: object) -> CommandReport:
        m, n = _expect_module(m, "M"), _expect_module(n, "N")
        self._check_ring(m, n)
        value = tor(i, m, n).value
        checks = []
        if i == 1:
            # |Tor₁(M, N)| = |Ext¹(M, N⁺)| and N⁺ ≅ N for finite N
            checks = self._cross_check(
                "|Tor_1|", lambda: brute_ext1(m, n).order, lambda v: v == value.canonical.cardinality
            )
        return self._module_report("tor", [str(i), m.literal(), n.literal()], f"Tor_{i} = ", value, oracle=checks)

    def extch(self, i: int, x: object, y: object) -> CommandReport:
        x, y = _expect_complex(x, "X"), _expect_complex(y, "Y")
        self._check_ring(x, y)
        value = ext_ch(i, x, y)
        checks = []
        if i == 1:
            checks = self._cross_check(
                "|Ext^1_Ch|",
                lambda: brute_ext1_complexes(x, y),
                lambda v: v == value.canonical.cardinality,
            )
        return self._module_report(
            "extch", [str(i), x.literal(), y.literal()], f"Ext^{i}_Ch = ", value, oracle=checks
        )

    def barext(self, i: int, x: object, y: object) -> CommandReport:
        x, y = _expect_complex(x, "X"), _expect_complex(y, "Y")
        self._check_ring(x, y)
        value = bar_ext(i, x, y)
        return self._complex_report("barext", [str(i), x.literal(), y.literal()], f"bar-Ext^{i}: ", value)

    def bartor(self, i: int, x: object, y: object) -> CommandReport:
        x, y = _expect_complex(x, "X"), _expect_complex(y, "Y")
        self._check_ring(x, y)
        value = bar_tor(i, x, y)
        checks = []
        if i == 1:
            checks = self._cross_check(
                "|bar-Tor_1| by degree",
                lambda: brute_bar_tor1(x, y),
                lambda v: all(value.term(k).canonical.cardinality == o for k, o in v.items()),
            )
        return self._complex_report(
            "bartor", [str(i), x.literal(), y.literal()], f"bar-Tor_{i}: ", value, oracle=checks
        )

    def dimension(self, name: str, obj: Subject) -> CommandReport:
        """name is one of pd, Gpd, Gid, Gfd."""
        self._check_ring(obj)
        report = classify(obj)
        if name == "pd":
            line = f"pd = {format_dimension(report.pd)}"
        else:
            line = report.render(name)
        return self._report(
            name.lower(), [obj.literal()], [line], gorenstein=_gorenstein_model(report)
        )

    def dual(self, obj: Subject, n: Optional[int] = None) -> CommandReport:
        self._check_ring(obj)
        if isinstance(obj, ChainComplex):
            return self._complex_report("dual", [obj.literal()], "X⁺: ", pontryagin(obj, n))
        return self._module_report("dual", [obj.literal()], "M⁺ = ", character_dual(obj, n))

    def tensor(self, a: Subject, b: Subject) -> CommandReport:
        self._check_ring(a, b)
        arguments = [a.literal(), b.literal()]
        if isinstance(a, FPModule) and isinstance(b, FPModule):
            return self._module_report("tensor", arguments, "M ⊗ N = ", tensor_modules(a, b))
        x, y = _expect_complex(a, "X"), _expect_complex(b, "Y")
        return self._complex_report("tensor", arguments, "X ⊗ Y: ", tensor(x, y))

    def bartensor(self, x: object, y: object) -> CommandReport:
        x, y = _expect_complex(x, "X"), _expect_complex(y, "Y")
        self._check_ring(x, y)
        return self._complex_report("bartensor", [x.literal(), y.literal()], "X ⊗̄ Y: ", bar_tensor(x, y))

    def homprime(self, x: object, y: object) -> CommandReport:
        x, y = _expect_complex(x, "X"), _expect_complex(y, "Y")
        self._check_ring(x, y)
        return self._complex_report("homprime", [x.literal(), y.literal()], "Hom′(X, Y): ", hom_prime(x, y))

    def barhom(self, x: object, y: object) -> CommandReport:
        x, y = _expect_complex(x, "X"), _expect_complex(y, "Y")
        self._check_ring(x, y)
        value = bar_hom(x, y)
        checks = self._cross_check(
            "chain maps X → Y",
            lambda: len(enumerate_chain_maps(x, y)),
            lambda v: v == value.term(0).canonical.cardinality,
        )
        return self._complex_report("barhom", [x.literal(), y.literal()], "bar-Hom(X, Y): ", value, oracle=checks)

    def susp(self, k: int, x: object) -> CommandReport:
        x = _expect_complex(x, "X")
        self._check_ring(x)
        value = suspension(k, x)
        report = self._complex_report("susp", [str(k), x.literal()], f"Σ^{k} X: ", value)
        report.lines.append(value.literal())
        return report

    def phi(self, m: object) -> CommandReport:
        m = _expect_amodule(m, "M")
        self._check_ring(m)
        value = phi(m)
        report = self._complex_report("phi", [value.literal()], "Φ(M): ", value)
        report.lines.append(value.literal())
        return report

    def psi(self, x: object) -> CommandReport:
        x = _expect_complex(x, "X")
        self._check_ring(x)
        m = psi(x)
        return self._report("psi", [x.literal()], [m.describe()], complex=ComplexModel.of(phi(m)))

    def exta(self, i: int, m: object, n: object) -> CommandReport:
        m, n = _expect_amodule(m, "M"), _expect_amodule(n, "N")
        self._check_ring(m, n)
        value = ext_a(i, m, n)
        checks = self._cross_check(
            f"|Ext^{i}_A|", lambda: brute_ext_graded_a(i, m, n), lambda v: v == value.canonical.cardinality
        )
        arguments = [str(i), phi(m).literal(), phi(n).literal()]
        return self._module_report("exta", arguments, f"Ext^{i}_A = ", value, oracle=checks)

    def tora(self, i: int, m: object, n: object) -> CommandReport:
        m, n = _expect_amodule(m, "M"), _expect_amodule(n, "N")
        self._check_ring(m, n)
        value = tor_a(i, m, n)
        checks = []
        if i == 1:
            checks = self._cross_check(
                "|Tor_1^A| by degree",
                lambda: brute_tor1_graded_a(m, n),
                lambda v: all(value.term(k).canonical.cardinality == o for k, o in v.items()),
            )
        arguments = [str(i), phi(m).literal(), phi(n).literal()]
        return self._complex_report("tora", arguments, f"Tor_{i}^A: ", value, oracle=checks)

    def wpure(self, ambient: object, generators: ExactMatrix) -> CommandReport:
        ambient = _expect_module(ambient, "ambient")
        self._check_ring(ambient)
        if generators.rows != ambient.gens:
            raise DimensionMismatchError(
                f"Generator matrix has {generators.rows} rows for {ambient.gens} generators"
            )
        w = InclusionWitness.of(subquotient(ambient, generators).inclusion)
        pure = is_w_pure(w)
        family = ", ".join(str(t) for t in w_test_family(w))
        lines = [
            f"{w.sub} ⊆ {w.ambient}: {'W-pure' if pure else 'not W-pure'}",
            f"quotient: {w.quotient}",
            f"tested against: {family}",
        ]
        return self._report("wpure", [ambient.literal(), generators.literal()], lines, verdict=pure)

    def filtration(self, m: object) -> CommandReport:
        m = _expect_module(m, "M")
        self._check_ring(m)
        family = FiltrationFamily.cyclics()
        chain = build_filtration(m, family, self.bound)
        verified = verify_filtration(chain, family)
        lines = [chain.render(), f"length {chain.length}, re-verified: {'yes' if verified else 'no'}"]
        return self._report("filtration", [m.literal()], lines, verified=verified)

    def witness(self, pair: str, m: object, r: int = 0) -> CommandReport:
        m = _expect_module(m, "X")
        self._check_ring(m)
        try:
            chosen = ApproximationPair(pair)
        except ValueError:
            names = ", ".join(p.value for p in ApproximationPair)
            raise PreconditionError(f"Unknown pair '{pair}'; choose from {names}")
        w = approximation_witness(chosen, m, r)
        verified = w.verify()
        lines = [w.render(), f"re-verified: {'yes' if verified else 'no'}"]
        return self._report("witness", [pair, m.literal(), str(r)], lines, verified=verified)

    def cogen(self, kind: str, r: int = 0) -> CommandReport:
        try:
            chosen = CogenerationKind(kind)
        except ValueError:
            names = ", ".join(k.value for k in CogenerationKind)
            raise PreconditionError(f"Unknown cogenerating set '{kind}'; choose from {names}")
        cset = cogenerating_set(chosen, self.ring, r, self.bound)
        members = cset.render()
        head = f"{chosen.value}(r = {r}) over {self.ring}, bound {cset.bound}: {len(members)} members"
        return self._report("cogen", [kind, str(r)], [head] + [f"  {m}" for m in members])


def render_text(report: CommandReport) -> str:
    lines = list(report.lines)
    for o in report.oracle:
        if not o.performed:
            lines.append(f"oracle {o.quantity}: skipped ({o.detail})")
        else:
            lines.append(f"oracle {o.quantity}: {'agrees' if o.agrees else 'DISAGREES'} ({o.detail})")
    return "\n".join(lines)
