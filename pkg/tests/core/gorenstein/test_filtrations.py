import pytest

from core.complexes.chain_complex import disk, sphere
from core.gorenstein.filtrations import (
    FiltrationFamily,
    brutal_truncation,
    build_filtration,
    eklof_check,
    verify_filtration,
)
from core.modules.fp_module import FPModule
from plugins.suites.samples import finite_modules
from shared.errors import FiltrationError, OracleBoundError, PreconditionError


def test_cyclic_filtration_peels_the_largest_order_first(z4):
    m = FPModule.from_factors(z4, [2, 4])
    chain = build_filtration(m, FiltrationFamily.cyclics())
    assert [str(q) for q in chain.quotients] == ["Z/4", "Z/2"]
    assert chain.length == 2
    assert chain.stages[0].sub.is_zero()
    assert verify_filtration(chain, FiltrationFamily.cyclics())


def test_every_small_module_over_z4_has_a_cyclic_filtration(z4):
    family = FiltrationFamily.cyclics()
    for m in finite_modules(z4, 64):
        assert verify_filtration(build_filtration(m, family), family), str(m)


def test_filtration_by_an_explicit_family(z4):
    family = FiltrationFamily.of([FPModule.cyclic(z4, 2)])
    chain = build_filtration(FPModule.cyclic(z4, 4), family)
    assert [str(q) for q in chain.quotients] == ["Z/2", "Z/2"]
    assert verify_filtration(chain, family)
    assert family.describe() == "{Z/2}"


def test_verification_rejects_quotients_outside_the_family(z4):
    chain = build_filtration(FPModule.cyclic(z4, 4), FiltrationFamily.cyclics())
    assert not verify_filtration(chain, FiltrationFamily.of([FPModule.cyclic(z4, 2)]))


def test_no_admissible_element(z4):
    with pytest.raises(FiltrationError):
        build_filtration(FPModule.cyclic(z4, 2), FiltrationFamily.of([FPModule.cyclic(z4, 4)]))


def test_filtrations_need_finite_modules(z):
    with pytest.raises(PreconditionError):
        build_filtration(FPModule.free(z, 1), FiltrationFamily.cyclics())


def test_enumeration_bound(z4):
    with pytest.raises(OracleBoundError):
        build_filtration(FPModule.free(z4, 2), FiltrationFamily.cyclics(), bound=8)


def test_brutal_truncations(z):
    x = disk(1, FPModule.free(z, 1))
    bottom = brutal_truncation(x, 0)
    assert (bottom.src.lo, bottom.src.hi) == (0, 0)
    assert brutal_truncation(x, 1).is_isomorphism()


def test_eklof_check(z4):
    report = eklof_check(disk(1, FPModule.free(z4, 1)), sphere(0, FPModule.cyclic(z4, 2)))
    assert report.holds
    assert report.suspension_agrees
    assert len(report.stages) == 2
