import pytest

from core.complexes.chain_complex import disk, sphere
from core.complexes.complex_derived import bar_tor
from core.derived.derived import ext
from core.graded.graded_bridge import psi
from core.linear.exact_linear import RingDesc
from core.modules.fp_module import CanonicalForm, FPModule
from core.oracle.oracle import (
    brute_bar_tor1,
    brute_ext1,
    brute_ext1_complexes,
    brute_ext_graded_a,
    brute_stable_syzygy_form,
    brute_syzygy_form,
    brute_tensor_size,
    enumerate_chain_maps,
    hom_count,
    table_form,
    translate,
)
from plugins.suites.samples import finite_modules
from shared.errors import OracleBoundError, PreconditionError

K = RingDesc.mod(2)


def _k_sphere(degree: int):
    return sphere(degree, FPModule.free(K, 1))


def test_hom_counts(z, z4):
    assert hom_count(FPModule.cyclic(z4, 2), FPModule.cyclic(z4, 4)) == 2
    assert hom_count(FPModule.cyclic(z, 4), FPModule.cyclic(z, 6)) == 2
    assert brute_tensor_size(FPModule.cyclic(z, 4), FPModule.cyclic(z, 6)) == 2


def test_brute_ext1(z, z2, z4):
    assert brute_ext1(FPModule.cyclic(z4, 2), FPModule.cyclic(z4, 2)).order == 2
    assert brute_ext1(FPModule.cyclic(z2, 2), FPModule.cyclic(z2, 2)).order == 1
    assert brute_ext1(FPModule.cyclic(z, 2), FPModule.cyclic(z, 4)).form == CanonicalForm((2,))


def test_brute_ext1_agrees_with_the_presentation_calculus(z4):
    modules = finite_modules(z4, 8)
    for m in modules:
        for n in modules:
            assert brute_ext1(m, n).form == ext(1, m, n).value.canonical, f"{m}, {n}"


def test_tables_recover_canonical_forms(z, z4):
    assert table_form(translate(FPModule.from_factors(z, [2, 4]))) == CanonicalForm((2, 4))
    assert table_form(translate(FPModule.free(z4, 1))) == CanonicalForm((4,))


def test_translate_preconditions(z):
    with pytest.raises(PreconditionError):
        translate(FPModule.free(z, 1))
    with pytest.raises(PreconditionError):
        translate(FPModule.cyclic(z, 4), 6)
    with pytest.raises(OracleBoundError):
        translate(FPModule.cyclic(z, 32))


def test_brute_syzygies(z, z4):
    assert brute_syzygy_form(FPModule.cyclic(z4, 2)) == CanonicalForm((2,))
    assert brute_stable_syzygy_form(FPModule.cyclic(z4, 2)) == CanonicalForm((2,))
    assert brute_stable_syzygy_form(FPModule.free(z4, 1)) == CanonicalForm(())
    with pytest.raises(PreconditionError):
        brute_syzygy_form(FPModule.cyclic(z, 2))


def test_field_complexes():
    assert len(enumerate_chain_maps(_k_sphere(0), _k_sphere(0))) == 2
    assert brute_ext1_complexes(_k_sphere(0), _k_sphere(-1)) == 2
    assert brute_ext1_complexes(_k_sphere(0), _k_sphere(0)) == 1
    orders = brute_bar_tor1(_k_sphere(0), _k_sphere(0))
    assert orders[-1] == 2
    assert all(order == 1 for k, order in orders.items() if k != -1)


def test_bar_tor_oracle_counts_kernels_of_a_disk_cover():
    shifted = brute_bar_tor1(_k_sphere(1), _k_sphere(-1))
    assert shifted[-1] == 2
    assert all(order == 1 for k, order in shifted.items() if k != -1)
    # disks are projective, so nothing survives
    free_disk = disk(1, FPModule.free(K, 1))
    assert set(brute_bar_tor1(free_disk, _k_sphere(0)).values()) == {1}


def test_bar_tor_oracle_matches_the_resolution_path():
    k = FPModule.free(K, 1)
    samples = [_k_sphere(0), _k_sphere(-1), disk(0, k), disk(1, k)]
    for x in samples:
        for y in samples:
            computed = bar_tor(1, x, y)
            for degree, order in brute_bar_tor1(x, y).items():
                assert computed.term(degree).canonical.cardinality == order, degree


def test_graded_oracle():
    assert brute_ext_graded_a(1, psi(_k_sphere(0)), psi(_k_sphere(-1))) == 2
    assert brute_ext_graded_a(0, psi(_k_sphere(0)), psi(_k_sphere(0))) == 2
    with pytest.raises(PreconditionError):
        brute_ext_graded_a(2, psi(_k_sphere(0)), psi(_k_sphere(0)))


def test_graded_oracle_needs_the_four_element_ring(z4):
    with pytest.raises(PreconditionError):
        brute_ext_graded_a(1, psi(sphere(0, FPModule.cyclic(z4, 2))), psi(sphere(0, FPModule.cyclic(z4, 2))))
