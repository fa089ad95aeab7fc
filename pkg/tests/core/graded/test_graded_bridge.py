import pytest

from core.complexes.chain_complex import ChainMap, disk, is_exact, null_homotopy, sphere
from core.graded.graded_bridge import (
    DGKind,
    GradedAModule,
    a_homs,
    a_tensor,
    correspondence_harness,
    dg_class_test,
    exact_w_correspondence,
    ext_a,
    free_a_module,
    iso_sequence_check,
    phi,
    presentation_complex,
    psi,
    tor_a,
    unit_module,
)
from core.linear.exact_linear import RingDesc
from core.modules.fp_module import FPModule
from plugins.suites.samples import exact_integer_complexes, free_integer_complexes
from shared.errors import RingMismatchError, UnsupportedRingError

K = RingDesc.mod(2)


def _k_sphere(degree: int):
    return sphere(degree, FPModule.free(K, 1))


def test_phi_and_psi_are_mutually_inverse(z4):
    x = disk(1, FPModule.cyclic(z4, 2))
    m = psi(x)
    assert phi(m) is x
    assert psi(phi(m)) == m
    assert m.x_action(1).is_isomorphism()
    assert m.piece(0) == x.term(0)


def test_carrier_must_live_over_the_base(z, z4):
    with pytest.raises(RingMismatchError):
        GradedAModule(z, disk(1, FPModule.free(z4, 1)))


def test_unit_module_is_a_disk():
    assert unit_module(K).describe() == "A-module over Z/2: [-1] Z/2  [0] Z/2"
    assert phi(free_a_module(K, 2, 3)).lo == 2


def test_ext_a_is_degree_preserving():
    k0, k_minus = psi(_k_sphere(0)), psi(_k_sphere(-1))
    assert ext_a(1, k0, k_minus).canonical.cardinality == 2
    assert ext_a(1, k0, k0).is_zero()
    assert ext_a(0, k0, k0).canonical.cardinality == 2


def test_ext_a_needs_a_common_base(z):
    with pytest.raises(RingMismatchError):
        ext_a(1, psi(_k_sphere(0)), psi(sphere(0, FPModule.free(z, 1))))


def test_tor_a_of_the_residue_field():
    torsion = tor_a(1, psi(_k_sphere(0)), psi(_k_sphere(0)))
    assert str(torsion.term(-1)) == "Z/2"


def test_unit_law_for_tensor():
    m = psi(disk(1, FPModule.free(K, 1)))
    assert phi(a_tensor(unit_module(K), m)).describe() == phi(m).describe()


def test_homs_out_of_the_unit():
    [identity] = a_homs(unit_module(K), unit_module(K))
    assert identity.to_chain_map().is_isomorphism()


def test_iso_sequence_against_the_oracle():
    report = iso_sequence_check(psi(_k_sphere(0)), psi(_k_sphere(-1)))
    assert report.unit_law
    assert report.ext == {0: True, 1: True}
    assert report.tor == {1: True}
    assert report.holds


def test_iso_sequence_outside_the_oracle_is_skipped(z4):
    report = iso_sequence_check(psi(sphere(0, FPModule.cyclic(z4, 2))))
    assert report.ext == {0: None, 1: None}
    assert report.holds


def test_dg_projective_samples_over_z(z):
    certificate = dg_class_test(disk(1, FPModule.free(z, 1)), DGKind.DG_PROJECTIVE)
    assert certificate.accepted
    assert certificate.sufficient_only
    assert certificate.sampled_maps == certificate.null_homotopic
    assert not dg_class_test(sphere(0, FPModule.cyclic(z, 2)), DGKind.DG_PROJECTIVE).accepted


def test_dg_injective_over_z4(z, z4):
    assert dg_class_test(sphere(0, FPModule.free(z4, 1)), DGKind.DG_INJECTIVE).accepted
    assert not dg_class_test(sphere(0, FPModule.cyclic(z4, 2)), DGKind.DG_INJECTIVE).degreewise
    with pytest.raises(UnsupportedRingError):
        dg_class_test(sphere(0, FPModule.free(z, 1)), DGKind.DG_INJECTIVE)


def test_presentation_complex_is_exact_but_not_contractible(z, z4):
    e = presentation_complex(FPModule.cyclic(z, 2))
    assert (e.lo, e.hi) == (0, 2)
    assert is_exact(e)
    assert null_homotopy(ChainMap.identity(e)) is None
    assert presentation_complex(FPModule.free(z4, 2)) is None


def test_dg_projective_rejection_comes_from_a_map_that_is_not_null_homotopic(z):
    certificate = dg_class_test(sphere(0, FPModule.cyclic(z, 2)), DGKind.DG_PROJECTIVE)
    assert certificate.null_homotopic < certificate.sampled_maps
    assert certificate.refuted_by
    assert not certificate.accepted


def test_dg_injective_samples_over_z4(z4):
    refuted = dg_class_test(sphere(0, FPModule.cyclic(z4, 2)), DGKind.DG_INJECTIVE)
    assert refuted.refuted_by
    assert refuted.null_homotopic < refuted.sampled_maps
    accepted = dg_class_test(sphere(0, FPModule.free(z4, 1)), DGKind.DG_INJECTIVE)
    assert not accepted.refuted_by
    assert accepted.null_homotopic == accepted.sampled_maps > 0


def test_exactness_matches_w_membership(z):
    assert exact_w_correspondence(disk(1, FPModule.cyclic(z, 2))).agrees
    report = exact_w_correspondence(sphere(0, FPModule.free(z, 1)))
    assert (report.exact, report.w_member) == (False, False)


def test_correspondence_on_integer_complexes(rng):
    for x in free_integer_complexes(rng, 5) + exact_integer_complexes(rng, 5):
        report = correspondence_harness(x)
        assert report.consistent, f"{x.describe()}: {report.contradictions}"
        assert len(report.trail) == 3


def test_correspondence_is_refused_off_z(z4):
    with pytest.raises(UnsupportedRingError):
        correspondence_harness(disk(1, FPModule.free(z4, 1)))
