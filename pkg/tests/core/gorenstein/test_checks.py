import pytest

from core.complexes.chain_complex import disk, sphere
from core.gorenstein.checks import (
    gf_complex_report,
    gi_w_check,
    perp_intersection_check,
    w_purity_closure_check,
)
from core.linear.exact_linear import ExactMatrix
from core.modules.fp_module import FPModule, subquotient
from core.modules.purity import InclusionWitness
from shared.errors import PreconditionError, UnsupportedRingError


def _inclusion(ambient, vector):
    generators = ExactMatrix.column_vector(ambient.ring, vector)
    return InclusionWitness.of(subquotient(ambient, generators).inclusion)


def test_purity_closure_on_a_summand(z4):
    e = FPModule.from_factors(z4, [2, 4])
    report = w_purity_closure_check(e, _inclusion(e, [1, 0]))
    assert report.holds
    assert report.sub_flat and report.quotient_flat


def test_purity_closure_preconditions(z):
    r = FPModule.free(z, 1)
    with pytest.raises(PreconditionError):
        w_purity_closure_check(r, _inclusion(r, [2]))
    z_2 = FPModule.cyclic(z, 2)
    with pytest.raises(PreconditionError):
        w_purity_closure_check(z_2, _inclusion(z_2, [1]))


@pytest.mark.parametrize("order", [1, 2, 4])
def test_perp_intersection_over_z4(order, z4):
    assert perp_intersection_check(FPModule.cyclic(z4, order), 0).agrees


def test_perp_intersection_over_z(z):
    report = perp_intersection_check(FPModule.cyclic(z, 2), 1)
    assert (report.gp_perp, report.p_perp, report.w_member) == (False, False, True)
    assert report.agrees
    assert perp_intersection_check(FPModule.free(z, 1), 0).agrees


def test_gi_intersect_w_is_finite_injective_dimension(z4):
    z_2 = gi_w_check(FPModule.cyclic(z4, 2), 0)
    assert (z_2.gi_member, z_2.w_member, z_2.i_r_member) == (True, False, False)
    assert z_2.agrees
    assert gi_w_check(FPModule.cyclic(z4, 4), 0).i_r_member


def test_gi_intersect_w_is_refused_over_z(z):
    with pytest.raises(UnsupportedRingError):
        gi_w_check(FPModule.cyclic(z, 2), 1)


def test_flat_complex_characterizations_over_z4(z4):
    report = gf_complex_report(disk(1, FPModule.cyclic(z4, 2)), 0)
    assert report.degreewise_flat
    assert report.dual_degreewise_injective
    assert report.agrees


def test_flat_complex_characterizations_over_z(z):
    flat = gf_complex_report(sphere(0, FPModule.free(z, 1)), 0)
    assert flat.dual_degreewise_injective is None
    assert flat.degreewise_flat and flat.bar_tor_vanishes
    torsion = gf_complex_report(sphere(0, FPModule.cyclic(z, 2)), 0)
    assert not torsion.degreewise_flat
    assert torsion.agrees
