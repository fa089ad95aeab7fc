import logging

import pytest

from core.complexes.chain_complex import disk
from core.gorenstein.classify import classify, gi_r_member, gp_r_member, w_member
from core.gorenstein.contexts import (
    GorensteinContextFactory,
    IntegersContext,
    Justification,
    QuasiFrobeniusContext,
)
from core.modules.dimensions import INFINITE
from core.modules.fp_module import FPModule
from shared.errors import NotComputableError


def test_factory_picks_the_context_by_ring(z, z4):
    assert isinstance(GorensteinContextFactory.for_ring(z4), QuasiFrobeniusContext)
    assert isinstance(GorensteinContextFactory.for_ring(z), IntegersContext)
    assert GorensteinContextFactory.for_ring(z) is GorensteinContextFactory.for_ring(z)


def test_z2_over_z4_collapses(z4):
    report = classify(FPModule.cyclic(z4, 2))
    assert (report.gpd, report.gid, report.gfd) == (0, 0, 0)
    assert report.pd == INFINITE
    assert not report.w_member
    assert report.render("Gpd") == "Gpd = 0 (quasi-Frobenius collapse); pd = ∞"


def test_free_module_over_z4_lies_in_w(z4):
    assert w_member(FPModule.free(z4, 2))
    assert not w_member(FPModule.from_factors(z4, [2, 4]))


def test_gorenstein_projective_dimension_over_z_is_pd(z):
    report = classify(FPModule.cyclic(z, 2))
    assert report.gpd == report.pd == 1
    assert report.gfd == 1
    assert report.w_member
    assert report.render("Gpd") == "Gpd = 1 (finite global dimension collapse); pd = 1"
    assert classify(FPModule.free(z, 3)).gpd == 0


def test_gid_over_z_is_not_computable(z, caplog):
    with caplog.at_level(logging.WARNING):
        report = classify(FPModule.cyclic(z, 2))
    assert report.gid is None
    assert report.render("Gid") == "Gid = not computable over this ring; pd = 1"
    assert "Gid refused" in caplog.text


def test_complexes_are_classified_degreewise(z, z4):
    over_z4 = classify(disk(1, FPModule.cyclic(z4, 2)))
    assert over_z4.is_complex
    assert over_z4.gpd == 0
    assert over_z4.pd == INFINITE
    assert Justification.DEGREEWISE in over_z4.justification

    over_z = classify(disk(1, FPModule.cyclic(z, 2)))
    assert over_z.gpd == 1
    assert over_z.gid is None
    assert over_z.pd == 1


def test_class_memberships_over_z(z):
    z_2 = FPModule.cyclic(z, 2)
    assert gp_r_member(z_2, 1)
    assert not gp_r_member(z_2, 0)
    assert gi_r_member(z_2, 1)
    with pytest.raises(NotComputableError):
        gi_r_member(z_2, 0)


def test_every_module_over_z_mod_m_is_gorenstein(z6):
    for m in (FPModule.cyclic(z6, 2), FPModule.cyclic(z6, 3), FPModule.free(z6, 1)):
        assert gp_r_member(m, 0)
        assert gi_r_member(m, 0)
