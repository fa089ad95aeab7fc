import pytest

from core.gorenstein.cogeneration import (
    CogenerationKind,
    cogenerating_set,
    verify_cogeneration,
)
from core.modules.fp_module import FPModule
from shared.errors import UnsupportedRingError


def test_t_over_z4_is_every_cyclic(z4):
    cset = cogenerating_set(CogenerationKind.T_SYZYGY, z4)
    assert cset.render() == ["0", "Z/2", "Z/4"]


def test_t_over_z_uses_first_syzygies(z):
    cset = cogenerating_set(CogenerationKind.T_SYZYGY, z, bound=4)
    assert cset.bound == 4
    assert cset.render() == ["0", "Z"]


def test_s_over_z4_stops_at_the_first_zero_syzygy(z4):
    cset = cogenerating_set(CogenerationKind.S_R_INJECTIVE, z4)
    assert cset.render() == ["Z/4", "0"]


def test_s_is_refused_over_z(z):
    with pytest.raises(UnsupportedRingError):
        cogenerating_set(CogenerationKind.S_R_INJECTIVE, z)


def test_sphere_members_over_z4(z4):
    cset = cogenerating_set(CogenerationKind.X_COMPLEXES, z4, bound=1)
    assert len(cset.members) == 6
    assert all(m.lo == m.hi for m in cset.members)


def test_t_separates_projectives_over_z4(z4):
    cset = cogenerating_set(CogenerationKind.T_SYZYGY, z4)
    samples = [(FPModule.free(z4, 2), True), (FPModule.cyclic(z4, 2), False)]
    report = verify_cogeneration(cset, samples, workers=2)
    assert report.members_annihilate
    assert report.nonmembers_detected
    assert report.consistent
    assert report.samples == ("Z/4 ⊕ Z/4", "Z/2")


def test_wrong_expectation_is_reported(z4):
    cset = cogenerating_set(CogenerationKind.T_SYZYGY, z4)
    report = verify_cogeneration(cset, [(FPModule.cyclic(z4, 2), True)], workers=1)
    assert not report.consistent
