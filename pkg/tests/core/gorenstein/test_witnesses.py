import dataclasses

import pytest

from core.gorenstein.witnesses import (
    ApproximationPair,
    ClassName,
    approximation_witness,
    decide_membership,
)
from core.modules.fp_module import FPModule
from plugins.suites.samples import finite_modules
from shared.errors import NotComputableError, UnsupportedRingError


def test_gp_w_over_z4_is_the_trivial_cover(z4):
    witness = approximation_witness(ApproximationPair.GP_W, FPModule.cyclic(z4, 2))
    assert witness.covering
    assert witness.verify()
    assert witness.render() == "GP_W (r = 0): 0 → 0 → Z/2 → Z/2 → 0  [B ∈ W, A ∈ GP_r]"


def test_gp_w_over_z_uses_a_free_presentation(z):
    witness = approximation_witness(ApproximationPair.GP_W, FPModule.cyclic(z, 2))
    assert str(witness.sequence.sub) == "Z"
    assert str(witness.sequence.middle) == "Z"
    assert witness.verify()


def test_w_gi_over_z4_embeds_into_a_sum_with_a_free_module(z4):
    witness = approximation_witness(ApproximationPair.W_GI, FPModule.cyclic(z4, 2))
    assert not witness.covering
    assert str(witness.sequence.middle) == "Z/2 ⊕ Z/4"
    assert witness.verify()


def test_pr_perp_over_z4_uses_the_projective_cover(z4):
    witness = approximation_witness(ApproximationPair.PR_PERP, FPModule.cyclic(z4, 2))
    assert str(witness.sequence.middle) == "Z/4"
    assert witness.verify()


@pytest.mark.parametrize("pair", list(ApproximationPair), ids=lambda p: p.value)
def test_every_pair_verifies_over_z6(pair, z6):
    for m in finite_modules(z6, 12):
        assert approximation_witness(pair, m).verify(), f"{pair.value} at {m}"


def test_refusals_over_z(z):
    with pytest.raises(UnsupportedRingError):
        approximation_witness(ApproximationPair.W_GI, FPModule.cyclic(z, 2))
    with pytest.raises(NotComputableError):
        approximation_witness(ApproximationPair.GFR_PERP, FPModule.cyclic(z, 2), r=0)
    assert approximation_witness(ApproximationPair.GFR_PERP, FPModule.cyclic(z, 2), r=1).verify()


def test_tampered_witness_fails_verification(z4):
    witness = approximation_witness(ApproximationPair.GP_W, FPModule.cyclic(z4, 2))
    assert not dataclasses.replace(witness, subject=FPModule.cyclic(z4, 4)).verify()


def test_membership_decisions(z, z4):
    assert decide_membership(FPModule.free(z4, 1), ClassName.W, 0)
    assert not decide_membership(FPModule.cyclic(z4, 2), ClassName.W, 0)
    assert decide_membership(FPModule.cyclic(z, 2), ClassName.P_R, 1)
    assert not decide_membership(FPModule.cyclic(z, 2), ClassName.P_R, 0)
