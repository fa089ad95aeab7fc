import pytest

from core.derived.derived import Variance, ext, tor, tor_les
from core.linear.exact_linear import ExactMatrix, RingDesc
from core.modules.duality import character_dual
from core.modules.fp_module import FPModule, ModuleHom, ShortExactSequence, tensor_modules
from core.modules.hom_space import hom_between
from core.modules.resolutions import syzygy
from plugins.suites.samples import random_module


def test_ext_zero_is_hom(z, z4):
    for ring in (z, z4):
        m, n = FPModule.cyclic(ring, 2), FPModule.cyclic(ring, 4)
        assert ext(0, m, n).value.canonical == hom_between(m, n).canonical


def test_ext_one_examples(z, z4):
    assert str(ext(1, FPModule.cyclic(z, 2), FPModule.free(z, 1)).value) == "Z/2"
    assert str(ext(1, FPModule.cyclic(z, 2), FPModule.cyclic(z, 2)).value) == "Z/2"
    assert str(ext(1, FPModule.cyclic(z4, 2), FPModule.cyclic(z4, 2)).value) == "Z/2"
    assert ext(1, FPModule.cyclic(z4, 2), FPModule.free(z4, 1)).value.is_zero()


def test_ext_vanishes_above_global_dimension_over_z(z):
    m = FPModule.from_factors(z, [2, 6], free_rank=1)
    for i in (2, 3):
        assert ext(i, m, FPModule.cyclic(z, 4)).value.is_zero()
        assert tor(i, m, FPModule.cyclic(z, 4)).value.is_zero()


def test_ext_persists_over_z4(z4):
    z_2 = FPModule.cyclic(z4, 2)
    for i in range(1, 4):
        assert str(ext(i, z_2, z_2).value) == "Z/2", f"Ext^{i}(Z/2, Z/2) over Z/4"
        assert str(tor(i, z_2, z_2).value) == "Z/2", f"Tor_{i}(Z/2, Z/2) over Z/4"


def test_tor_zero_is_tensor(z, z6):
    for ring in (z, z6):
        m, n = FPModule.cyclic(ring, 2), FPModule.from_factors(ring, [2, ring.modulus or 4])
        assert tor(0, m, n).value.canonical == tensor_modules(m, n).canonical


def test_derived_module_records_provenance(z):
    result = ext(1, FPModule.cyclic(z, 2), FPModule.cyclic(z, 2))
    assert result.variance is Variance.EXT
    assert result.degree == 1
    assert str(result) == "Ext^1 = Z/2"


def test_negative_degree_is_rejected(z):
    with pytest.raises(ValueError):
        ext(-1, FPModule.free(z, 1), FPModule.free(z, 1))


@pytest.mark.parametrize("modulus", [4, 6, 9])
def test_dimension_shifting_and_duality(modulus, rng):
    ring = RingDesc.mod(modulus)
    for _ in range(10):
        m, n = random_module(rng, ring), random_module(rng, ring)
        shifted = ext(1, syzygy(m, 1), n).value.canonical
        assert shifted == ext(2, m, n).value.canonical, f"shift fails for {m}, {n}"
        dual = ext(1, m, character_dual(n)).value.canonical
        assert dual == character_dual(tor(1, n, m).value).canonical, f"duality fails for {m}, {n}"


def test_tor_long_exact_sequence_is_exact(z):
    # 0 → Z/2 → Z/4 → Z/2 → 0 tensored against Z/2
    f = ModuleHom(FPModule.cyclic(z, 2), FPModule.cyclic(z, 4), ExactMatrix.from_rows(z, [[2]]))
    report = tor_les(FPModule.cyclic(z, 2), ShortExactSequence.from_inclusion(f))
    assert report.all_exact, f"non-exact positions: {report.exactness}"
