import pytest

from core.complexes.chain_complex import direct_sum_complexes, disk, is_exact, sphere, suspension
from core.complexes.complex_derived import (
    bar_ext,
    bar_ext_orthogonal,
    bar_tor,
    disk_resolution,
    ext_ch,
    pd_complex,
)
from core.complexes.functors import (
    bar_hom,
    bar_hom_complex,
    bar_tensor,
    chain_isomorphism,
    hom_prime,
    pontryagin,
    pontryagin_comparison,
    tensor,
)
from core.derived.derived import ext
from core.linear.exact_linear import RingDesc
from core.modules.dimensions import INFINITE
from core.modules.fp_module import FPModule
from plugins.suites.acceptance_suite import tensor_disk_comparison
from plugins.suites.samples import random_complex, random_module


def test_tensor_of_spheres(z):
    product = tensor(sphere(1, FPModule.cyclic(z, 4)), sphere(2, FPModule.cyclic(z, 6)))
    assert (product.lo, product.hi) == (3, 3)
    assert str(product.term(3)) == "Z/2"


def test_free_disk_tensor_a_sphere_is_a_disk(z4):
    comparison = tensor_disk_comparison(z4, FPModule.cyclic(z4, 2))
    assert comparison.is_isomorphism()
    assert is_exact(comparison.src)


def test_chain_isomorphism_tells_apart_complexes_with_equal_terms(z):
    k = FPModule.cyclic(z, 2)
    split = direct_sum_complexes([sphere(0, k), sphere(1, k)], z)
    assert chain_isomorphism(disk(1, k), disk(1, k)).is_isomorphism()
    # same terms in every degree, but one is exact and the other is not
    assert chain_isomorphism(disk(1, k), split) is None


def test_bar_tensor_divides_out_boundaries(z):
    k = FPModule.cyclic(z, 2)
    barred = bar_tensor(disk(1, FPModule.free(z, 1)), sphere(0, k))
    assert barred.term(0).is_zero()
    assert str(barred.term(1)) == "Z/2"
    assert str(bar_tensor(sphere(0, k), sphere(0, k)).term(0)) == "Z/2"


def test_hom_prime_of_spheres(z):
    h = hom_prime(sphere(0, FPModule.cyclic(z, 4)), sphere(1, FPModule.cyclic(z, 6)))
    assert (h.lo, h.hi) == (1, 1)
    assert str(h.term(1)) == "Z/2"


def test_bar_hom_degree_zero_counts_chain_maps():
    k = RingDesc.mod(2)
    s = sphere(0, FPModule.free(k, 1))
    complex_ = bar_hom_complex(s, s)
    assert str(complex_.complex.term(0)) == "Z/2"
    [identity] = complex_.chain_maps()
    assert identity.is_isomorphism()
    # a chain map D¹ → S⁰ vanishes in degree 1, hence everywhere
    assert bar_hom(disk(1, FPModule.free(k, 1)), s).term(0).is_zero()


def test_pontryagin_dual_of_a_disk(z):
    plus = pontryagin(disk(1, FPModule.cyclic(z, 2)))
    assert (plus.lo, plus.hi) == (-2, -1)
    assert str(plus.term(-1)) == "Z/2"
    assert str(plus.term(-2)) == "Z/2"


@pytest.mark.parametrize("modulus", [4, 6])
def test_pontryagin_comparison_is_an_isomorphism(modulus, rng):
    ring = RingDesc.mod(modulus)
    for _ in range(5):
        x = random_complex(rng, ring)
        assert pontryagin_comparison(x).is_isomorphism(), x.describe()


def test_ext_ch_of_field_spheres():
    k = FPModule.free(RingDesc.mod(2), 1)
    assert str(ext_ch(1, sphere(0, k), sphere(-1, k))) == "Z/2"
    assert ext_ch(1, sphere(0, k), sphere(0, k)).is_zero()
    assert str(ext_ch(0, sphere(0, k), sphere(0, k))) == "Z/2"
    with pytest.raises(ValueError):
        ext_ch(-1, sphere(0, k), sphere(0, k))


def test_disks_bridge_to_module_ext(z4, rng):
    for _ in range(10):
        x, w = random_complex(rng, z4, 1), random_module(rng, z4)
        for m in x.degrees():
            bridged = ext_ch(1, x, disk(m + 1, w)).canonical
            assert bridged == ext(1, x.term(m), w).value.canonical, f"degree {m} of {x.describe()}"


def test_bar_ext_is_indexed_by_suspension(z4, rng):
    for _ in range(4):
        x, y = random_complex(rng, z4, 1), random_complex(rng, z4, 1)
        barred = bar_ext(1, x, y)
        for n in barred.degrees():
            expected = ext_ch(1, x, suspension(-n, y)).canonical
            assert barred.term(n).canonical == expected, f"degree {n}"
        assert bar_ext_orthogonal(x, y).agrees


def test_bar_tor_of_field_spheres():
    k = FPModule.free(RingDesc.mod(2), 1)
    barred = bar_tor(1, sphere(0, k), sphere(0, k))
    assert str(barred.term(-1)) == "Z/2"
    assert all(barred.term(n).is_zero() for n in barred.degrees() if n != -1)


def test_bar_tor_is_symmetric(z4, rng):
    for _ in range(3):
        x, y = random_complex(rng, z4, 1), random_complex(rng, z4, 1)
        left, right = bar_tor(1, x, y), bar_tor(1, y, x)
        for n in range(min(left.lo, right.lo), max(left.hi, right.hi) + 1):
            assert left.term(n).canonical == right.term(n).canonical, f"degree {n}"


def test_bar_ext_against_dual_is_dual_of_bar_tor(z4, rng):
    for _ in range(3):
        x, y = random_complex(rng, z4, 1), random_complex(rng, z4, 1)
        left = bar_ext(1, x, pontryagin(y))
        right = pontryagin(bar_tor(1, x, y))
        comparison = chain_isomorphism(left, right)
        assert comparison is not None, f"{x.describe()} / {y.describe()}"
        assert comparison.is_isomorphism()


def test_disk_resolutions(z, z4):
    free_disk = disk(1, FPModule.free(z, 1))
    resolution = disk_resolution(free_disk, 3)
    assert resolution.complete
    assert resolution.length == 0
    long = disk_resolution(sphere(0, FPModule.cyclic(z4, 2)), 2)
    assert not long.complete
    long.verify()


def test_projective_dimension_of_complexes(z):
    assert pd_complex(disk(1, FPModule.free(z, 1))) == 0
    assert pd_complex(disk(1, FPModule.cyclic(z, 2))) == 1
    assert pd_complex(sphere(0, FPModule.free(z, 1))) == INFINITE
