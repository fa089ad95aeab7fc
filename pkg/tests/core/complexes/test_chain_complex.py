import pytest

from core.complexes.chain_complex import (
    ChainComplex,
    ChainMap,
    disk,
    homology,
    is_exact,
    null_homotopy,
    sphere,
    suspension,
)
from core.linear.exact_linear import ExactMatrix
from core.modules.fp_module import FPModule
from plugins.suites.samples import random_complex
from shared.errors import DimensionMismatchError, InvariantViolationError


def test_sphere_and_disk(z4):
    z_2 = FPModule.cyclic(z4, 2)
    s = sphere(0, z_2)
    assert (s.lo, s.hi) == (0, 0)
    assert str(homology(s, 0).module) == "Z/2"
    assert not is_exact(s)

    d = disk(1, z_2)
    assert (d.lo, d.hi) == (0, 1)
    assert d.boundary(1).is_isomorphism()
    assert is_exact(d)


def test_terms_outside_the_window_are_zero(z):
    d = disk(1, FPModule.free(z, 1))
    assert d.term(5).is_zero()
    assert d.boundary(0).is_zero()
    assert d.boundary(2).is_zero()


def test_boundary_squared_must_vanish(z):
    r = FPModule.free(z, 1)
    one = ExactMatrix.from_rows(z, [[1]])
    with pytest.raises(InvariantViolationError) as excinfo:
        ChainComplex.build(z, 0, [r, r, r], [one, one])
    assert excinfo.value.degree == 2


def test_window_must_match_terms(z):
    r = FPModule.free(z, 1)
    with pytest.raises(DimensionMismatchError):
        ChainComplex(z, 0, 1, (r,), ())


def test_literals(z):
    assert disk(1, FPModule.free(z, 1)).literal() == "deg 1..0 : [[1]]"
    assert sphere(0, FPModule.cyclic(z, 2)).literal() == "deg 0..0 : over coker [[2]]"
    assert disk(2, FPModule.cyclic(z, 3)).literal() == "deg 2..1 : [[1]] over coker [[3]] | coker [[3]]"


def test_suspension_shifts_and_twists_the_boundary(z):
    d = disk(1, FPModule.free(z, 1))
    shifted = suspension(1, d)
    assert (shifted.lo, shifted.hi) == (1, 2)
    assert shifted.boundary(2).mat == ExactMatrix.from_rows(z, [[-1]])
    assert suspension(2, d).boundary(3).mat == ExactMatrix.from_rows(z, [[1]])


def test_suspension_round_trip(z4, rng):
    for _ in range(10):
        x = random_complex(rng, z4)
        for k in (-2, -1, 1, 3):
            assert suspension(-k, suspension(k, x)) == x, f"k = {k} on {x.describe()}"


def test_chain_maps_must_commute(z):
    r = FPModule.free(z, 1)
    d = disk(1, r)
    s = sphere(1, r)
    with pytest.raises(InvariantViolationError):
        # S¹(R) → D¹(R) by the identity in degree 1 ignores ∂ of the disk
        ChainMap.from_matrices(s, d, [ExactMatrix.from_rows(z, [[1]])])
    assert not ChainMap.from_matrices(d, s, [ExactMatrix.zeros(z, 0, 1), ExactMatrix.from_rows(z, [[1]])]).is_zero()


def test_identity_of_a_disk_is_null_homotopic(z4):
    d = disk(1, FPModule.cyclic(z4, 2))
    homotopy = null_homotopy(ChainMap.identity(d))
    assert homotopy is not None
    assert homotopy.component(0).is_isomorphism()


def test_identity_of_a_sphere_is_not_null_homotopic(z4):
    s = sphere(0, FPModule.cyclic(z4, 2))
    assert null_homotopy(ChainMap.identity(s)) is None
    assert null_homotopy(ChainMap.zero(s, s)) is not None
