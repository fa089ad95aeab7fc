import pytest

from core.linear.exact_linear import ExactMatrix
from core.modules.dimensions import (
    INFINITE,
    format_dimension,
    flat_dimension,
    injective_dimension,
    is_flat,
    projective_dimension,
    stable_form,
)
from core.modules.duality import character_dual, double_dual_unit, dual_sequence
from core.modules.fp_module import CanonicalForm, FPModule, ModuleHom, ShortExactSequence, subquotient
from core.modules.hom_space import hom_module
from core.modules.purity import InclusionWitness, is_w_pure, w_test_family
from core.modules.resolutions import (
    cosyzygy,
    free_resolution,
    injective_envelope,
    projective_cover,
    syzygy,
)
from shared.errors import PreconditionError, UnsupportedRingError


def test_hom_spaces(z, z4):
    assert str(hom_module(FPModule.cyclic(z4, 2), FPModule.cyclic(z4, 4)).module) == "Z/2"
    assert str(hom_module(FPModule.cyclic(z, 4), FPModule.cyclic(z, 6)).module) == "Z/2"
    assert hom_module(FPModule.cyclic(z, 3), FPModule.free(z, 1)).module.is_zero()


def test_hom_space_coordinates_round_trip(z):
    space = hom_module(FPModule.from_factors(z, [2, 4]), FPModule.cyclic(z, 4))
    for f in space.basis:
        coords = space.coordinates(f)
        assert space.hom(coords).equals(f), f"basis hom {f.mat.literal()} lost its coordinates"


def test_free_resolution_of_z2_over_z4_never_ends(z4):
    resolution = free_resolution(FPModule.cyclic(z4, 2), 3)
    assert resolution.length == 3
    assert not resolution.complete
    assert all(t.gens == 1 for t in resolution.terms)


def test_free_resolution_over_z_stops_after_one_step(z):
    resolution = free_resolution(FPModule.cyclic(z, 6), 4)
    assert resolution.complete
    assert resolution.length == 1


def test_syzygies(z, z4, z6):
    assert syzygy(FPModule.cyclic(z, 2), 1).canonical == CanonicalForm((), 1)
    assert str(syzygy(FPModule.cyclic(z4, 2), 1)) == "Z/2"
    assert str(syzygy(FPModule.cyclic(z4, 2), 2)) == "Z/2"
    assert syzygy(FPModule.cyclic(z6, 2), 1).is_zero()
    with pytest.raises(ValueError):
        syzygy(FPModule.cyclic(z4, 2), 0)


def test_projective_dimensions(z, z4, z6):
    assert projective_dimension(FPModule.free(z, 2)) == 0
    assert projective_dimension(FPModule.cyclic(z, 2)) == 1
    assert projective_dimension(FPModule.cyclic(z4, 2)) == INFINITE
    assert projective_dimension(FPModule.cyclic(z6, 2)) == 0
    assert format_dimension(INFINITE) == "∞"
    assert format_dimension(1) == "1"


def test_injective_dimension_over_z_is_refused(z, z4):
    assert injective_dimension(FPModule.free(z4, 1)) == 0
    with pytest.raises(UnsupportedRingError):
        injective_dimension(FPModule.cyclic(z, 2))


def test_stable_form_strips_projective_summands(z4, z):
    assert stable_form(FPModule.from_factors(z4, [2, 4])) == CanonicalForm((2,))
    assert stable_form(FPModule.from_factors(z, [2], free_rank=1)) == CanonicalForm((2,))


def test_cover_and_envelope_over_z4(z4):
    m = FPModule.cyclic(z4, 2)
    cover = projective_cover(m)
    assert cover.is_surjective()
    assert projective_dimension(cover.src) == 0
    envelope = injective_envelope(m)
    assert envelope.is_injective()
    assert str(envelope.dst) == "Z/4"
    assert str(cosyzygy(m, 1)) == "Z/2"


def test_envelope_is_the_dual_of_the_cover_of_the_dual(z4, z6):
    for ring in (z4, z6):
        for m in (FPModule.cyclic(ring, 2), FPModule.from_factors(ring, [2, ring.modulus])):
            expected = character_dual(projective_cover(character_dual(m)).src)
            assert injective_envelope(m).dst.canonical == expected.canonical, f"{m} over {ring}"


def test_covers_are_refused_over_z(z):
    with pytest.raises(UnsupportedRingError):
        projective_cover(FPModule.cyclic(z, 2))
    with pytest.raises(UnsupportedRingError):
        cosyzygy(FPModule.cyclic(z, 2), 1)


def test_character_duals(z, z4):
    m = FPModule.from_factors(z, [2, 4])
    assert character_dual(m).canonical == m.canonical
    assert double_dual_unit(m).is_isomorphism()
    assert str(character_dual(FPModule.cyclic(z4, 2))) == "Z/2"
    with pytest.raises(PreconditionError):
        character_dual(FPModule.free(z, 1))


def test_dual_of_a_short_exact_sequence(z):
    r = FPModule.cyclic(z, 4)
    doubling = ModuleHom(FPModule.cyclic(z, 2), r, ExactMatrix.from_rows(z, [[2]]))
    dual = dual_sequence(ShortExactSequence.from_inclusion(doubling))
    assert str(dual.sub) == "Z/2"
    assert str(dual.middle) == "Z/4"


def _inclusion(ambient: FPModule, vector) -> InclusionWitness:
    generators = ExactMatrix.column_vector(ambient.ring, vector)
    return InclusionWitness.of(subquotient(ambient, generators).inclusion)


def test_purity_over_z(z):
    assert not is_w_pure(_inclusion(FPModule.free(z, 1), [2]))
    assert not is_w_pure(_inclusion(FPModule.cyclic(z, 4), [2]))
    assert is_w_pure(_inclusion(FPModule.from_factors(z, [2, 4]), [1, 0]))
    assert is_w_pure(_inclusion(FPModule.free(z, 2), [1, 3]))


def test_purity_test_family_includes_quotient_exponents(z):
    family = w_test_family(_inclusion(FPModule.free(z, 1), [2]))
    assert [str(t) for t in family] == ["Z", "Z/2"]


def test_flatness(z, z4):
    assert is_flat(FPModule.free(z, 3))
    assert not is_flat(FPModule.cyclic(z, 2))
    assert flat_dimension(FPModule.cyclic(z, 2)) == 1
    assert is_flat(FPModule.cyclic(z4, 4))
    assert flat_dimension(FPModule.cyclic(z4, 2)) == INFINITE
