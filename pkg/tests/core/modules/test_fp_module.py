import pytest

from core.linear.exact_linear import ExactMatrix, RingDesc
from core.modules.fp_module import (
    CanonicalForm,
    FPModule,
    ModuleHom,
    ShortExactSequence,
    canonical_form,
    cokernel,
    direct_sum,
    image,
    kernel,
    tensor_homs,
    tensor_modules,
)
from shared.errors import DimensionMismatchError, InvariantViolationError, RingMismatchError


def test_canonical_form_over_z(z):
    m = FPModule(z, 2, ExactMatrix.from_rows(z, [[2, 0], [0, 4]]))
    assert m.canonical == CanonicalForm((2, 4))
    assert str(m) == "Z/2 ⊕ Z/4"
    assert canonical_form(m).factors == (2, 4)


def test_canonical_form_mixes_coprime_factors(z):
    m = FPModule.from_factors(z, [2, 3], free_rank=2)
    assert m.canonical == CanonicalForm((6,), 2)
    assert str(m) == "Z/6 ⊕ Z^2"


def test_coker_2_over_z4(z4):
    m = FPModule(z4, 1, ExactMatrix.from_rows(z4, [[2]]))
    assert str(m) == "Z/2"
    assert m.canonical.cardinality == 2


def test_free_module_over_z_mod_m_is_cyclic_of_order_m(z4):
    assert FPModule.free(z4, 2).canonical == CanonicalForm((4, 4))


def test_zero_module(z):
    assert FPModule.zero(z).is_zero()
    assert FPModule.cyclic(z, 1).is_zero()
    assert str(FPModule.zero(z)) == "0"


def test_relation_rows_must_match_generators(z):
    with pytest.raises(DimensionMismatchError):
        FPModule(z, 2, ExactMatrix.from_rows(z, [[2]]))


def test_relations_over_another_ring(z, z4):
    with pytest.raises(RingMismatchError):
        FPModule(z, 1, ExactMatrix.from_rows(z4, [[2]]))


def test_hom_must_be_well_defined(z):
    # 1 ↦ 1 does not send the relation 2 of Z/2 into the relations of Z
    with pytest.raises(InvariantViolationError):
        ModuleHom(FPModule.cyclic(z, 2), FPModule.free(z, 1), ExactMatrix.from_rows(z, [[1]]))


def test_kernel_image_cokernel_of_doubling(z4):
    r = FPModule.free(z4, 1)
    doubling = ModuleHom(r, r, ExactMatrix.from_rows(z4, [[2]]))
    assert str(kernel(doubling).module) == "Z/2"
    assert str(image(doubling).module) == "Z/2"
    assert str(cokernel(doubling).dst) == "Z/2"
    assert not doubling.is_injective()
    assert not doubling.is_surjective()


def test_direct_sum_and_tensor(z):
    a, b = FPModule.cyclic(z, 4), FPModule.cyclic(z, 6)
    assert str(direct_sum([a, b])) == "Z/2 ⊕ Z/12"
    assert str(tensor_modules(a, b)) == "Z/2"
    assert str(tensor_modules(a, FPModule.free(z, 2))) == "Z/4 ⊕ Z/4"


def test_tensoring_an_inclusion_with_a_cyclic_module(z):
    # 2Z ⊆ Z becomes the zero map after tensoring with Z/2
    r = FPModule.free(z, 1)
    doubling = ModuleHom(r, r, ExactMatrix.from_rows(z, [[2]]))
    z_2 = FPModule.cyclic(z, 2)
    tensored = tensor_homs(doubling, ModuleHom.identity(z_2))
    assert doubling.is_injective()
    assert not tensored.is_injective()


def test_short_exact_sequence_verification(z):
    r = FPModule.free(z, 1)
    doubling = ModuleHom(r, r, ExactMatrix.from_rows(z, [[2]]))
    ses = ShortExactSequence.from_inclusion(doubling)
    assert str(ses.quotient) == "Z/2"
    assert not ses.is_split()


def test_split_sequence(z4):
    ambient = FPModule.from_factors(z4, [2, 4])
    summand = ModuleHom(FPModule.cyclic(z4, 2), ambient, ExactMatrix.from_rows(z4, [[1], [0]]))
    ses = ShortExactSequence.from_inclusion(summand)
    assert ses.is_split()
    assert str(ses.quotient) == "Z/4"


@pytest.mark.parametrize("ring", [RingDesc.integers(), RingDesc.mod(4), RingDesc.mod(6)], ids=str)
def test_canonical_form_is_presentation_independent(ring, rng):
    for _ in range(15):
        a = ExactMatrix.from_rows(ring, [[rng.randint(-6, 6) for _ in range(2)] for _ in range(2)])
        u = ExactMatrix.from_rows(ring, [[1, rng.randint(-3, 3)], [0, 1]])
        m = FPModule(ring, 2, a)
        changed = FPModule(ring, 2, u @ a)
        assert m.canonical == changed.canonical, f"{a.literal()} changed by row operation"
