import pytest

from core.linear.exact_linear import (
    ExactMatrix,
    RingDesc,
    kernel_generators,
    snf,
    solve,
    solve_vector,
)
from shared.errors import DimensionMismatchError

RINGS = [RingDesc.integers(), RingDesc.mod(4), RingDesc.mod(6), RingDesc.mod(12)]


def test_ring_parse_and_reject():
    assert RingDesc.parse("Z") == RingDesc.integers()
    assert RingDesc.parse(" Z/6 ") == RingDesc.mod(6)
    assert str(RingDesc.mod(4)) == "Z/4"
    with pytest.raises(ValueError):
        RingDesc.parse("Q")
    with pytest.raises(ValueError):
        RingDesc.mod(1)


def test_entries_are_reduced_over_z_mod_m(z4):
    m = ExactMatrix.from_rows(z4, [[5, -1]])
    assert m.entries == (1, 3)
    assert m == ExactMatrix.from_rows(z4, [[1, 3]])


def test_product_shape_mismatch(z):
    a = ExactMatrix.from_rows(z, [[1, 2]])
    with pytest.raises(DimensionMismatchError):
        a @ a


def test_snf_identity(z):
    result = snf(ExactMatrix.identity(z, 2))
    assert result.diagonal == (1, 1)
    assert result.u @ result.a @ result.v == result.d


def test_snf_diag_2_3_over_z(z):
    a = ExactMatrix.from_rows(z, [[2, 0], [0, 3]])
    result = snf(a)
    assert result.diagonal == (1, 6)
    assert result.u @ a @ result.v == result.d


def test_snf_already_diagonal_over_z4(z4):
    result = snf(ExactMatrix.from_rows(z4, [[2]]))
    assert result.d == ExactMatrix.from_rows(z4, [[2]])


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_snf_invariants_on_random_matrices(ring, rng):
    for _ in range(25):
        rows, cols = rng.randint(1, 4), rng.randint(1, 4)
        a = ExactMatrix.from_rows(ring, [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)])
        result = snf(a)
        assert result.u @ a @ result.v == result.d, f"u·a·v != d for {a.literal()}"
        assert result.u @ result.u_inv == ExactMatrix.identity(ring, rows)
        assert result.v @ result.v_inv == ExactMatrix.identity(ring, cols)
        diagonal = [e for e in result.diagonal if e]
        for d, e in zip(diagonal, diagonal[1:]):
            assert e % d == 0, f"{d} does not divide {e} in {result.diagonal}"


def test_snf_of_empty_matrix(z):
    result = snf(ExactMatrix.zeros(z, 0, 3))
    assert result.diagonal == ()
    assert result.rank == 0


def test_solve_parity_over_z(z):
    a = ExactMatrix.from_rows(z, [[2]])
    assert solve_vector(a, [1]) is None


def test_solve_over_z4(z4):
    a = ExactMatrix.from_rows(z4, [[2]])
    x = solve_vector(a, [2])
    assert x in ((1,), (3,))


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_solve_reverifies(ring, rng):
    for _ in range(20):
        a = ExactMatrix.from_rows(ring, [[rng.randint(-5, 5) for _ in range(3)] for _ in range(2)])
        x = ExactMatrix.column_vector(ring, [rng.randint(-5, 5) for _ in range(3)])
        b = a @ x
        found = solve(a, b)
        assert found is not None, f"no solution found for a consistent system {a.literal()}"
        assert a @ found == b


def test_kernel_of_unit_is_trivial(z):
    assert kernel_generators(ExactMatrix.from_rows(z, [[1]])).cols == 0


def test_kernel_over_z4_includes_torsion(z4):
    a = ExactMatrix.from_rows(z4, [[2]])
    k = kernel_generators(a)
    assert k.cols == 1
    assert k.column(0) == (2,)


def test_kernel_over_z(z):
    k = kernel_generators(ExactMatrix.from_rows(z, [[2, -2]]))
    assert k.columns() == [(1, 1)]


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_kernel_generators_are_solutions(ring, rng):
    for _ in range(20):
        a = ExactMatrix.from_rows(ring, [[rng.randint(-6, 6) for _ in range(3)] for _ in range(2)])
        k = kernel_generators(a)
        assert (a @ k).is_zero(), f"kernel generator not killed by {a.literal()}"
