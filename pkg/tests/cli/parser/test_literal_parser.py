import pytest

from cli.parser.literal_parser import LiteralParser, is_name, parse_literal
from core.complexes.chain_complex import ChainComplex, disk
from core.graded.graded_bridge import GradedAModule
from core.modules.fp_module import FPModule
from plugins.suites.samples import random_complex, random_module
from shared.errors import LiteralParseError

DOCUMENT = """\
# a small suite
ring Z/4
module M = coker [[2]]
complex X = deg 1..0 : [[1]]
amodule K = deg 0..0 : over coker [[2]]
expect gpd M == Gpd = 0 (quasi-Frobenius collapse); pd = ∞
"""


def test_document(z4):
    document = LiteralParser().parse_document(DOCUMENT)
    assert document.ring == z4
    assert str(document.objects["M"]) == "Z/2"
    assert document.objects["X"] == disk(1, FPModule.free(z4, 1))
    assert isinstance(document.objects["K"], GradedAModule)
    [expectation] = document.expectations
    assert expectation.command == "gpd"
    assert expectation.args == ("M",)
    assert expectation.expected == "Gpd = 0 (quasi-Frobenius collapse); pd = ∞"
    assert expectation.line == 6


def test_unknown_names_are_reported_with_their_line():
    document = LiteralParser().parse_document(DOCUMENT)
    with pytest.raises(LiteralParseError) as excinfo:
        document.resolve("N", 9)
    assert excinfo.value.line == 9


def test_boundary_squared_is_reported_at_its_degree():
    text = "ring Z\ncomplex Bad = deg 2..0 : [[1]], [[1]]\n"
    with pytest.raises(LiteralParseError) as excinfo:
        LiteralParser().parse_document(text)
    error = excinfo.value
    assert "degree 2" in error.reason
    assert (error.line, error.column) == (2, 15)


def test_malformed_matrix_points_at_the_offending_character(z):
    with pytest.raises(LiteralParseError) as excinfo:
        LiteralParser(z).parse_module("coker [[2,]]")
    assert excinfo.value.column == 11


@pytest.mark.parametrize(
    "text",
    ["coker [[1.5]]", "coker [[1],[2,3]]", "coker []", "coker [[true]]", "cokernel [[2]]", "free two"],
)
def test_bad_module_literals(text, z):
    with pytest.raises(LiteralParseError):
        LiteralParser(z).parse_module(text)


def test_complex_with_explicit_terms(z):
    x = parse_literal("deg 1..0 : [[2]] over free 1 | coker [[4]]", z)
    assert isinstance(x, ChainComplex)
    assert str(x.term(0)) == "Z/4"
    assert str(x.term(1)) == "Z"


def test_complex_literal_errors(z):
    parser = LiteralParser(z)
    for text in ("deg 0..0 :", "deg 0..1 : [[1]]", "deg 1..0 :", "deg 2..0 : [[1,1]], [[1]]"):
        with pytest.raises(LiteralParseError):
            parser.parse_complex(text)


def test_ring_is_required():
    with pytest.raises(LiteralParseError):
        LiteralParser().parse_module("free 1")
    with pytest.raises(LiteralParseError):
        LiteralParser().parse_document("ring Q\n")


def test_duplicate_declarations():
    with pytest.raises(LiteralParseError) as excinfo:
        LiteralParser().parse_document("ring Z\nmodule M = free 1\nmodule M = free 2\n")
    assert excinfo.value.line == 3


def test_zeros_literal(z):
    m = LiteralParser(z).parse_matrix("zeros(2,0)")
    assert (m.rows, m.cols) == (2, 0)
    assert str(LiteralParser(z).parse_module("coker zeros(2,0)")) == "Z^2"


def test_literals_round_trip(z4, rng):
    parser = LiteralParser(z4)
    for _ in range(20):
        x = random_complex(rng, z4)
        assert parser.parse_complex(x.literal()) == x, x.literal()
        m = random_module(rng, z4)
        assert parser.parse_module(m.literal()) == m, m.literal()


def test_names():
    assert is_name("M_2'")
    assert is_name("coker")
    assert not is_name("[[2]]")
    assert not is_name("2M")
