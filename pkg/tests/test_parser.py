from fractions import Fraction

import pytest

from freeqsg.algebra import AlgebraError
from freeqsg.corpus import make_rng, random_ncexpr
from freeqsg.ncpoly import NCExpr
from freeqsg.parser import (
    ParseError,
    format_expression,
    parse_expression,
    parse_presentation,
    print_presentation,
)
from freeqsg.scalars import QQi


def g(name, starred=False):
    return NCExpr.gen(name, starred)


def test_relation_example():
    got = parse_expression("p - p p - z' z")
    assert got == g("p") - g("p") * g("p") - g("z", True) * g("z")


def test_star_of_product():
    assert parse_expression("(p q)'") == g("q", True) * g("p", True)


def test_scalar_distribution():
    half = QQi(Fraction(1, 2))
    want = NCExpr.scalar(half) - g("u").scale(half)
    assert parse_expression("1/2 (1 - u)") == want


def test_imaginary_coefficients():
    assert parse_expression("i") == NCExpr.scalar(QQi(0, 1))
    assert parse_expression("3/4 i z") == g("z").scale(QQi(0, Fraction(3, 4)))
    assert parse_expression("- i") == NCExpr.scalar(QQi(0, -1))


def test_unit_and_star_precedence():
    assert parse_expression("1") == NCExpr.one()
    assert parse_expression("1'") == NCExpr.one()
    assert parse_expression("p''") == g("p")
    assert parse_expression("p' q") == g("p", True) * g("q")


def test_errors_carry_position():
    with pytest.raises(ParseError) as err:
        parse_expression("p + * q")
    assert err.value.position == 4
    with pytest.raises(ParseError):
        parse_expression("p i q")
    with pytest.raises(ParseError):
        parse_expression("(p")
    with pytest.raises(ParseError):
        parse_expression("1/0")


def test_roundtrip_corpus():
    rng = make_rng(41)
    for _ in range(100):
        e = random_ncexpr(rng)
        assert parse_expression(format_expression(e)) == e
    assert format_expression(NCExpr.zero()) == "0"


def test_presentation_roundtrip():
    text = """
# a three-generator presentation
generator p selfadjoint
generator q selfadjoint
generator z
relation p p + z' z - p
relation q q + z z' - q
"""
    pres = parse_presentation(text)
    printed = print_presentation(pres)
    again = parse_presentation(printed)
    assert print_presentation(again) == printed
    assert [d.name for d in pres.gens] == ["p", "q", "z"]
    assert pres.gens[0].selfadjoint and not pres.gens[2].selfadjoint


def test_presentation_adjoint_pairs():
    text = """
generator a
generator b adjoint_of a
relation a b - 1
"""
    pres = parse_presentation(text)
    assert pres.gens[1].adjoint == "a"
    assert "adjoint_of a" in print_presentation(pres)


def test_presentation_errors():
    with pytest.raises(AlgebraError):
        parse_presentation("generator i selfadjoint")
    with pytest.raises(AlgebraError):
        parse_presentation("generator p\ngenerator p")
    with pytest.raises(AlgebraError):
        parse_presentation("relation p p - p")  # p undeclared
    with pytest.raises(AlgebraError):
        parse_presentation("generator b adjoint_of a")
    with pytest.raises(AlgebraError):
        parse_presentation("frobnicate p")
