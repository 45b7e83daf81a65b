from fractions import Fraction

import pytest

from freeqsg.algebra import (
    AlgebraError,
    OwnerMismatch,
    eval_ncexpr,
    make_cn,
    make_free_star,
    make_matrix_algebra,
)
from freeqsg.ncpoly import GenDecl, NCExpr
from freeqsg.scalars import QQi, qq


def test_cn_is_function_algebra():
    A = make_cn(3)
    e = [A.basis_element(i) for i in range(3)]
    assert e[0] * e[0] == e[0]
    assert (e[0] * e[1]).coords == {}
    assert e[0] + e[1] + e[2] == A.unit()
    assert e[1].star() == e[1]


def test_cn_relations_hold():
    A = make_cn(4)
    assignment = A.presentation.identity_assignment()
    for rel in A.presentation.relations:
        assert eval_ncexpr(rel, assignment, A).coords == {}


def test_matrix_units():
    M = make_matrix_algebra(2)
    E = M.presentation.generator_elements
    assert E["E12"] * E["E21"] == E["E11"]
    assert (E["E12"] * E["E12"]).coords == {}
    assert E["E11"] + E["E22"] == M.unit()
    assert E["E12"].star() == E["E21"]


def test_matrix_relations_hold():
    M = make_matrix_algebra(3)
    assignment = M.presentation.identity_assignment()
    for rel in M.presentation.relations:
        assert eval_ncexpr(rel, assignment, M).coords == {}


def test_unit_split():
    A = make_cn(2)
    x = A.basis_element(0).scale(qq(3)) + A.basis_element(1).scale(qq(5))
    scalar, comp = A.unit_split(x)
    assert scalar == qq(5)
    # the complement coefficients rebuild x on top of scalar * 1
    rebuilt = A.unit().scale(scalar)
    for m, c in comp.items():
        rebuilt = rebuilt + A.complement_element(m).scale(c)
    assert rebuilt == x
    assert comp == {0: qq(-2)}


def test_structural_equality():
    assert make_cn(2) == make_cn(2)
    assert make_cn(2) != make_cn(3)
    assert make_cn(2) != make_matrix_algebra(2)
    assert hash(make_cn(2)) == hash(make_cn(2))


def test_owner_mismatch():
    x = make_cn(2).basis_element(0)
    y = make_cn(3).basis_element(0)
    with pytest.raises(OwnerMismatch):
        x * y


def test_element_arithmetic():
    A = make_cn(2)
    x = A.basis_element(0) - A.basis_element(1).scale(QQi(0, Fraction(1, 2)))
    y = x.star()
    assert y == A.basis_element(0) + A.basis_element(1).scale(QQi(0, Fraction(1, 2)))
    assert (x - x).coords == {}
    assert x * A.unit() == x


def test_free_star_words():
    F = make_free_star([GenDecl("a"), GenDecl("b", selfadjoint=True)])
    a, b = F.gen("a"), F.gen("b")
    assert (a * b) * a == a * (b * a)
    assert (a * b).star() == b * a.star()
    assert b.star() == b


def test_presentation_resolve():
    A = make_cn(2)
    expr = NCExpr.gen("e1", starred=True) - NCExpr.gen("e1")
    assert A.presentation.resolve(expr).is_zero()


def test_presentation_duplicate_names():
    with pytest.raises(AlgebraError):
        from freeqsg.algebra import Presentation

        Presentation([GenDecl("x"), GenDecl("x")], [])
