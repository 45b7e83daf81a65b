import pytest

from freeqsg.algebra import AlgebraError, make_cn
from freeqsg.morphism import compose, iota_morphism
from freeqsg.qsg import (
    FiniteGroup,
    QuantumSemigroup,
    c2star2,
    c2star2_characters,
    c2star2_generators,
    character,
    character_monoid,
    check_coassociativity,
    check_counit,
    check_qsg_morphism,
    composition_qsg_qmap2,
    counit_of_free_product,
    cyclic_group,
    derive_noqg_relations,
    free_product_qsg,
    group_function_qsg,
    is_group,
    monoid_identity,
    noqg_presentation,
    quantum_family_of_maps,
    scalar_of,
    tensor_elem_first,
    trivial_qsg,
    verify_gamma_equals_delta,
)
from freeqsg.scalars import QQi


def test_finite_group_validation():
    cyclic_group(4)
    with pytest.raises(AlgebraError):
        FiniteGroup(((0, 1), (1, 1)))  # no inverses row


def test_group_function_qsg_coassociative():
    for n in (2, 3, 4):
        qsg, eps = group_function_qsg(cyclic_group(n))
        assert check_coassociativity(qsg.comult).ok
        assert check_counit(qsg, eps).ok


def test_trivial_qsg():
    qsg = trivial_qsg(make_cn(3))
    assert check_coassociativity(qsg.comult).ok


def test_quantum_family_images():
    A = make_cn(2)
    C, Phi = quantum_family_of_maps(A, 2)
    p, q = c2star2_generators(C)
    T = Phi.codomain
    B = T.legs[0]
    want = tensor_elem_first(T, B.basis_element(0), p) + tensor_elem_first(
        T, B.basis_element(1), q
    )
    assert Phi.images["e1"] == want
    assert Phi.images["e2"] == T.unit() - want
    assert Phi.check_well_defined().ok


def test_free_product_qsg_mixed_factors():
    qsgs = [group_function_qsg(cyclic_group(n))[0] for n in (2, 3)]
    D = free_product_qsg(qsgs)
    assert check_coassociativity(D.comult).ok
    for k, factor in enumerate(qsgs):
        assert check_qsg_morphism(iota_morphism(D.algebra, k), factor, D).ok


def test_gamma_equals_delta_small():
    qsg, _ = group_function_qsg(cyclic_group(2))
    assert verify_gamma_equals_delta(qsg, 2).ok


def test_counit_of_free_product():
    pairs = [group_function_qsg(cyclic_group(2)) for _ in range(2)]
    D = free_product_qsg([p[0] for p in pairs])
    eps = counit_of_free_product([p[1] for p in pairs], D.algebra)
    assert check_counit(D, eps).ok
    for k, (_qsg, eps_k) in enumerate(pairs):
        assert compose(eps, iota_morphism(D.algebra, k)) == eps_k


def test_composition_structure():
    comp = composition_qsg_qmap2()
    assert check_coassociativity(comp.comult).ok
    free = free_product_qsg([group_function_qsg(cyclic_group(2))[0]] * 2)
    assert free.comult.images["e1@1"] != comp.comult.images["e1@1"]
    eps = character(
        comp.algebra, {"e1@1": 1, "e2@1": 0, "e1@2": 0, "e2@2": 1}
    )
    assert check_counit(comp, eps).ok


def test_character_monoids():
    C = c2star2()
    chars = c2star2_characters(C)
    free = free_product_qsg([group_function_qsg(cyclic_group(2))[0]] * 2)
    comp = composition_qsg_qmap2()
    table_free = character_monoid(free, chars)
    table_comp = character_monoid(comp, chars)
    assert is_group(table_free)
    assert monoid_identity(table_free) == 3
    assert not is_group(table_comp)
    assert monoid_identity(table_comp) == 2
    # composition convolution is constant-on-the-left absorbing at chi_00
    assert table_comp[0] == [0, 3, 0, 3]


def test_scalar_of():
    S = make_cn(1)
    assert scalar_of(S.unit().scale(QQi(7))) == QQi(7)
    with pytest.raises(AlgebraError):
        scalar_of(make_cn(2).unit())


def test_noqg_entries_match_presentation():
    pres = noqg_presentation()
    idem, adj = derive_noqg_relations()
    assert idem[(1, 1)] == pres.relations[0]
    assert idem[(2, 2)] == pres.relations[1]
    assert idem[(2, 1)] == pres.relations[2]
    assert idem[(1, 2)] == pres.relations[3]
    assert all(e.is_zero() for e in adj.values())
    assert pres.resolve(idem[(2, 1)].star()) == idem[(1, 2)]


def test_qsg_constructor_rejects_bad_comult():
    from freeqsg.morphism import Morphism
    from freeqsg.qsg import comult_codomain
    from freeqsg.products import leg_embed

    A = make_cn(2)
    T = comult_codomain(A)
    # a (x) 1 on e1 but 1 (x) a on e2 is not even well defined
    bad = Morphism(
        A,
        T,
        {"e1": leg_embed(T, 0, A.basis_element(0)),
         "e2": leg_embed(T, 1, A.basis_element(1))},
    )
    with pytest.raises(AlgebraError):
        QuantumSemigroup(A, bad)
