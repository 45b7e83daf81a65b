import pytest

from freeqsg.algebra import make_cn, make_matrix_algebra
from freeqsg.corpus import make_rng, random_element, random_rational_projection
from freeqsg.morphism import (
    Morphism,
    NotAHomomorphism,
    compose,
    decompose_over_cn,
    factor_through_free_product,
    identity_morphism,
    iota_morphism,
    morphisms_agree_on_generators,
    mu,
    pi,
    reassemble_over_cn,
    tensor_morphisms,
    unital_embed,
)
from freeqsg.products import free_product, tensor
from freeqsg.qsg import c2star2, quantum_family_of_maps, tensor_elem_first


def test_identity_and_compose():
    A = make_cn(3)
    ident = identity_morphism(A)
    assert compose(ident, ident) == ident
    x = A.basis_element(1) - A.basis_element(2)
    assert ident.eval(x) == x


def test_well_defined_rejects_bad_images():
    A = make_cn(2)
    B = make_cn(2)
    # sending both minimal projections to the same projection breaks
    # orthogonality
    bad = Morphism(A, B, {"e1": B.basis_element(0), "e2": B.basis_element(0)})
    verdict = bad.check_well_defined()
    assert not verdict.ok and verdict.failures


def test_morphism_multiplicative():
    C = c2star2()
    fold = pi(C)
    rng = make_rng(21)
    for _ in range(100):
        u = random_element(rng, C, max_len=3)
        v = random_element(rng, C, max_len=3)
        assert fold.eval(u * v) == fold.eval(u) * fold.eval(v)
        assert fold.eval(u.star()) == fold.eval(u).star()


def test_factor_through_free_product_sections():
    A = make_cn(2)
    M2 = make_matrix_algebra(2)
    rng = make_rng(22)
    C = free_product([A, A])
    P0 = random_rational_projection(rng, M2)
    P1 = random_rational_projection(rng, M2)
    psi0 = Morphism(A, M2, {"e1": P0, "e2": M2.unit() - P0})
    psi1 = Morphism(A, M2, {"e1": P1, "e2": M2.unit() - P1})
    lam = factor_through_free_product(C, [psi0, psi1])
    assert lam.check_well_defined().ok
    for k, psi in enumerate([psi0, psi1]):
        assert compose(lam, iota_morphism(C, k)) == psi


def test_decompose_reassemble_roundtrip():
    A = make_cn(2)
    _C, Phi = quantum_family_of_maps(A, 3)
    parts = decompose_over_cn(Phi)
    back = reassemble_over_cn(parts, Phi.codomain)
    assert back == Phi


def test_tensor_morphisms():
    A = make_cn(2)
    ident = identity_morphism(A)
    T = tensor([A, A])
    both = tensor_morphisms([ident, ident])
    x = tensor_elem_first(T, A.basis_element(0), A.basis_element(1))
    assert both.eval(x) == x


def test_mu_rejects_matrices():
    with pytest.raises(NotAHomomorphism):
        mu(make_matrix_algebra(2))


def test_mu_accepts_commutative():
    A = make_cn(2)
    m = mu(A)
    T = tensor([A, A])
    x = tensor_elem_first(T, A.basis_element(0), A.basis_element(0))
    assert m.eval(x) == A.basis_element(0)


def test_unital_embed():
    A = make_cn(2)
    emb = unital_embed(A, A)  # a -> 1 (x) a
    T = emb.codomain
    assert emb.check_well_defined().ok
    assert emb.eval(A.unit()) == T.unit()
    assert emb.eval(A.basis_element(0)) == tensor_elem_first(
        T, A.unit(), A.basis_element(0)
    )


def test_agreement_check():
    A = make_cn(2)
    ident = identity_morphism(A)
    swapped = Morphism(A, A, {"e1": A.basis_element(1), "e2": A.basis_element(0)})
    assert morphisms_agree_on_generators(ident, ident).ok
    assert not morphisms_agree_on_generators(ident, swapped).ok
