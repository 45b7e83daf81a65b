"""Quantum semigroup structures and exact identity checkers.

Constructors for every comultiplication used in the verification suites
(group function algebras, free products, the map-composition structure
on C^2 * C^2, trivial structures) and checkers for coassociativity,
counit axioms, quantum semigroup morphisms, character monoids, and the
universal three-generator presentation with its matrix realization.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    AlgebraError,
    AlgebraObject,
    Element,
    Presentation,
    make_cn,
    make_free_star,
    make_matrix_algebra,
)
from .morphism import (
    CheckResult,
    Morphism,
    compose,
    factor_through_free_product,
    identity_morphism,
    iota_morphism,
    pi,
    tensor_elem_first,
    tensor_morphisms,
)
from .ncpoly import GenDecl, NCExpr
from .products import (
    FreeProductAlgebra,
    flip_legs,
    free_product,
    leg_embed,
    mul_legs01,
    split_first_leg,
    strip_scalar_leg,
    tensor,
)
from .scalars import ONE, QQi, qq

# ---------------------------------------------------------------------------
# finite groups


@dataclass(frozen=True)
class FiniteGroup:
    """Finite group by multiplication table: table[g][h] = g*h."""

    table: tuple

    def __post_init__(self):
        n = len(self.table)
        for row in self.table:
            if len(row) != n or any(not 0 <= x < n for x in row):
                raise AlgebraError("invalid multiplication table")
        if self.identity() is None:
            raise AlgebraError("table has no identity element")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                        raise AlgebraError("table is not associative")
        e = self.identity()
        for a in range(n):
            if not any(self.table[a][b] == e and self.table[b][a] == e for b in range(n)):
                raise AlgebraError(f"element {a} has no inverse")

    @property
    def order(self) -> int:
        return len(self.table)

    def identity(self):
        n = len(self.table)
        for e in range(n):
            if all(self.table[e][a] == a and self.table[a][e] == a for a in range(n)):
                return e
        return None

    def inverse(self, a: int) -> int:
        e = self.identity()
        for b in range(self.order):
            if self.table[a][b] == e:
                return b
        raise AlgebraError("no inverse")


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)))


# ---------------------------------------------------------------------------
# quantum semigroups


class QuantumSemigroup:
    """A pair (C, Delta) with Delta: C -> C (x) C well defined and
    coassociative; both facts are machine-checked at construction unless
    check=False."""

    def __init__(self, algebra: AlgebraObject, comult: Morphism, check=True):
        self.algebra = algebra
        self.comult = comult
        if check:
            verdict = check_coassociativity(comult)
            if not verdict.ok:
                raise AlgebraError(
                    f"comultiplication rejected: {verdict.describe()}"
                )

    def __repr__(self):
        return f"QuantumSemigroup({self.algebra!r})"


def comult_codomain(C: AlgebraObject):
    return tensor([C, C])


def check_coassociativity(delta: Morphism) -> CheckResult:
    """(Delta (x) id) o Delta = (id (x) Delta) o Delta, generator-wise;
    ill-definedness of Delta is reported first."""
    wd = delta.check_well_defined()
    if not wd.ok:
        return CheckResult(False, [("comultiplication ill-defined", f)
                                   for f in wd.failures])
    C = delta.domain
    ident = identity_morphism(C)
    lhs = compose(tensor_morphisms([delta, ident]), delta)
    rhs = compose(tensor_morphisms([ident, delta]), delta)
    failures = []
    for name in C.presentation.by_name:
        diff = lhs.images[name] - rhs.images[name]
        if not diff.is_zero():
            failures.append((name, diff))
    return CheckResult(not failures, failures)


def group_function_qsg(G: FiniteGroup) -> tuple:
    """Functions on a finite group with Delta(d_g) = sum_h d_h (x)
    d_{h^-1 g}; returns (QuantumSemigroup, counit = evaluation at the
    identity)."""
    n = G.order
    A = make_cn(n)
    T = comult_codomain(A)
    names = [f"e{i + 1}" for i in range(n)]
    images = {}
    for g in range(n):
        total = T.zero()
        for h in range(n):
            k = G.table[G.inverse(h)][g]
            total = total + tensor_elem_first(T, A.basis_element(h), A.basis_element(k))
        images[names[g]] = total
    delta = Morphism(A, T, images)
    qsg = QuantumSemigroup(A, delta)
    e = G.identity()
    scalars = make_cn(1)
    eps = Morphism(
        A,
        scalars,
        {names[g]: scalars.unit() if g == e else scalars.zero() for g in range(n)},
    )
    return qsg, eps


def trivial_qsg(A: AlgebraObject) -> QuantumSemigroup:
    """Delta(a) = a (x) 1: every algebra carries this structure."""
    T = comult_codomain(A)
    images = {
        name: leg_embed(T, 0, elem)
        for name, elem in A.presentation.generator_elements.items()
    }
    return QuantumSemigroup(A, Morphism(A, T, images))


# ---------------------------------------------------------------------------
# the quantum family of all maps and its comultiplications


def quantum_family_of_maps(A: AlgebraObject, n: int):
    """Returns (C, Phi) with C the n-fold free product of A and
    Phi(a) = sum_i e_i (x) iota_i(a)."""
    if n < 1:
        raise AlgebraError("n must be >= 1")
    C = free_product([A] * n)
    B = make_cn(n)
    T = tensor([B, C])
    images = {}
    for name, elem in A.presentation.generator_elements.items():
        total = T.zero()
        for i in range(n):
            total = total + tensor_elem_first(T, B.basis_element(i), C.embed(i, elem))
        images[name] = total
    return C, Morphism(A, T, images)


def free_product_qsg(qsgs) -> QuantumSemigroup:
    """Free product of quantum semigroups: the unique Delta on the free
    product making every inclusion a quantum semigroup morphism."""
    if not qsgs:
        raise AlgebraError("need at least one factor")
    for q in qsgs:
        verdict = check_coassociativity(q.comult)
        if not verdict.ok:
            raise AlgebraError(f"factor comultiplication rejected: {verdict.describe()}")
    C = free_product([q.algebra for q in qsgs])
    T = comult_codomain(C)
    images = {}
    for k, q in enumerate(qsgs):
        ik = iota_morphism(C, k)
        iikk = tensor_morphisms([ik, ik])
        for name, dimg in q.comult.images.items():
            images[f"{name}@{k + 1}"] = iikk.eval(dimg)
    return QuantumSemigroup(C, Morphism(C, T, images))


def sadr_comultiplication(a_qsg: QuantumSemigroup, n: int) -> Morphism:
    """The comultiplication obtained by pushing Delta_A through the
    universal family: (mu (x) id (x) id)(id (x) flip (x) id)(Phi (x) Phi)
    composed with Delta_A, decomposed over the C^n leg."""
    A = a_qsg.algebra
    C, Phi = quantum_family_of_maps(A, n)
    phiphi = tensor_morphisms([Phi, Phi])
    images = {}
    for name in A.presentation.by_name:
        X = a_qsg.comult.images[name]  # in A (x) A
        Y = phiphi.eval(X)  # B (x) C (x) B (x) C
        Y = flip_legs(Y, 1, 2)  # B (x) B (x) C (x) C
        Y = mul_legs01(Y)  # B (x) C (x) C
        parts = split_first_leg(Y)
        CC = comult_codomain(C)
        for k in range(n):
            images[f"{name}@{k + 1}"] = parts.get(k, CC.zero())
        extra = [i for i in parts if not 0 <= i < n]
        if extra:
            raise AlgebraError("diagram produced an inconsistent decomposition")
    return Morphism(C, comult_codomain(C), images)


def verify_gamma_equals_delta(a_qsg: QuantumSemigroup, n: int) -> CheckResult:
    """Exact generator-wise equality of the pushed-through
    comultiplication with the free-product one."""
    gamma = sadr_comultiplication(a_qsg, n)
    delta = free_product_qsg([a_qsg] * n).comult
    failures = []
    for name in gamma.domain.presentation.by_name:
        diff = gamma.images[name] - delta.images[name]
        if not diff.is_zero():
            failures.append((name, diff))
    return CheckResult(not failures, failures)


# ---------------------------------------------------------------------------
# counits and morphism checks


def counit_of_free_product(eps_list, C: FreeProductAlgebra) -> Morphism:
    """Characters of the factors induce a character of the free product."""
    return factor_through_free_product(C, list(eps_list))


def check_counit(qsg: QuantumSemigroup, eps: Morphism) -> CheckResult:
    """(eps (x) id) o Delta = id = (id (x) eps) o Delta on generators."""
    failures = []
    wd = eps.check_well_defined()
    if not wd.ok:
        return CheckResult(False, [("counit ill-defined", f) for f in wd.failures])
    C = qsg.algebra
    ident = identity_morphism(C)
    left = compose(tensor_morphisms([eps, ident]), qsg.comult)
    right = compose(tensor_morphisms([ident, eps]), qsg.comult)
    for name, elem in C.presentation.generator_elements.items():
        l = strip_scalar_leg(left.images[name], 0)
        if l != elem:
            failures.append((f"(eps x id) on {name}", l - elem))
        r = strip_scalar_leg(right.images[name], 1)
        if r != elem:
            failures.append((f"(id x eps) on {name}", r - elem))
    return CheckResult(not failures, failures)


def check_qsg_morphism(theta: Morphism, dom_qsg: QuantumSemigroup,
                       cod_qsg: QuantumSemigroup) -> CheckResult:
    """(Theta (x) Theta) o Delta_dom = Delta_cod o Theta, generator-wise."""
    wd = theta.check_well_defined()
    if not wd.ok:
        return CheckResult(False, [("morphism ill-defined", f) for f in wd.failures])
    tt = tensor_morphisms([theta, theta])
    failures = []
    for name in theta.domain.presentation.by_name:
        lhs = tt.eval(dom_qsg.comult.images[name])
        rhs = cod_qsg.comult.eval(theta.images[name])
        if lhs != rhs:
            failures.append((name, lhs - rhs))
    return CheckResult(not failures, failures)


# ---------------------------------------------------------------------------
# the two structures on C^2 * C^2


def c2star2() -> FreeProductAlgebra:
    return free_product([make_cn(2), make_cn(2)])


def c2star2_generators(C: FreeProductAlgebra):
    """(p, q) = the images of the first minimal projection of each copy."""
    c2 = C.factors[0]
    e1 = c2.presentation.generator_elements["e1"]
    return C.embed(0, e1), C.embed(1, e1)


def composition_qsg_qmap2() -> QuantumSemigroup:
    """The map-composition comultiplication on C^2 * C^2:
    p -> p (x) p + (1-p) (x) q,  q -> q (x) p + (1-q) (x) q."""
    C = c2star2()
    T = comult_codomain(C)
    p, q = c2star2_generators(C)
    one = C.unit()

    def t(a, b):
        return tensor_elem_first(T, a, b)

    dp = t(p, p) + t(one - p, q)
    dq = t(q, p) + t(one - q, q)
    images = {
        "e1@1": dp,
        "e2@1": T.unit() - dp,
        "e1@2": dq,
        "e2@2": T.unit() - dq,
    }
    return QuantumSemigroup(C, Morphism(C, T, images))


# ---------------------------------------------------------------------------
# characters of the exact layer and their convolution monoid


def scalar_of(x: Element) -> QQi:
    """The value of an element of the one-dimensional algebra."""
    if getattr(x.owner, "dim", None) != 1:
        raise AlgebraError("not an element of the scalars")
    return x.coords.get(0, QQi(0))


def character(C: AlgebraObject, values: dict) -> Morphism:
    """The character with the given generator values (exact scalars)."""
    scalars = make_cn(1)
    images = {
        name: scalars.unit().scale(QQi.coerce(v)) for name, v in values.items()
    }
    return Morphism(C, scalars, images)


def c2star2_characters(C: FreeProductAlgebra):
    """The four characters chi_{a,b}: p -> a, q -> b with a, b in {0, 1},
    ordered (0,0), (0,1), (1,0), (1,1)."""
    chars = []
    for a in (0, 1):
        for b in (0, 1):
            chars.append(
                character(
                    C,
                    {"e1@1": a, "e2@1": 1 - a, "e1@2": b, "e2@2": 1 - b},
                )
            )
    return chars


def convolve_characters(chi: Morphism, chi2: Morphism,
                        qsg: QuantumSemigroup) -> Morphism:
    """(chi * chi')(x) = (chi (x) chi')(Delta(x))."""
    C = qsg.algebra
    values = {}
    for name in C.presentation.by_name:
        total = QQi(0)
        for (w1, w2), c in qsg.comult.images[name].coords.items():
            total = total + c * scalar_of(chi.eval_key(w1)) * scalar_of(chi2.eval_key(w2))
        values[name] = total
    return character(C, values)


def character_monoid(qsg: QuantumSemigroup, chars) -> list:
    """Convolution table over the given character list; raises if the
    list is not closed under convolution."""
    table = []
    for chi in chars:
        row = []
        for chi2 in chars:
            prod = convolve_characters(chi, chi2, qsg)
            idx = next((i for i, c in enumerate(chars) if c == prod), None)
            if idx is None:
                raise AlgebraError("character list not closed under convolution")
            row.append(idx)
        table.append(row)
    return table


def is_group(table) -> bool:
    """A finite monoid table is a group iff it has a two-sided identity
    and every element a two-sided inverse."""
    n = len(table)
    identity = None
    for e in range(n):
        if all(table[e][a] == a and table[a][e] == a for a in range(n)):
            identity = e
            break
    if identity is None:
        return False
    for a in range(n):
        if not any(table[a][b] == identity and table[b][a] == identity for b in range(n)):
            return False
    return True


def monoid_identity(table):
    n = len(table)
    for e in range(n):
        if all(table[e][a] == a and table[a][e] == a for a in range(n)):
            return e
    return None


# ---------------------------------------------------------------------------
# the three-generator obstruction algebra


def noqg_presentation() -> Presentation:
    """Universal presentation on p, q (self-adjoint) and z underlying the
    quantum family of maps from the 2x2 matrix quantum space to the
    two-point group."""
    p = NCExpr.gen("p")
    q = NCExpr.gen("q")
    z = NCExpr.gen("z")
    zs = NCExpr.gen("z", starred=True)
    relations = [
        p * p + zs * z - p,
        q * q + z * zs - q,
        z * p + q * z - z,
        p * zs + zs * q - zs,
    ]
    return Presentation(
        [GenDecl("p", selfadjoint=True), GenDecl("q", selfadjoint=True), GenDecl("z")],
        relations,
    )


def noqg_matrix_image():
    """Phi(e1) = [[p, z*], [z, q]] inside M2 (x) FreeStar(p, q, z)."""
    F = make_free_star(
        [GenDecl("p", selfadjoint=True), GenDecl("q", selfadjoint=True), GenDecl("z")]
    )
    M2 = make_matrix_algebra(2)
    T = tensor([M2, F])
    E = M2.presentation.generator_elements
    M = (
        tensor_elem_first(T, E["E11"], F.gen("p"))
        + tensor_elem_first(T, E["E12"], F.gen("z").star())
        + tensor_elem_first(T, E["E21"], F.gen("z"))
        + tensor_elem_first(T, E["E22"], F.gen("q"))
    )
    return T, M


def matrix_entries(x: Element) -> dict:
    """Entries of an element of M_n (x) FreeStar as NCExprs, keyed by the
    1-based (row, col) pair."""
    T = x.owner
    n = int(round(len(T.legs[0].labels) ** 0.5))
    out = {}
    for (mk, word), c in x.coords.items():
        i, j = divmod(mk, n)
        entry = out.setdefault((i + 1, j + 1), {})
        entry[word] = entry.get(word, QQi(0)) + c
    return {ij: NCExpr(terms) for ij, terms in out.items()}


def derive_noqg_relations():
    """Entries of Phi(e1)^2 - Phi(e1) and Phi(e1)* - Phi(e1): the exact
    relations forced on p, q, z by requiring Phi(e1) to be a self-adjoint
    idempotent."""
    T, M = noqg_matrix_image()
    idem = matrix_entries(M * M - M)
    adj = matrix_entries(M.star() - M)
    return idem, adj


def noqg_algebra_and_phi():
    """The presentation of the obstruction algebra together with the
    matrix-model morphism out of C^2 witnessing it."""
    pres = noqg_presentation()
    T, M = noqg_matrix_image()
    c2 = make_cn(2)
    phi = Morphism(c2, T, {"e1": M, "e2": T.unit() - M})
    return pres, phi
