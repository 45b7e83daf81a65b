"""Unital *-homomorphisms as generator-image assignments.

A morphism carries the presentation of its domain and images for every
generator; evaluation substitutes the basis expression table and is
independent of the chosen expressions exactly when the morphism is
well defined (every domain relation maps to zero).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import (
    AlgebraError,
    AlgebraObject,
    Element,
    OwnerMismatch,
    eval_ncexpr,
)
from .products import (
    FreeProductAlgebra,
    TensorAlgebra,
    embed_span,
    leg_embed,
    split_first_leg,
    tensor,
)


class NotAHomomorphism(AlgebraError):
    """Raised when requested generator images violate the domain relations."""

    def __init__(self, message, failures=None):
        super().__init__(message)
        self.failures = failures or []


@dataclass
class CheckResult:
    ok: bool
    failures: list = field(default_factory=list)

    def __bool__(self):
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "ok"
        head = "; ".join(str(label) for label, _res in self.failures[:3])
        more = "" if len(self.failures) <= 3 else f" (+{len(self.failures) - 3} more)"
        return f"failed: {head}{more}"


class Morphism:
    """Unital *-homomorphism determined by generator images."""

    def __init__(self, domain: AlgebraObject, codomain: AlgebraObject, images: dict):
        if domain.presentation is None:
            raise AlgebraError("morphism domain needs a presentation")
        missing = [n for n in domain.presentation.by_name if n not in images]
        if missing:
            raise AlgebraError(f"unassigned generators: {missing}")
        for name, img in images.items():
            if img.owner != codomain:
                raise OwnerMismatch(f"image of {name} not in codomain")
        self.domain = domain
        self.codomain = codomain
        self.images = dict(images)
        self._eval_memo = {}

    def eval(self, x: Element) -> Element:
        if x.owner != self.domain:
            raise OwnerMismatch("element is not in the morphism domain")
        out = self.codomain.zero()
        for key, c in x.coords.items():
            out = out + self.eval_key(key).scale(c)
        return out

    def eval_key(self, key) -> Element:
        img = self._eval_memo.get(key)
        if img is None:
            expr = self.domain.presentation.basis_expr(key)
            img = eval_ncexpr(expr, self.images, owner=self.codomain)
            self._eval_memo[key] = img
        return img

    def check_well_defined(self) -> CheckResult:
        failures = []
        for rel in self.domain.presentation.relations:
            residue = eval_ncexpr(rel, self.images, owner=self.codomain)
            if not residue.is_zero():
                failures.append((rel, residue))
        return CheckResult(not failures, failures)

    def __eq__(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and self.images == other.images
        )

    def __repr__(self):
        return f"Morphism({self.domain!r} -> {self.codomain!r})"


def identity_morphism(A: AlgebraObject) -> Morphism:
    return Morphism(A, A, A.presentation.identity_assignment())


def compose(g: Morphism, f: Morphism) -> Morphism:
    """g after f."""
    if f.codomain != g.domain:
        raise AlgebraError("composition shape mismatch")
    images = {name: g.eval(img) for name, img in f.images.items()}
    return Morphism(f.domain, g.codomain, images)


def tensor_morphisms(ms) -> Morphism:
    """m_1 (x) ... (x) m_k acting leg-wise; domain and codomain are the
    flattened tensor products of the factors' domains and codomains."""
    if not ms:
        raise AlgebraError("need at least one morphism")
    dom = tensor([m.domain for m in ms])
    cod = tensor([m.codomain for m in ms])
    images = {}
    dleg = 0
    cleg = 0
    for m in ms:
        dwidth = len(m.domain.legs) if isinstance(m.domain, TensorAlgebra) else 1
        for inner in range(dwidth):
            leg_alg = (
                m.domain.legs[inner]
                if isinstance(m.domain, TensorAlgebra)
                else m.domain
            )
            for d in leg_alg.presentation.gens:
                gen_elem = leg_alg.presentation.generator_elements[d.name]
                if isinstance(m.domain, TensorAlgebra):
                    arg = leg_embed(m.domain, inner, gen_elem)
                else:
                    arg = gen_elem
                lifted = f"{d.name}#{dleg + inner + 1}"
                images[lifted] = embed_span(cod, cleg, m.eval(arg))
        dleg += dwidth
        cleg += len(m.codomain.legs) if isinstance(m.codomain, TensorAlgebra) else 1
    return Morphism(dom, cod, images)


def factor_through_free_product(C: FreeProductAlgebra, psis) -> Morphism:
    """The unique morphism L on a free product with L o iota_k = psi_k."""
    if not isinstance(C, FreeProductAlgebra):
        raise AlgebraError("first argument must be a free product")
    if len(psis) != len(C.factors):
        raise AlgebraError("need one morphism per factor")
    codomain = psis[0].codomain
    images = {}
    for k, psi in enumerate(psis):
        if psi.domain != C.factors[k]:
            raise AlgebraError(f"morphism {k} does not match factor {k}")
        if psi.codomain != codomain:
            raise AlgebraError("all factor morphisms need the same codomain")
        for name, img in psi.images.items():
            images[f"{name}@{k + 1}"] = img
    return Morphism(C, codomain, images)


def iota_morphism(C: FreeProductAlgebra, k: int) -> Morphism:
    """The natural inclusion of factor k as a morphism."""
    if not (0 <= k < len(C.factors)):
        raise AlgebraError("factor index out of range")
    factor = C.factors[k]
    images = {
        name: C.embed(k, elem)
        for name, elem in factor.presentation.generator_elements.items()
    }
    return Morphism(factor, C, images)


def is_cn(alg) -> bool:
    return getattr(alg, "kind", "").startswith("C^")


def decompose_over_cn(psi: Morphism):
    """Split psi: A -> C^n (x) D into its n component morphisms A -> D
    via psi(a) = sum_i e_i (x) psi_i(a)."""
    cod = psi.codomain
    if not isinstance(cod, TensorAlgebra) or not is_cn(cod.legs[0]):
        raise AlgebraError("codomain must be a tensor with a C^n first leg")
    n = cod.legs[0].dim
    rest_legs = cod.legs[1:]
    rest = tensor(rest_legs) if len(rest_legs) > 1 else rest_legs[0]
    split = {
        name: split_first_leg(img) for name, img in psi.images.items()
    }
    out = []
    for i in range(n):
        images = {
            name: parts.get(i, rest.zero()) for name, parts in split.items()
        }
        out.append(Morphism(psi.domain, rest, images))
    return out


def reassemble_over_cn(psis, codomain: TensorAlgebra) -> Morphism:
    """Inverse of decompose_over_cn: psi(a) = sum_i e_i (x) psi_i(a)."""
    B = codomain.legs[0]
    images = {}
    for name in psis[0].images:
        total = codomain.zero()
        for i, psi_i in enumerate(psis):
            total = total + tensor_elem_first(codomain, B.basis_element(i), psi_i.images[name])
        images[name] = total
    return Morphism(psis[0].domain, codomain, images)


def tensor_elem_first(T: TensorAlgebra, first: Element, rest: Element) -> Element:
    """first (x) rest where rest spans all remaining legs of T."""
    out = embed_span(T, 1, rest)
    return embed_span(T, 0, first) * out


def pi(C: FreeProductAlgebra) -> Morphism:
    """Identify all canonical copies of A inside A * ... * A."""
    A = C.factors[0]
    for f in C.factors[1:]:
        if f != A:
            raise AlgebraError("pi needs identical factors")
    ident = identity_morphism(A)
    return factor_through_free_product(C, [ident] * len(C.factors))


def mu(B) -> Morphism:
    """Multiplication map B (x) B -> B; a homomorphism only when B is
    commutative, otherwise NotAHomomorphism is raised."""
    T = tensor([B, B])
    images = {}
    for name, elem in B.presentation.generator_elements.items():
        images[f"{name}#1"] = elem
        images[f"{name}#2"] = elem
    m = Morphism(T, B, images)
    verdict = m.check_well_defined()
    if not verdict.ok:
        raise NotAHomomorphism(
            "multiplication is not a homomorphism on a noncommutative algebra",
            verdict.failures,
        )
    return m


def unital_embed(B, A) -> Morphism:
    """A -> B (x) A, a -> 1 (x) a."""
    T = tensor([B, A])
    images = {
        name: leg_embed(T, 1, elem)
        for name, elem in A.presentation.generator_elements.items()
    }
    return Morphism(A, T, images)


def morphisms_agree_on_generators(f: Morphism, g: Morphism) -> CheckResult:
    """Generator-wise equality; two well-defined morphisms agreeing here
    agree everywhere."""
    if f.domain != g.domain or f.codomain != g.codomain:
        return CheckResult(False, [("shape mismatch", None)])
    failures = []
    for name in f.domain.presentation.by_name:
        diff = f.images[name] - g.images[name]
        if not diff.is_zero():
            failures.append((name, diff))
    return CheckResult(not failures, failures)
