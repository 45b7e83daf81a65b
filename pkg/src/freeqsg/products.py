"""Unital free products and multi-leg tensor products.

Free products are amalgamated over scalar multiples of the unit; the
canonical basis consists of reduced words: alternating sequences of
unit-complement basis elements from distinct consecutive factors.
Tensor products are leg-wise with commuting legs; nested tensors are
flattened on construction.
"""

from __future__ import annotations

from .algebra import (
    AlgebraError,
    AlgebraObject,
    Element,
    OwnerMismatch,
    Presentation,
    _accumulate,
)
from .ncpoly import GenDecl, NCExpr
from .scalars import ONE, QQi


# ---------------------------------------------------------------------------
# free products


class FreeProductAlgebra(AlgebraObject):
    """Unital free product with the reduced-word normal form.

    A letter is (factor-index, complement-key); a basis word is a tuple of
    letters whose adjacent factor indices differ; the empty word is the
    unit.
    """

    def __init__(self, factors):
        if not factors:
            raise AlgebraError("free product needs at least one factor")
        for f in factors:
            if not hasattr(f, "unit_split"):
                raise AlgebraError(f"{f!r} cannot be a free product factor")
        self.factors = list(factors)
        self._sig = ("freeprod", tuple(f.signature() for f in self.factors))
        self._mul_memo = {}
        self._pres = None

    @property
    def presentation(self) -> Presentation:
        if self._pres is None:
            self._pres = _free_product_presentation(self)
        return self._pres

    def signature(self):
        return self._sig

    def unit(self) -> Element:
        return self.basis_element(())

    def letter(self, k, comp_key):
        return (k, comp_key)

    def basis_mul(self, w1, w2) -> dict:
        memo = self._mul_memo.get((w1, w2))
        if memo is None:
            memo = self._mul_memo[(w1, w2)] = self._reduce(w1, w2)
        return memo

    def _reduce(self, u, v) -> dict:
        # junction letters from the same factor multiply inside the factor;
        # the complement part stays a reduced word, the scalar part strictly
        # shortens the junction and recurses
        if not u:
            return {v: ONE}
        if not v:
            return {u: ONE}
        (k, a) = u[-1]
        (l, b) = v[0]
        if k != l:
            return {u + v: ONE}
        factor = self.factors[k]
        prod = factor.complement_element(a) * factor.complement_element(b)
        scalar, comp = factor.unit_split(prod)
        out = {}
        for m, c in comp.items():
            _accumulate(out, u[:-1] + ((k, m),) + v[1:], c)
        if not scalar.is_zero():
            shorter = self.basis_mul(u[:-1], v[1:])
            assert all(len(w) < len(u) + len(v) for w in shorter)
            for w, c in shorter.items():
                _accumulate(out, w, scalar * c)
        return out

    def basis_star(self, w) -> dict:
        result = self.unit()
        for (k, a) in reversed(w):
            piece = self.embed(k, self.factors[k].complement_element(a).star())
            result = result * piece
        return result.coords

    def embed(self, k, x: Element) -> Element:
        """The natural inclusion of factor k applied to a factor element."""
        if not (0 <= k < len(self.factors)):
            raise AlgebraError("factor index out of range")
        if x.owner != self.factors[k]:
            raise OwnerMismatch("element does not belong to factor")
        scalar, comp = self.factors[k].unit_split(x)
        coords = {}
        if not scalar.is_zero():
            coords[()] = scalar
        for m, c in comp.items():
            coords[((k, m),)] = c
        return Element(self, coords)

    def format_key(self, w) -> str:
        if not w:
            return "1"
        return " . ".join(
            f"[{k + 1}:{self.factors[k].format_key_complement(m)}]"
            if hasattr(self.factors[k], "format_key_complement")
            else f"[{k + 1}:{m}]"
            for (k, m) in w
        )

    # -- nesting support ----------------------------------------------

    def unit_split(self, x: Element):
        comp = {}
        scalar = QQi(0)
        for w, c in x.coords.items():
            if w == ():
                scalar = c
            else:
                comp[w] = c
        return scalar, comp

    def complement_element(self, w) -> Element:
        return self.basis_element(w)

    def complement_expr(self, w) -> NCExpr:
        return self.presentation.basis_expr(w)

    def __repr__(self):
        return " * ".join(repr(f) for f in self.factors)


def factor_gen_name(name: str, k: int) -> str:
    return f"{name}@{k + 1}"


def _free_product_presentation(C: FreeProductAlgebra) -> Presentation:
    gens = []
    generator_elements = {}
    relations = []
    renames = []
    for k, factor in enumerate(C.factors):
        pres = factor.presentation
        if pres is None:
            raise AlgebraError("free product factor lacks a presentation")
        mapping = {n: factor_gen_name(n, k) for n in pres.by_name}
        renames.append(mapping)
        for d in pres.gens:
            gens.append(
                GenDecl(
                    mapping[d.name],
                    selfadjoint=d.selfadjoint,
                    adjoint=mapping[d.adjoint] if d.adjoint else None,
                )
            )
            generator_elements[mapping[d.name]] = C.embed(
                k, pres.generator_elements[d.name]
            )
        for rel in pres.relations:
            relations.append(rel.rename(mapping))

    def basis_expr(word):
        expr = NCExpr.one()
        for (k, m) in word:
            comp = C.factors[k].complement_expr(m).rename(renames[k])
            expr = expr * comp
        return expr

    return Presentation(
        gens, relations, basis_expr_fn=basis_expr,
        generator_elements=generator_elements, algebra=C,
    )


def free_product(factors) -> FreeProductAlgebra:
    return FreeProductAlgebra(factors)


def iota(C: FreeProductAlgebra, k: int):
    """The embedding of factor k as a callable on factor elements."""
    if not (0 <= k < len(C.factors)):
        raise AlgebraError("factor index out of range")
    return lambda x: C.embed(k, x)


# ---------------------------------------------------------------------------
# tensor products


def tensor_gen_name(name: str, leg: int) -> str:
    return f"{name}#{leg + 1}"


class TensorAlgebra(AlgebraObject):
    """Multi-leg tensor product; basis keys are tuples of leg keys."""

    def __init__(self, legs):
        if not legs:
            raise AlgebraError("tensor product needs at least one leg")
        flat = []
        for leg in legs:
            if isinstance(leg, TensorAlgebra):
                flat.extend(leg.legs)
            else:
                flat.append(leg)
        self.legs = flat
        self._sig = ("tensor", tuple(l.signature() for l in self.legs))
        self._unit = None
        self._pres = None

    @property
    def presentation(self) -> Presentation:
        if self._pres is None:
            self._pres = _tensor_presentation(self)
        return self._pres

    def signature(self):
        return self._sig

    def basis_mul(self, k1, k2) -> dict:
        out = {(): ONE}
        for j, leg in enumerate(self.legs):
            part = leg.basis_mul(k1[j], k2[j])
            nxt = {}
            for pref, c in out.items():
                for k, ck in part.items():
                    _accumulate(nxt, pref + (k,), c * ck)
            if not nxt:
                return {}
            out = nxt
        return out

    def basis_star(self, key) -> dict:
        out = {(): ONE}
        for j, leg in enumerate(self.legs):
            part = leg.basis_star(key[j])
            nxt = {}
            for pref, c in out.items():
                for k, ck in part.items():
                    _accumulate(nxt, pref + (k,), c * ck)
            out = nxt
        return out

    def unit(self) -> Element:
        if self._unit is None:
            self._unit = tensor_element(self, [l.unit() for l in self.legs])
        return self._unit

    def format_key(self, key) -> str:
        return " (x) ".join(
            leg.format_key(k) for leg, k in zip(self.legs, key)
        )

    def __repr__(self):
        return " (x) ".join(repr(l) for l in self.legs)


def _tensor_presentation(T: TensorAlgebra) -> Presentation:
    gens = []
    generator_elements = {}
    relations = []
    renames = []
    for j, leg in enumerate(T.legs):
        pres = leg.presentation
        if pres is None:
            raise AlgebraError("tensor leg lacks a presentation")
        mapping = {n: tensor_gen_name(n, j) for n in pres.by_name}
        renames.append(mapping)
        for d in pres.gens:
            gens.append(
                GenDecl(
                    mapping[d.name],
                    selfadjoint=d.selfadjoint,
                    adjoint=mapping[d.adjoint] if d.adjoint else None,
                )
            )
            generator_elements[mapping[d.name]] = leg_embed(
                T, j, pres.generator_elements[d.name]
            )
        for rel in pres.relations:
            relations.append(rel.rename(mapping))

    # distinct legs commute letter-wise
    for j in range(len(T.legs)):
        for l in range(j + 1, len(T.legs)):
            for dj in T.legs[j].presentation.gens:
                for aj in dj.letters():
                    a = (renames[j][aj[0]], aj[1])
                    for dl in T.legs[l].presentation.gens:
                        for bl in dl.letters():
                            b = (renames[l][bl[0]], bl[1])
                            relations.append(
                                NCExpr({(a, b): ONE, (b, a): -ONE})
                            )

    def basis_expr(key):
        expr = NCExpr.one()
        for j, leg in enumerate(T.legs):
            expr = expr * leg.presentation.basis_expr(key[j]).rename(renames[j])
        return expr

    return Presentation(
        gens, relations, basis_expr_fn=basis_expr,
        generator_elements=generator_elements, algebra=T,
    )


def tensor(legs) -> TensorAlgebra:
    return TensorAlgebra(legs)


def tensor_element(T: TensorAlgebra, elems) -> Element:
    """x_1 (x) ... (x) x_k from per-leg elements."""
    if len(elems) != len(T.legs):
        raise AlgebraError("one element per leg required")
    for leg, x in zip(T.legs, elems):
        if x.owner != leg:
            raise OwnerMismatch("element does not belong to its leg")
    out = {(): ONE}
    for x in elems:
        nxt = {}
        for pref, c in out.items():
            for k, ck in x.coords.items():
                _accumulate(nxt, pref + (k,), c * ck)
        if not nxt:
            return T.zero()
        out = nxt
    return Element(T, out)


def leg_embed(T: TensorAlgebra, leg: int, x: Element) -> Element:
    """1 (x) ... (x) x (x) ... (x) 1 with x in the given leg."""
    if not (0 <= leg < len(T.legs)):
        raise AlgebraError("leg index out of range")
    elems = [l.unit() for l in T.legs]
    elems[leg] = x
    return tensor_element(T, elems)


def embed_span(T: TensorAlgebra, offset: int, x: Element) -> Element:
    """Embed an element of a leg (or of a contiguous tensor block) into T
    starting at the given leg offset, with units elsewhere."""
    if isinstance(x.owner, TensorAlgebra):
        width = len(x.owner.legs)
        if T.legs[offset:offset + width] != x.owner.legs:
            raise OwnerMismatch("tensor block does not match target legs")
        parts = x.coords  # keys already tuples
        tuples = {k: c for k, c in parts.items()}
    else:
        width = 1
        if T.legs[offset] != x.owner:
            raise OwnerMismatch("element does not match target leg")
        tuples = {(k,): c for k, c in x.coords.items()}
    out = {(): ONE}
    for j, leg in enumerate(T.legs[:offset]):
        nxt = {}
        for pref, c in out.items():
            for k, ck in leg.unit().coords.items():
                _accumulate(nxt, pref + (k,), c * ck)
        out = nxt
    mid = {}
    for pref, c in out.items():
        for k, ck in tuples.items():
            _accumulate(mid, pref + k, c * ck)
    out = mid
    for leg in T.legs[offset + width:]:
        nxt = {}
        for pref, c in out.items():
            for k, ck in leg.unit().coords.items():
                _accumulate(nxt, pref + (k,), c * ck)
        out = nxt
    return Element(T, out)


def flip_legs(x: Element, k: int, l: int) -> Element:
    """Exchange legs k and l on every basis tuple, extended linearly."""
    T = x.owner
    if not isinstance(T, TensorAlgebra):
        raise AlgebraError("flip_legs needs a tensor element")
    n = len(T.legs)
    if not (0 <= k < n and 0 <= l < n) or k == l:
        raise AlgebraError("invalid leg indices for flip")
    legs = list(T.legs)
    legs[k], legs[l] = legs[l], legs[k]
    target = T if legs == T.legs else tensor(legs)
    out = {}
    for key, c in x.coords.items():
        new = list(key)
        new[k], new[l] = new[l], new[k]
        _accumulate(out, tuple(new), c)
    return Element(target, out)


def mul_legs01(x: Element) -> Element:
    """Contract the first two legs by multiplying them in their common
    algebra: a (x) b (x) rest -> ab (x) rest."""
    T = x.owner
    if not isinstance(T, TensorAlgebra) or len(T.legs) < 2:
        raise AlgebraError("need a tensor element with at least two legs")
    if T.legs[0] != T.legs[1]:
        raise AlgebraError("first two legs must agree to multiply them")
    B = T.legs[0]
    rest = T.legs[2:]
    target = tensor([B] + rest) if rest else B
    out = {}
    for key, c in x.coords.items():
        for k, ck in B.basis_mul(key[0], key[1]).items():
            new = (k,) + key[2:] if rest else k
            _accumulate(out, new, c * ck)
    return Element(target, out)


def split_first_leg(x: Element) -> dict:
    """Decompose over the first leg basis: x = sum_i e_i (x) Y_i; returns
    {first-leg key: Y_i as element of the remaining legs}."""
    T = x.owner
    if not isinstance(T, TensorAlgebra):
        raise AlgebraError("split_first_leg needs a tensor element")
    rest_legs = T.legs[1:]
    if not rest_legs:
        raise AlgebraError("nothing remains after the first leg")
    rest = tensor(rest_legs) if len(rest_legs) > 1 else rest_legs[0]
    parts = {}
    for key, c in x.coords.items():
        tail = key[1:] if len(rest_legs) > 1 else key[1]
        parts.setdefault(key[0], {})[tail] = c
    return {i: Element(rest, coords) for i, coords in parts.items()}


def strip_scalar_leg(x: Element, leg: int = 0) -> Element:
    """Remove a one-dimensional leg (its unit is its only basis element)."""
    T = x.owner
    if not isinstance(T, TensorAlgebra):
        raise AlgebraError("strip_scalar_leg needs a tensor element")
    if getattr(T.legs[leg], "dim", None) != 1:
        raise AlgebraError("leg is not one-dimensional")
    rest_legs = T.legs[:leg] + T.legs[leg + 1:]
    rest = tensor(rest_legs) if len(rest_legs) > 1 else rest_legs[0]
    out = {}
    for key, c in x.coords.items():
        new = key[:leg] + key[leg + 1:]
        if len(rest_legs) == 1:
            new = new[0]
        _accumulate(out, new, c)
    return Element(rest, out)
