"""Exact *-algebra kernel.

Finite-dimensional *-algebras given by structure constants, free
*-algebras, elements with exact QQi coordinates over a canonical basis,
and presentations (generators, relations, basis expression table).
"""

from __future__ import annotations

from fractions import Fraction

from .ncpoly import GenDecl, NCExpr
from .scalars import ONE, QQi


class AlgebraError(Exception):
    pass


class OwnerMismatch(AlgebraError):
    pass


# ---------------------------------------------------------------------------
# exact linear algebra helpers


def exact_solve_matrix(columns):
    """Invert the square matrix whose columns are the given coordinate
    vectors (lists of QQi).  Raises AlgebraError if singular."""
    n = len(columns)
    a = [[QQi.coerce(columns[j][i]) for j in range(n)] for i in range(n)]
    inv = [[ONE if i == j else QQi(0) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next(
            (r for r in range(col, n) if not a[r][col].is_zero()), None
        )
        if pivot is None:
            raise AlgebraError("singular change-of-basis matrix")
        a[col], a[pivot] = a[pivot], a[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        p = a[col][col].inverse()
        a[col] = [x * p for x in a[col]]
        inv[col] = [x * p for x in inv[col]]
        for r in range(n):
            if r != col and not a[r][col].is_zero():
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return inv


# ---------------------------------------------------------------------------
# elements


def _accumulate(out: dict, key, coeff: QQi):
    acc = out.get(key)
    coeff = coeff if acc is None else acc + coeff
    if coeff.is_zero():
        out.pop(key, None)
    else:
        out[key] = coeff


class Element:
    """Finite QQi-weighted combination of canonical basis keys of an
    AlgebraObject.  Immutable; arithmetic stays within the owner."""

    __slots__ = ("owner", "coords")

    def __init__(self, owner, coords):
        self.owner = owner
        self.coords = {k: c for k, c in coords.items() if not c.is_zero()}

    def _check_owner(self, other: "Element"):
        if self.owner != other.owner:
            raise OwnerMismatch(
                f"elements of {self.owner!r} and {other.owner!r} cannot mix"
            )

    def __add__(self, other):
        if isinstance(other, (int, Fraction, QQi)):
            other = self.owner.scalar(other)
        self._check_owner(other)
        out = dict(self.coords)
        for k, c in other.coords.items():
            _accumulate(out, k, c)
        return Element(self.owner, out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, QQi)):
            other = self.owner.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Element(self.owner, {k: -c for k, c in self.coords.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QQi)):
            return self.scale(other)
        self._check_owner(other)
        out = {}
        for k1, c1 in self.coords.items():
            for k2, c2 in other.coords.items():
                c12 = c1 * c2
                for k, c in self.owner.basis_mul(k1, k2).items():
                    _accumulate(out, k, c12 * c)
        return Element(self.owner, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, QQi)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "Element":
        c = QQi.coerce(c)
        return Element(self.owner, {k: c * v for k, v in self.coords.items()})

    def star(self) -> "Element":
        out = {}
        for k, c in self.coords.items():
            cc = c.conjugate()
            for k2, c2 in self.owner.basis_star(k).items():
                _accumulate(out, k2, cc * c2)
        return Element(self.owner, out)

    def is_zero(self) -> bool:
        return not self.coords

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.owner == other.owner and self.coords == other.coords

    def __hash__(self):
        return hash(frozenset(self.coords.items()))

    def __repr__(self):
        if not self.coords:
            return "0"
        bits = []
        for k in sorted(self.coords, key=self.owner.key_sort):
            bits.append(f"{self.coords[k]!r}*{self.owner.format_key(k)}")
        return " + ".join(bits)


# ---------------------------------------------------------------------------
# algebra objects


class AlgebraObject:
    """Base: an algebra with a canonical linear basis indexed by hashable
    keys, exact structure maps, and (usually) a presentation."""

    presentation = None

    def basis_mul(self, k1, k2) -> dict:
        raise NotImplementedError

    def basis_star(self, k) -> dict:
        raise NotImplementedError

    def unit(self) -> Element:
        raise NotImplementedError

    def signature(self):
        raise NotImplementedError

    # -- generic helpers ----------------------------------------------

    def element(self, coords: dict) -> Element:
        return Element(self, {k: QQi.coerce(c) for k, c in coords.items()})

    def zero(self) -> Element:
        return Element(self, {})

    def scalar(self, c) -> Element:
        return self.unit().scale(QQi.coerce(c))

    def basis_element(self, key) -> Element:
        return Element(self, {key: ONE})

    def format_key(self, key) -> str:
        return str(key)

    def key_sort(self, key):
        return repr(key)

    def __eq__(self, other):
        if not isinstance(other, AlgebraObject):
            return NotImplemented
        return self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())


class FiniteDimAlgebra(AlgebraObject):
    """Algebra of finite dimension given by structure constants.

    c[(i, j)][k] is the coefficient of basis k in b_i b_j; the involution
    is given basis-wise by a conjugate-linear matrix.  reduced_complement
    lists elements spanning a complement of the unit, used as letters by
    free products.
    """

    def __init__(self, dim, mul, unit_coords, star, labels, kind=""):
        if dim < 1:
            raise AlgebraError("dimension must be positive")
        self.dim = dim
        self._mul = mul  # dict (i, j) -> dict k -> QQi
        self._unit_coords = unit_coords  # dict k -> QQi
        self._star = star  # dict i -> dict j -> QQi
        self.labels = labels
        self.kind = kind
        self.reduced_complement = []  # list[Element], filled by maker
        self._split_inv = None
        self._sig = None

    def basis_mul(self, k1, k2) -> dict:
        return self._mul.get((k1, k2), {})

    def basis_star(self, k) -> dict:
        return self._star[k]

    def unit(self) -> Element:
        return Element(self, dict(self._unit_coords))

    def format_key(self, key) -> str:
        return self.labels[key]

    def key_sort(self, key):
        return key

    def signature(self):
        if self._sig is None:
            mul = tuple(
                (ij, tuple(sorted(entry.items())))
                for ij, entry in sorted(self._mul.items())
            )
            star = tuple(
                (i, tuple(sorted(entry.items())))
                for i, entry in sorted(self._star.items())
            )
            comp = tuple(
                tuple(sorted(e.coords.items())) for e in self.reduced_complement
            )
            self._sig = (
                "fd",
                self.kind,
                self.dim,
                mul,
                tuple(sorted(self._unit_coords.items())),
                star,
                comp,
            )
        return self._sig

    # -- unit/complement decomposition (used by free products) --------

    def complement_element(self, m) -> Element:
        return self.reduced_complement[m]

    def complement_expr(self, m) -> NCExpr:
        """The m-th complement element written in the generators."""
        expr = NCExpr.zero()
        for k, c in self.reduced_complement[m].coords.items():
            expr = expr + self.presentation.basis_expr(k).scale(c)
        return expr

    def unit_split(self, x: Element):
        """Write x as s*1 + sum over reduced_complement; returns
        (s, dict complement-index -> QQi)."""
        if self._split_inv is None:
            if len(self.reduced_complement) != self.dim - 1:
                raise AlgebraError(
                    "reduced complement does not complete the unit to a basis"
                )
            cols = [[self._unit_coords.get(i, QQi(0)) for i in range(self.dim)]]
            for e in self.reduced_complement:
                cols.append([e.coords.get(i, QQi(0)) for i in range(self.dim)])
            self._split_inv = exact_solve_matrix(cols)
        vec = [x.coords.get(i, QQi(0)) for i in range(self.dim)]
        sol = [
            sum((row[i] * vec[i] for i in range(self.dim)), QQi(0))
            for row in self._split_inv
        ]
        comp = {m: c for m, c in enumerate(sol[1:]) if not c.is_zero()}
        return sol[0], comp

    def __repr__(self):
        return self.kind or f"FiniteDimAlgebra(dim={self.dim})"


class FreeStarAlgebra(AlgebraObject):
    """Free *-algebra on declared generators: basis = all words in the
    generators and their stars, product = concatenation."""

    def __init__(self, decls):
        names = [d.name for d in decls]
        if len(set(names)) != len(names):
            raise AlgebraError("duplicate generator names")
        self.decls = {d.name: d for d in decls}
        for d in decls:
            if d.adjoint is not None and d.adjoint not in self.decls:
                raise AlgebraError(f"adjoint partner {d.adjoint} undeclared")
        self._sig = ("freestar", tuple(sorted(self.decls.items(), key=lambda x: x[0])))

    def canonical_letter(self, letter):
        name, starred = letter
        if not starred:
            return (name, False)
        decl = self.decls.get(name)
        if decl is None:
            raise AlgebraError(f"unknown generator {name}")
        return decl.star_letter()

    def word(self, letters) -> Element:
        return self.basis_element(
            tuple(self.canonical_letter(l) for l in letters)
        )

    def gen(self, name, starred=False) -> Element:
        if name not in self.decls:
            raise AlgebraError(f"unknown generator {name}")
        return self.word([(name, starred)])

    def basis_mul(self, k1, k2) -> dict:
        return {k1 + k2: ONE}

    def basis_star(self, k) -> dict:
        rev = tuple(
            self.canonical_letter((name, not starred))
            for (name, starred) in reversed(k)
        )
        return {rev: ONE}

    def unit(self) -> Element:
        return self.basis_element(())

    def format_key(self, key) -> str:
        if not key:
            return "1"
        return " ".join(n + ("'" if s else "") for (n, s) in key)

    def signature(self):
        return self._sig

    # free products may use a free algebra as a factor: the complement of
    # the unit is spanned by the nonempty words
    def unit_split(self, x: Element):
        comp = {}
        scalar = QQi(0)
        for k, c in x.coords.items():
            if k == ():
                scalar = c
            else:
                comp[k] = c
        return scalar, comp

    def complement_element(self, m) -> Element:
        return self.basis_element(m)

    def complement_expr(self, m) -> NCExpr:
        return NCExpr({m: ONE})

    def __repr__(self):
        return f"FreeStar({', '.join(self.decls)})"


# ---------------------------------------------------------------------------
# presentations


class Presentation:
    """Generators, relations (= 0), and an expression for every canonical
    basis element of the presented object in terms of the generators."""

    def __init__(
        self,
        gens,
        relations,
        basis_expr_fn=None,
        generator_elements=None,
        algebra=None,
    ):
        self.gens = list(gens)
        self.by_name = {d.name: d for d in self.gens}
        if len(self.by_name) != len(self.gens):
            raise AlgebraError("duplicate generator names")
        self.relations = list(relations)
        self._basis_expr_fn = basis_expr_fn
        self._basis_memo = {}
        self.generator_elements = generator_elements or {}
        self.algebra = algebra

    def gen_names(self):
        return [d.name for d in self.gens]

    def decl(self, name) -> GenDecl:
        return self.by_name[name]

    def basis_expr(self, key) -> NCExpr:
        expr = self._basis_memo.get(key)
        if expr is None:
            if self._basis_expr_fn is None:
                raise AlgebraError("presentation has no basis expression table")
            expr = self._basis_expr_fn(key)
            self._basis_memo[key] = expr
        return expr

    def identity_assignment(self) -> dict:
        return dict(self.generator_elements)

    def resolve(self, expr: NCExpr) -> NCExpr:
        """Canonicalize starred letters using the declared involution
        behaviour (g* -> g for self-adjoint g, g* -> h for adjoint pairs)."""
        out = {}
        for word, coeff in expr.terms.items():
            new = []
            for (name, starred) in word:
                decl = self.by_name.get(name)
                if starred and decl is not None:
                    new.append(decl.star_letter())
                else:
                    new.append((name, starred))
            key = tuple(new)
            acc = out.get(key)
            out[key] = coeff if acc is None else acc + coeff
        return NCExpr(out)


def eval_ncexpr(expr: NCExpr, assignment: dict, owner=None) -> Element:
    """Substitute Elements for generators in a formal *-polynomial.

    Starred letters use the involution of the assigned image.  The owner
    algebra is inferred from the images unless given.
    """
    if owner is None:
        for img in assignment.values():
            owner = img.owner
            break
        if owner is None:
            raise AlgebraError("cannot infer owner for evaluation")
    for img in assignment.values():
        if img.owner != owner:
            raise OwnerMismatch("assignment images live in different algebras")
    result = owner.zero()
    star_memo = {}
    for word, coeff in expr.terms.items():
        acc = owner.unit()
        for (name, starred) in word:
            img = assignment.get(name)
            if img is None:
                raise AlgebraError(f"generator {name} not assigned")
            if starred:
                st = star_memo.get(name)
                if st is None:
                    st = star_memo[name] = img.star()
                img = st
            acc = acc * img
        result = result + acc.scale(coeff)
    return result


# ---------------------------------------------------------------------------
# built-in algebras


def make_cn(n: int) -> FiniteDimAlgebra:
    """The commutative algebra of functions on n points: basis of minimal
    projections e_1..e_n, unit = sum, involution trivial."""
    if n < 1:
        raise AlgebraError("n must be >= 1")
    mul = {(i, i): {i: ONE} for i in range(n)}
    unit = {i: ONE for i in range(n)}
    star = {i: {i: ONE} for i in range(n)}
    labels = [f"e{i + 1}" for i in range(n)]
    alg = FiniteDimAlgebra(n, mul, unit, star, labels, kind=f"C^{n}")
    alg.reduced_complement = [alg.basis_element(i) for i in range(n - 1)]

    gens = [GenDecl(name, selfadjoint=True) for name in labels]
    relations = []
    for i in range(n):
        for j in range(n):
            rel = NCExpr.gen(labels[i]) * NCExpr.gen(labels[j])
            if i == j:
                rel = rel - NCExpr.gen(labels[i])
            relations.append(rel)
        relations.append(NCExpr.gen(labels[i], starred=True) - NCExpr.gen(labels[i]))
    total = NCExpr.zero()
    for i in range(n):
        total = total + NCExpr.gen(labels[i])
    relations.append(total - NCExpr.one())

    alg.presentation = Presentation(
        gens,
        relations,
        basis_expr_fn=lambda k: NCExpr.gen(labels[k]),
        generator_elements={labels[i]: alg.basis_element(i) for i in range(n)},
        algebra=alg,
    )
    return alg


def make_matrix_algebra(n: int) -> FiniteDimAlgebra:
    """Full matrix algebra on the matrix-unit basis E_ij."""
    if n < 1:
        raise AlgebraError("n must be >= 1")
    dim = n * n

    def idx(i, j):
        return i * n + j

    labels = [""] * dim
    for i in range(n):
        for j in range(n):
            labels[idx(i, j)] = f"E{i + 1}{j + 1}"

    mul = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    if j == k:
                        mul[(idx(i, j), idx(k, l))] = {idx(i, l): ONE}
    unit = {idx(i, i): ONE for i in range(n)}
    star = {idx(i, j): {idx(j, i): ONE} for i in range(n) for j in range(n)}
    alg = FiniteDimAlgebra(dim, mul, unit, star, labels, kind=f"M{n}")

    # traceless complement of the unit
    comp = []
    for i in range(n - 1):
        e = alg.basis_element(idx(i, i)) - alg.unit().scale(QQi(Fraction(1, n)))
        comp.append(e)
    for i in range(n):
        for j in range(n):
            if i != j:
                comp.append(alg.basis_element(idx(i, j)))
    alg.reduced_complement = comp

    gens = []
    for i in range(n):
        for j in range(n):
            if i == j:
                gens.append(GenDecl(labels[idx(i, j)], selfadjoint=True))
            else:
                gens.append(GenDecl(labels[idx(i, j)], adjoint=labels[idx(j, i)]))

    relations = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    rel = NCExpr.gen(labels[idx(i, j)]) * NCExpr.gen(labels[idx(k, l)])
                    if j == k:
                        rel = rel - NCExpr.gen(labels[idx(i, l)])
                    relations.append(rel)
            relations.append(
                NCExpr.gen(labels[idx(i, j)], starred=True)
                - NCExpr.gen(labels[idx(j, i)])
            )
    total = NCExpr.zero()
    for i in range(n):
        total = total + NCExpr.gen(labels[idx(i, i)])
    relations.append(total - NCExpr.one())

    alg.presentation = Presentation(
        gens,
        relations,
        basis_expr_fn=lambda k: NCExpr.gen(labels[k]),
        generator_elements={labels[k]: alg.basis_element(k) for k in range(dim)},
        algebra=alg,
    )
    return alg


def make_free_star(decls) -> FreeStarAlgebra:
    """Free *-algebra on the declared generators (no relations)."""
    decls = [d if isinstance(d, GenDecl) else GenDecl(d) for d in decls]
    alg = FreeStarAlgebra(decls)
    alg.presentation = Presentation(
        decls,
        [],
        basis_expr_fn=lambda k: NCExpr({k: ONE}),
        generator_elements={d.name: alg.gen(d.name) for d in decls},
        algebra=alg,
    )
    return alg
