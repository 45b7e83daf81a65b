"""Seeded random corpora for property tests and cross-checks.

Everything here is exact: coefficients are Gaussian rationals and the
random projections use the Pythagorean parametrization, so corpus
elements can be fed to both the symbolic layer and numeric oracles.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra import AlgebraError, Element, FiniteDimAlgebra, make_matrix_algebra
from .ncpoly import NCExpr
from .products import FreeProductAlgebra
from .scalars import QQi

DEFAULT_SEED = 20100101


def make_rng(seed: int = DEFAULT_SEED) -> random.Random:
    return random.Random(seed)


def random_coefficient(rng: random.Random, allow_imag: bool = True) -> QQi:
    """Nonzero Gaussian rational with both parts of magnitude >= 1/8,
    so numeric oracles never face a vanishingly small term."""
    def part():
        num = rng.choice([n for n in range(-8, 9) if n != 0])
        return Fraction(num, rng.randint(1, 8))

    re = part()
    im = part() if (allow_imag and rng.random() < 0.5) else Fraction(0)
    return QQi(re, im)


def random_word(rng: random.Random, F: FreeProductAlgebra, max_len: int = 4):
    """Reduced word: adjacent letters from different factors."""
    length = rng.randint(0, max_len)
    word = []
    prev = -1
    for _ in range(length):
        k = rng.choice([j for j in range(len(F.factors)) if j != prev])
        comp = rng.randrange(len(F.factors[k].reduced_complement))
        word.append((k, comp))
        prev = k
    return tuple(word)


def random_element(rng: random.Random, F: FreeProductAlgebra,
                   max_terms: int = 3, max_len: int = 4) -> Element:
    """Random linear combination of distinct reduced words."""
    x = F.zero()
    words = set()
    for _ in range(rng.randint(1, max_terms)):
        w = random_word(rng, F, max_len)
        if w in words:
            continue
        words.add(w)
        x = x + F.element({w: random_coefficient(rng)})
    return x


def random_idempotent_zero(rng: random.Random, F: FreeProductAlgebra) -> Element:
    """u (e^2 - e) v for a minimal idempotent e of a random C^n factor;
    zero only because of the factor relations."""
    k = rng.randrange(len(F.factors))
    A = F.factors[k]
    if not A.kind.startswith("C^"):
        raise AlgebraError("needs a function-algebra factor")
    i = rng.randrange(A.dim)
    e = F.embed(k, A.basis_element(i))
    u = random_element(rng, F, max_len=2)
    v = random_element(rng, F, max_len=2)
    return u * (e * e - e) * v


def random_zero_element(rng: random.Random, F: FreeProductAlgebra) -> Element:
    """Element that is exactly zero by construction, built so the
    reduction machinery actually has to work to see it."""
    kind = rng.randrange(4)
    u = random_element(rng, F)
    v = random_element(rng, F)
    if kind == 0:
        w = random_element(rng, F)
        return (u * v) * w - u * (v * w)
    if kind == 1:
        return (u * v).star() - v.star() * u.star()
    if kind == 2:
        return random_idempotent_zero(rng, F)
    return u * v - u * v


def random_ncexpr(rng: random.Random, names=("p", "q", "z", "u"),
                  max_terms: int = 4, max_len: int = 4) -> NCExpr:
    """Random formal *-polynomial, used for parser round trips."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        word = tuple(
            (rng.choice(names), rng.random() < 0.4)
            for _ in range(rng.randint(0, max_len))
        )
        terms[word] = random_coefficient(rng)
    return NCExpr(terms)


def random_rational_projection(rng: random.Random, A: FiniteDimAlgebra = None) -> Element:
    """Exact rank-one projection in M2 from a Pythagorean point: with
    c = (1-t^2)/(1+t^2) and s = 2t/(1+t^2) the matrix
    [[c^2, c s], [c s, s^2]] is an exact idempotent self-adjoint element."""
    if A is None:
        A = make_matrix_algebra(2)
    roll = rng.random()
    if roll < 0.1:
        return A.zero()
    if roll < 0.2:
        return A.unit()
    t = Fraction(rng.randint(-6, 6), rng.randint(1, 6))
    c = (1 - t * t) / (1 + t * t)
    s = (2 * t) / (1 + t * t)
    entries = {
        (0, 0): QQi(c * c),
        (0, 1): QQi(c * s),
        (1, 0): QQi(c * s),
        (1, 1): QQi(s * s),
    }
    x = A.zero()
    for (i, j), coef in entries.items():
        if coef != QQi(0):
            x = x + A.basis_element(2 * i + j).scale(coef)
    return x
