"""Formal noncommutative *-polynomials.

An NCExpr is a finite QQi-weighted sum of words; a word is a tuple of
letters and a letter is a generator name together with a star flag.  The
empty word is the unit.  Expressions are context free: whether a starred
letter simplifies (self-adjoint generators, matrix-unit adjoint pairs)
is decided by the algebra or presentation that interprets them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .scalars import ONE, QQi

Letter = tuple  # (name: str, starred: bool)
Word = tuple  # tuple of Letter; () is the unit


@dataclass(frozen=True)
class GenDecl:
    """Generator declaration: name plus involution behaviour.

    ``selfadjoint`` means g* = g; ``adjoint`` names the generator equal
    to g* (e.g. E12* = E21).  When both are unset the star of g stays a
    formal starred letter.
    """

    name: str
    selfadjoint: bool = False
    adjoint: str | None = None

    def star_letter(self) -> Letter:
        if self.selfadjoint:
            return (self.name, False)
        if self.adjoint is not None:
            return (self.adjoint, False)
        return (self.name, True)

    def letters(self) -> list:
        """Letters this generator contributes to words involving it."""
        if self.selfadjoint or self.adjoint is not None:
            return [(self.name, False)]
        return [(self.name, False), (self.name, True)]


def word_key(word: Word):
    return (len(word), word)


def star_word(word: Word) -> Word:
    return tuple((name, not starred) for (name, starred) in reversed(word))


class NCExpr:
    """Canonical formal *-polynomial: dict word -> nonzero QQi."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for word, coeff in terms.items():
                coeff = QQi.coerce(coeff)
                if not coeff.is_zero():
                    acc = clean.get(word)
                    coeff = coeff if acc is None else acc + coeff
                    if coeff.is_zero():
                        del clean[word]
                    else:
                        clean[word] = coeff
        self.terms = clean

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "NCExpr":
        return NCExpr()

    @staticmethod
    def one() -> "NCExpr":
        return NCExpr({(): ONE})

    @staticmethod
    def gen(name: str, starred: bool = False) -> "NCExpr":
        return NCExpr({((name, starred),): ONE})

    @staticmethod
    def scalar(c) -> "NCExpr":
        return NCExpr({(): QQi.coerce(c)})

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "NCExpr") -> "NCExpr":
        out = dict(self.terms)
        for word, coeff in other.terms.items():
            acc = out.get(word)
            out[word] = coeff if acc is None else acc + coeff
        return NCExpr(out)

    def __sub__(self, other: "NCExpr") -> "NCExpr":
        return self + (-other)

    def __neg__(self) -> "NCExpr":
        return NCExpr({w: -c for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, QQi)):
            return self.scale(other)
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                word = w1 + w2
                coeff = c1 * c2
                acc = out.get(word)
                out[word] = coeff if acc is None else acc + coeff
        return NCExpr(out)

    def __rmul__(self, other):
        if isinstance(other, (int, QQi)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "NCExpr":
        c = QQi.coerce(c)
        return NCExpr({w: c * k for w, k in self.terms.items()})

    def star(self) -> "NCExpr":
        return NCExpr(
            {star_word(w): c.conjugate() for w, c in self.terms.items()}
        )

    # -- queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, NCExpr):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda wc: word_key(wc[0]))

    def generators(self) -> set:
        return {name for w in self.terms for (name, _starred) in w}

    def rename(self, mapping: dict) -> "NCExpr":
        """Rename generators; names absent from the mapping are kept."""
        out = {}
        for word, coeff in self.terms.items():
            new = tuple((mapping.get(n, n), s) for (n, s) in word)
            acc = out.get(new)
            out[new] = coeff if acc is None else acc + coeff
        return NCExpr(out)

    def __repr__(self):
        from .parser import format_expression

        return f"NCExpr({format_expression(self)})"
