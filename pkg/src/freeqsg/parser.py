"""Expression and presentation-file parsing and printing.

Expression grammar::

    expression := term (('+' | '-') term)*
    term       := coefficient? factor*
    coefficient:= (integer | integer '/' integer) 'i'? | 'i'
    factor     := name | '1' | '(' expression ')'

with postfix ``'`` for the adjoint and juxtaposition for the (left to
right, noncommutative) product.  The name ``i`` is reserved for the
imaginary unit.  Coefficients are exact rationals; floats are rejected.

Presentation files are line based::

    # comment
    generator p selfadjoint
    generator z
    relation p - p p - z' z

A generator line may carry ``selfadjoint`` or ``adjoint_of NAME``;
relation expressions may only use declared generators.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import AlgebraError, Presentation
from .ncpoly import GenDecl, NCExpr
from .scalars import QQi


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([-+()'/]))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == m.start():
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}",
                             len(text) - len(stripped))
        if m.group(1) is not None:
            tokens.append(("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        else:
            tokens.append(("sym", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def next(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect_sym(self, sym: str):
        kind, val, pos = self.next()
        if kind != "sym" or val != sym:
            raise ParseError(f"expected {sym!r}", pos)

    def parse(self) -> NCExpr:
        expr = self.expression()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos)
        return expr

    def expression(self) -> NCExpr:
        sign = 1
        kind, val, _ = self.peek()
        if kind == "sym" and val in "+-":
            self.next()
            sign = -1 if val == "-" else 1
        acc = self.term().scale(sign)
        while True:
            kind, val, _ = self.peek()
            if kind == "sym" and val in "+-":
                self.next()
                t = self.term()
                acc = acc - t if val == "-" else acc + t
            else:
                return acc

    def term(self) -> NCExpr:
        coeff, had_coeff = self.coefficient()
        factors = []
        while True:
            f = self.factor()
            if f is None:
                break
            factors.append(f)
        if not factors:
            if not had_coeff:
                kind, val, pos = self.peek()
                raise ParseError(f"expected a term, found {val or 'end'!r}", pos)
            return NCExpr.scalar(coeff)
        acc = factors[0]
        for f in factors[1:]:
            acc = acc * f
        return acc.scale(coeff)

    def coefficient(self):
        """Optional leading rational, optionally times i, or bare i."""
        kind, val, pos = self.peek()
        if kind == "name" and val == "i":
            self.next()
            return QQi(0, 1), True
        if kind != "num":
            return QQi(1), False
        start = self.k
        self.next()
        num = int(val)
        den = 1
        kind, val, _ = self.peek()
        if kind == "sym" and val == "/":
            self.next()
            kind, val, pos = self.next()
            if kind != "num":
                raise ParseError("expected denominator", pos)
            den = int(val)
            if den == 0:
                raise ParseError("zero denominator", pos)
        q = Fraction(num, den)
        kind, val, _ = self.peek()
        if kind == "name" and val == "i":
            self.next()
            return QQi(0, q), True
        # a bare integer followed by ' would star a scalar; treat the
        # number as the unit factor instead of a coefficient then
        kind, val, _ = self.peek()
        if den == 1 and kind == "sym" and val == "'":
            self.k = start
            return QQi(1), False
        return QQi(q), True

    def factor(self):
        kind, val, pos = self.peek()
        if kind == "name":
            if val == "i":
                raise ParseError("'i' is reserved for the imaginary unit", pos)
            self.next()
            expr = NCExpr.gen(val)
        elif kind == "num" and val == "1":
            self.next()
            expr = NCExpr.one()
        elif kind == "sym" and val == "(":
            self.next()
            expr = self.expression()
            self.expect_sym(")")
        else:
            return None
        while True:
            kind, val, _ = self.peek()
            if kind == "sym" and val == "'":
                self.next()
                expr = expr.star()
            else:
                return expr


def parse_expression(text: str) -> NCExpr:
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# printing


def _format_rational(q: Fraction) -> str:
    return str(q) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _format_word(word) -> str:
    return " ".join(
        name + ("'" if starred else "") for (name, starred) in word
    )


def format_expression(expr: NCExpr) -> str:
    """Canonical text form; parse(format(e)) == e exactly.  Complex
    coefficients are split into a real and an imaginary printed term."""
    if expr.is_zero():
        return "0"
    pieces = []
    for word, coeff in expr.sorted_terms():
        for q, imag in ((coeff.re, False), (coeff.im, True)):
            if q == 0:
                continue
            sign = "-" if q < 0 else "+"
            mag = abs(q)
            bits = []
            if mag != 1 or (not imag and not word):
                bits.append(_format_rational(mag))
            if imag:
                bits.append("i")
            if word:
                bits.append(_format_word(word))
            pieces.append((sign, " ".join(bits)))
    first_sign, first = pieces[0]
    out = ("- " if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# presentation files


def parse_presentation(text: str) -> Presentation:
    gens = []
    names = set()
    relations = []
    pending = []  # (expr, line_no) until all generators are known
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "generator":
            fields = rest.split()
            if not fields:
                raise AlgebraError(f"line {line_no}: generator needs a name")
            name = fields[0]
            if name == "i" or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
                raise AlgebraError(f"line {line_no}: bad generator name {name!r}")
            decl = GenDecl(name)
            if len(fields) == 2 and fields[1] == "selfadjoint":
                decl = GenDecl(name, selfadjoint=True)
            elif len(fields) == 3 and fields[1] == "adjoint_of":
                decl = GenDecl(name, adjoint=fields[2])
            elif len(fields) != 1:
                raise AlgebraError(f"line {line_no}: bad generator clause {rest!r}")
            if name in names:
                raise AlgebraError(f"line {line_no}: duplicate generator {name}")
            names.add(name)
            gens.append(decl)
        elif head == "relation":
            try:
                expr = parse_expression(rest)
            except ParseError as exc:
                raise AlgebraError(f"line {line_no}: {exc}") from exc
            pending.append((expr, line_no))
        else:
            raise AlgebraError(f"line {line_no}: unknown directive {head!r}")
    for decl in gens:
        if decl.adjoint is not None and decl.adjoint not in names:
            raise AlgebraError(
                f"adjoint partner {decl.adjoint!r} of {decl.name!r} undeclared"
            )
    for expr, line_no in pending:
        unknown = expr.generators() - names
        if unknown:
            raise AlgebraError(
                f"line {line_no}: unknown generators {sorted(unknown)}"
            )
        relations.append(expr)
    return Presentation(gens, relations)


def print_presentation(pres: Presentation) -> str:
    lines = []
    for decl in pres.gens:
        if decl.selfadjoint:
            lines.append(f"generator {decl.name} selfadjoint")
        elif decl.adjoint is not None:
            lines.append(f"generator {decl.name} adjoint_of {decl.adjoint}")
        else:
            lines.append(f"generator {decl.name}")
    for rel in pres.relations:
        lines.append(f"relation {format_expression(rel)}")
    return "\n".join(lines) + "\n"
