"""Exact Gaussian-rational scalars.

All symbolic computation in this package runs over Q(i): complex numbers
whose real and imaginary parts are arbitrary-precision rationals.  Every
identity check therefore reduces to a decidable exact-zero test.
"""

from __future__ import annotations

from fractions import Fraction


class QQi:
    """A complex number with Fraction real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    @staticmethod
    def coerce(value) -> "QQi":
        if isinstance(value, QQi):
            return value
        if isinstance(value, (int, Fraction)):
            return QQi(value)
        if isinstance(value, complex):
            raise TypeError("floats are not exact; build QQi from rationals")
        raise TypeError(f"cannot coerce {value!r} to QQi")

    def __add__(self, other):
        other = QQi.coerce(other)
        return QQi(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = QQi.coerce(other)
        return QQi(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return QQi.coerce(other) - self

    def __mul__(self, other):
        other = QQi.coerce(other)
        return QQi(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __truediv__(self, other):
        other = QQi.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return QQi.coerce(other) / self

    def inverse(self) -> "QQi":
        n = self.abs2()
        if n == 0:
            raise ZeroDivisionError("inverse of zero QQi")
        return QQi(self.re / n, -self.im / n)

    def conjugate(self) -> "QQi":
        return QQi(self.re, -self.im)

    def abs2(self) -> Fraction:
        """|s|^2 as an exact nonnegative rational."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        try:
            other = QQi.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"


ZERO = QQi(0)
ONE = QQi(1)
IMAG = QQi(0, 1)


def qq(a, b=1) -> QQi:
    """Shorthand for the rational a/b as a QQi."""
    return QQi(Fraction(a, b))
