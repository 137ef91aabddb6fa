"""Exact arithmetic in the field Q(sqrt2) and small integer helpers."""

from __future__ import annotations

from fractions import Fraction
from typing import Union

RatLike = Union[int, Fraction]


def binom2(n: int) -> int:
    """n*(n-1)/2 for any integer n, including negatives (always an integer)."""
    return n * (n - 1) // 2


class QSqrt2:
    """An element a + b*sqrt(2) with a, b rational, kept in lowest terms.

    Fraction normalizes sign and gcd, so structural equality of the two
    components is exact equality in the field.
    """

    __slots__ = ("a", "b")

    def __init__(self, a: RatLike = 0, b: RatLike = 0) -> None:
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("QSqrt2 is immutable")

    @classmethod
    def _coerce(cls, other: object) -> "QSqrt2 | None":
        if isinstance(other, QSqrt2):
            return other
        if isinstance(other, (int, Fraction)):
            return cls(other)
        return None

    def __add__(self, other: object) -> "QSqrt2":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QSqrt2(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other: object) -> "QSqrt2":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QSqrt2(self.a - o.a, self.b - o.b)

    def __rsub__(self, other: object) -> "QSqrt2":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self) -> "QSqrt2":
        return QSqrt2(-self.a, -self.b)

    def __mul__(self, other: object) -> "QSqrt2":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QSqrt2(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def conjugate(self) -> "QSqrt2":
        """a - b*sqrt2, the nontrivial field automorphism."""
        return QSqrt2(self.a, -self.b)

    def norm(self) -> Fraction:
        """Field norm a^2 - 2 b^2; zero only for the zero element."""
        return self.a * self.a - 2 * self.b * self.b

    def inverse(self) -> "QSqrt2":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt2)")
        return QSqrt2(self.a / n, -self.b / n)

    def __truediv__(self, other: object) -> "QSqrt2":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def key(self) -> tuple:
        """Deterministic sort/hash key (numerators and denominators)."""
        return (self.a.numerator, self.a.denominator, self.b.numerator, self.b.denominator)

    def __repr__(self) -> str:
        return f"QSqrt2({self.a!r}, {self.b!r})"

    def __str__(self) -> str:
        if not self:
            return "0"
        parts = []
        if self.a:
            parts.append(str(self.a))
        if self.b:
            if self.b == 1:
                parts.append("sqrt2")
            elif self.b == -1:
                parts.append("-sqrt2")
            else:
                parts.append(f"{self.b}*sqrt2")
        return " + ".join(parts).replace("+ -", "- ")


ZERO = QSqrt2(0)
ONE = QSqrt2(1)
SQRT2 = QSqrt2(0, 1)
INV_SQRT2 = QSqrt2(0, Fraction(1, 2))
