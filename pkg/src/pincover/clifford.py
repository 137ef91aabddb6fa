"""Clifford algebra of positive definite form on R^n over Q(sqrt2).

Generators e_1..e_n satisfy e_i^2 = +1 and e_i e_j = -e_j e_i for i != j.
Basis blades are bitmasks: bit i-1 set means e_i participates, so the
algebra dimension is capped at n <= 16 to keep masks in one machine word.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .scalars import ONE, QSqrt2, binom2

MAX_DIM = 16

ScalarLike = Union[int, Fraction, QSqrt2]


def bit_indices(mask: int) -> Iterator[int]:
    """Yield 0-based positions of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def blade_grade(mask: int) -> int:
    return mask.bit_count()


def blade_mul(a: int, b: int) -> tuple[int, int]:
    """Product of basis blades: returns (sign, result mask).

    The result mask is the symmetric difference; the sign is (-1)^s where s
    counts the pairs (i in a, j in b) with i > j, i.e. the transpositions
    needed to interleave the two index sequences (squares e_i^2 = +1 drop
    without sign).
    """
    swaps = 0
    rest = a >> 1
    while rest:
        swaps += (rest & b).bit_count()
        rest >>= 1
    return (-1 if swaps & 1 else 1), a ^ b


def blade_str(mask: int) -> str:
    if mask == 0:
        return "1"
    return "".join(f"e{i + 1}" for i in bit_indices(mask))


def _coerce_scalar(value: ScalarLike) -> QSqrt2:
    if isinstance(value, QSqrt2):
        return value
    return QSqrt2(value)


class Multivector:
    """Immutable element of the Clifford algebra in dimension n.

    Stored as a map blade-mask -> QSqrt2 with zero coefficients dropped,
    which makes structural equality coincide with algebra equality.
    """

    __slots__ = ("n", "_coeffs", "_key")

    def __init__(self, n: int, coeffs: Mapping[int, ScalarLike] | Iterable[tuple[int, ScalarLike]] = ()) -> None:
        if not 0 <= n <= MAX_DIM:
            raise ValueError(f"dimension must be in 0..{MAX_DIM}, got {n}")
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        clean: dict[int, QSqrt2] = {}
        for mask, value in items:
            if mask < 0 or mask >> n:
                raise ValueError(f"blade {mask:#x} does not fit in dimension {n}")
            c = clean.get(mask, None)
            v = _coerce_scalar(value) if c is None else c + _coerce_scalar(value)
            if v:
                clean[mask] = v
            elif c is not None:
                del clean[mask]
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_coeffs", clean)
        object.__setattr__(self, "_key", None)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Multivector is immutable")

    @classmethod
    def scalar(cls, n: int, value: ScalarLike) -> "Multivector":
        return cls(n, {0: value})

    @classmethod
    def basis_vector(cls, n: int, i: int) -> "Multivector":
        """e_i for 1 <= i <= n."""
        if not 1 <= i <= n:
            raise ValueError(f"basis index {i} out of range 1..{n}")
        return cls(n, {1 << (i - 1): 1})

    @classmethod
    def zero(cls, n: int) -> "Multivector":
        return cls(n, {})

    @classmethod
    def one(cls, n: int) -> "Multivector":
        return cls(n, {0: 1})

    def items(self) -> list[tuple[int, QSqrt2]]:
        return sorted(self._coeffs.items())

    def coeff(self, mask: int) -> QSqrt2:
        return self._coeffs.get(mask, QSqrt2(0))

    def grades(self) -> set[int]:
        return {blade_grade(m) for m in self._coeffs}

    def is_zero(self) -> bool:
        return not self._coeffs

    def _check_dim(self, other: "Multivector") -> None:
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: object) -> "Multivector":
        if not isinstance(other, Multivector):
            return NotImplemented
        self._check_dim(other)
        out = dict(self._coeffs)
        for mask, v in other._coeffs.items():
            s = out.get(mask)
            t = v if s is None else s + v
            if t:
                out[mask] = t
            elif s is not None:
                del out[mask]
        return self._wrap(out)

    def __sub__(self, other: object) -> "Multivector":
        if not isinstance(other, Multivector):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "Multivector":
        return self._wrap({m: -v for m, v in self._coeffs.items()})

    def __mul__(self, other: object) -> "Multivector":
        if isinstance(other, (int, Fraction, QSqrt2)):
            s = _coerce_scalar(other)
            if not s:
                return Multivector.zero(self.n)
            return self._wrap({m: v * s for m, v in self._coeffs.items()})
        if not isinstance(other, Multivector):
            return NotImplemented
        self._check_dim(other)
        out: dict[int, QSqrt2] = {}
        for ma, va in self._coeffs.items():
            for mb, vb in other._coeffs.items():
                sign, mask = blade_mul(ma, mb)
                term = va * vb if sign > 0 else -(va * vb)
                cur = out.get(mask)
                t = term if cur is None else cur + term
                if t:
                    out[mask] = t
                elif cur is not None:
                    del out[mask]
        return self._wrap(out)

    def __rmul__(self, other: object) -> "Multivector":
        if isinstance(other, (int, Fraction, QSqrt2)):
            return self * other
        return NotImplemented

    def _wrap(self, coeffs: dict[int, QSqrt2]) -> "Multivector":
        mv = Multivector.__new__(Multivector)
        object.__setattr__(mv, "n", self.n)
        object.__setattr__(mv, "_coeffs", coeffs)
        object.__setattr__(mv, "_key", None)
        return mv

    def __pow__(self, k: int) -> "Multivector":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.versor_inverse() ** (-k)
        out = Multivector.one(self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def grade_involution(self) -> "Multivector":
        return self._wrap({m: (-v if blade_grade(m) & 1 else v) for m, v in self._coeffs.items()})

    def reversal(self) -> "Multivector":
        return self._wrap({m: (-v if binom2(blade_grade(m)) & 1 else v) for m, v in self._coeffs.items()})

    def parity(self) -> int | None:
        """0 for even, 1 for odd, None if mixed or zero."""
        grades = {g & 1 for g in self.grades()}
        if len(grades) == 1:
            return grades.pop()
        return None

    def is_versor(self) -> bool:
        """Homogeneous parity and reversal(x) * x = 1."""
        if self.parity() is None:
            return False
        return self.reversal() * self == Multivector.one(self.n)

    def versor_inverse(self) -> "Multivector":
        if not self.is_versor():
            raise ValueError("inverse is only provided for versors (reversal(x)*x = 1)")
        return self.reversal()

    def key(self) -> tuple:
        k = self._key
        if k is None:
            k = tuple((m, v.key()) for m, v in self.items())
            object.__setattr__(self, "_key", k)
        return k

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.n == other.n and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self.n, self.key()))

    def __repr__(self) -> str:
        return f"Multivector({self.n}, {dict(self.items())!r})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for mask, v in self.items():
            coeff = str(v)
            if mask == 0:
                parts.append(coeff)
            elif coeff == "1":
                parts.append(blade_str(mask))
            elif coeff == "-1":
                parts.append(f"-{blade_str(mask)}")
            elif " " in coeff:
                parts.append(f"({coeff})*{blade_str(mask)}")
            else:
                parts.append(f"{coeff}*{blade_str(mask)}")
        return " + ".join(parts).replace("+ -", "- ")


def twisted_adjoint(x: Multivector, v: Multivector) -> Multivector:
    """grade_involution(x) * v * reversal(x).

    For unit versors this is the orthogonal action on vectors; on odd x it
    equals -x v x^-1 and on even x it equals x v x^-1, which is what makes
    it multiplicative across parities.
    """
    return x.grade_involution() * v * x.reversal()


def rho_matrix(x: Multivector) -> list[list[QSqrt2]]:
    """Matrix of the twisted adjoint on basis vectors; column i is the image of e_i.

    Raises if x is not a versor or the image of some e_i is not grade 1.
    """
    if not x.is_versor():
        raise ValueError("rho is only defined for versors")
    n = x.n
    cols: list[list[QSqrt2]] = []
    for i in range(1, n + 1):
        w = twisted_adjoint(x, Multivector.basis_vector(n, i))
        col = [QSqrt2(0)] * n
        for mask, v in w.items():
            if blade_grade(mask) != 1:
                raise ValueError(f"image of e{i} is not a vector: {w}")
            col[mask.bit_length() - 1] = v
        cols.append(col)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence[QSqrt2]], b: Sequence[Sequence[QSqrt2]]) -> list[list[QSqrt2]]:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = [[QSqrt2(0)] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            s = QSqrt2(0)
            for t in range(k):
                s = s + a[i][t] * b[t][j]
            out[i][j] = s
    return out


def mat_transpose(a: Sequence[Sequence[QSqrt2]]) -> list[list[QSqrt2]]:
    return [list(col) for col in zip(*a)]


def is_orthogonal(a: Sequence[Sequence[QSqrt2]]) -> bool:
    n = len(a)
    prod = mat_mul(mat_transpose(a), a)
    for i in range(n):
        for j in range(n):
            if prod[i][j] != (ONE if i == j else QSqrt2(0)):
                return False
    return True


def mat_det(a: Sequence[Sequence[QSqrt2]]) -> QSqrt2:
    """Exact determinant by fraction-free expansion along the first column."""
    n = len(a)
    if n == 0:
        return QSqrt2(1)
    if n == 1:
        return a[0][0]
    total = QSqrt2(0)
    for i in range(n):
        if not a[i][0]:
            continue
        minor = [row[1:] for k, row in enumerate(a) if k != i]
        term = a[i][0] * mat_det(minor)
        total = total + (term if i % 2 == 0 else -term)
    return total
