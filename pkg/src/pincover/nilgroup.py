"""Free groups of nilpotency class 2 on a pointed set, and tensor squares.

Elements are written additively.  The canonical form of a word is

    sum_i a_i e_i   (ascending index)  +  sum_{i<j} c_ij [e_i, e_j]

with the commutator convention [x, y] = -x - y + x + y; commutators are
central and bilinear, so the two coefficient vectors determine the element.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .scalars import binom2


@dataclass(frozen=True)
class PointedSet:
    """Ordered generator names; the basepoint is implicit and maps to 0."""

    names: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate generator names")
        for name in self.names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
                raise ValueError(f"bad generator name {name!r}")

    @property
    def size(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def pairs(self) -> list[tuple[int, int]]:
        n = self.size
        return [(i, j) for i in range(n) for j in range(i + 1, n)]


def pair_pos(i: int, j: int, n: int) -> int:
    """Position of the ordered pair (i, j), i < j, in lexicographic order."""
    if not 0 <= i < j < n:
        raise ValueError(f"bad pair ({i}, {j}) for size {n}")
    return i * n - i * (i + 1) // 2 + (j - i - 1)


@dataclass(frozen=True)
class NilElement:
    ptset: PointedSet
    linear: tuple[int, ...]
    comm: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.ptset.size
        if len(self.linear) != n or len(self.comm) != n * (n - 1) // 2:
            raise ValueError("coefficient vectors have the wrong length")

    @classmethod
    def zero(cls, ptset: PointedSet) -> "NilElement":
        n = ptset.size
        return cls(ptset, (0,) * n, (0,) * (n * (n - 1) // 2))

    @classmethod
    def generator(cls, ptset: PointedSet, i: int) -> "NilElement":
        n = ptset.size
        lin = tuple(1 if k == i else 0 for k in range(n))
        return cls(ptset, lin, (0,) * (n * (n - 1) // 2))

    @classmethod
    def basis_commutator(cls, ptset: PointedSet, i: int, j: int) -> "NilElement":
        """[e_i, e_j] for i < j."""
        n = ptset.size
        pos = pair_pos(i, j, n)
        comm = tuple(1 if k == pos else 0 for k in range(n * (n - 1) // 2))
        return cls(ptset, (0,) * n, comm)

    def is_zero(self) -> bool:
        return not any(self.linear) and not any(self.comm)

    def __str__(self) -> str:
        parts = []
        for i, a in enumerate(self.linear):
            if a:
                name = self.ptset.names[i]
                parts.append(name if a == 1 else f"-{name}" if a == -1 else f"{a} {name}")
        for (i, j), c in zip(self.ptset.pairs(), self.comm):
            if c:
                br = f"[{self.ptset.names[i]},{self.ptset.names[j]}]"
                parts.append(br if c == 1 else f"-{br}" if c == -1 else f"{c} {br}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def _check_same(x: NilElement, y: NilElement) -> None:
    if x.ptset != y.ptset:
        raise ValueError("elements come from different pointed sets")


def nil_mul(x: NilElement, y: NilElement) -> NilElement:
    """Group law: linear parts add; moving y's letters left past x's higher
    generators deposits -a_j*b_i on the pair (i, j)."""
    _check_same(x, y)
    n = x.ptset.size
    lin = tuple(a + b for a, b in zip(x.linear, y.linear))
    comm = list(c + d for c, d in zip(x.comm, y.comm))
    for i in range(n):
        b_i = y.linear[i]
        if not b_i:
            continue
        for j in range(i + 1, n):
            a_j = x.linear[j]
            if a_j:
                comm[pair_pos(i, j, n)] -= a_j * b_i
    return NilElement(x.ptset, lin, tuple(comm))


def nil_inv(x: NilElement) -> NilElement:
    n = x.ptset.size
    lin = tuple(-a for a in x.linear)
    comm = list(-c for c in x.comm)
    for i in range(n):
        for j in range(i + 1, n):
            if x.linear[i] and x.linear[j]:
                comm[pair_pos(i, j, n)] -= x.linear[i] * x.linear[j]
    return NilElement(x.ptset, lin, tuple(comm))


def nil_scale(k: int, x: NilElement) -> NilElement:
    """k-fold sum of x (k may be negative)."""
    n = x.ptset.size
    lin = tuple(k * a for a in x.linear)
    comm = list(k * c for c in x.comm)
    b2 = binom2(k)
    for i in range(n):
        for j in range(i + 1, n):
            if x.linear[i] and x.linear[j]:
                comm[pair_pos(i, j, n)] -= b2 * x.linear[i] * x.linear[j]
    return NilElement(x.ptset, lin, tuple(comm))


def commutator(x: NilElement, y: NilElement) -> NilElement:
    return nil_mul(nil_mul(nil_inv(x), nil_inv(y)), nil_mul(x, y))


def abelianize(x: NilElement) -> tuple[int, ...]:
    return x.linear


@dataclass(frozen=True)
class TensorElt:
    """Element of the tensor square of the free abelian group on the set;
    coeffs is row-major over ordered pairs, e_i (x) e_j at position i*n + j."""

    ptset: PointedSet
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.ptset.size ** 2:
            raise ValueError("coefficient vector has the wrong length")

    @classmethod
    def zero(cls, ptset: PointedSet) -> "TensorElt":
        return cls(ptset, (0,) * (ptset.size ** 2))

    @classmethod
    def basis(cls, ptset: PointedSet, i: int, j: int) -> "TensorElt":
        n = ptset.size
        coeffs = [0] * (n * n)
        coeffs[i * n + j] = 1
        return cls(ptset, tuple(coeffs))

    def coeff(self, i: int, j: int) -> int:
        return self.coeffs[i * self.ptset.size + j]

    def __add__(self, other: "TensorElt") -> "TensorElt":
        if not isinstance(other, TensorElt) or other.ptset != self.ptset:
            return NotImplemented
        return TensorElt(self.ptset, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "TensorElt") -> "TensorElt":
        return self + (-other)

    def __neg__(self) -> "TensorElt":
        return TensorElt(self.ptset, tuple(-a for a in self.coeffs))

    def scale(self, k: int) -> "TensorElt":
        return TensorElt(self.ptset, tuple(k * a for a in self.coeffs))

    def transpose(self) -> "TensorElt":
        n = self.ptset.size
        return TensorElt(self.ptset, tuple(self.coeffs[j * n + i] for i in range(n) for j in range(n)))

    def __str__(self) -> str:
        n = self.ptset.size
        parts = []
        for i in range(n):
            for j in range(n):
                c = self.coeff(i, j)
                if c:
                    term = f"{self.ptset.names[i]}(x){self.ptset.names[j]}"
                    parts.append(term if c == 1 else f"-{term}" if c == -1 else f"{c} {term}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def tensor(u: Sequence[int], v: Sequence[int], ptset: PointedSet) -> TensorElt:
    n = ptset.size
    coeffs = tuple(u[i] * v[j] for i in range(n) for j in range(n))
    return TensorElt(ptset, coeffs)


def crossed_effect_0free(s: NilElement, t: NilElement) -> TensorElt:
    """(s|t)_H = abelianize(t) (x) abelianize(s)."""
    _check_same(s, t)
    return tensor(abelianize(t), abelianize(s), s.ptset)


def h_0free(x: NilElement) -> TensorElt:
    """The quadratic map with H(e) = 0 and H(x+y) = H(x) + H(y) + (x|y)_H.

    Closed form on the canonical coefficients: binom2(a_i) e_i(x)e_i on the
    diagonal, a_i a_j e_j(x)e_i above it, and each [e_i,e_j] contributes
    e_j(x)e_i - e_i(x)e_j.  Validated against the recursion in the tests.
    """
    n = x.ptset.size
    coeffs = [0] * (n * n)
    for i, a in enumerate(x.linear):
        coeffs[i * n + i] += binom2(a)
    for (i, j), c in zip(x.ptset.pairs(), x.comm):
        a_i, a_j = x.linear[i], x.linear[j]
        coeffs[j * n + i] += a_i * a_j + c
        coeffs[i * n + j] -= c
    return TensorElt(x.ptset, tuple(coeffs))


@dataclass(frozen=True)
class RedTensorElt:
    """Reduced tensor square: off-diagonal classes of e_i(x)e_j (i < j) are
    free, each diagonal class e_i(x)e_i is of order 2; e_j(x)e_i = -e_i(x)e_j."""

    ptset: PointedSet
    offdiag: tuple[int, ...]
    diag: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.ptset.size
        if len(self.offdiag) != n * (n - 1) // 2 or len(self.diag) != n:
            raise ValueError("coefficient vectors have the wrong length")
        if any(d not in (0, 1) for d in self.diag):
            raise ValueError("diagonal coefficients live in Z/2")

    @classmethod
    def zero(cls, ptset: PointedSet) -> "RedTensorElt":
        n = ptset.size
        return cls(ptset, (0,) * (n * (n - 1) // 2), (0,) * n)

    def __add__(self, other: "RedTensorElt") -> "RedTensorElt":
        if not isinstance(other, RedTensorElt) or other.ptset != self.ptset:
            return NotImplemented
        off = tuple(a + b for a, b in zip(self.offdiag, other.offdiag))
        dia = tuple((a + b) % 2 for a, b in zip(self.diag, other.diag))
        return RedTensorElt(self.ptset, off, dia)

    def __neg__(self) -> "RedTensorElt":
        return RedTensorElt(self.ptset, tuple(-a for a in self.offdiag), self.diag)

    def __sub__(self, other: "RedTensorElt") -> "RedTensorElt":
        return self + (-other)

    def scale(self, k: int) -> "RedTensorElt":
        return RedTensorElt(self.ptset, tuple(k * a for a in self.offdiag),
                            tuple((k * a) % 2 for a in self.diag))

    def __str__(self) -> str:
        parts = []
        for (i, j), c in zip(self.ptset.pairs(), self.offdiag):
            if c:
                term = f"{self.ptset.names[i]}(x){self.ptset.names[j]}"
                parts.append(term if c == 1 else f"-{term}" if c == -1 else f"{c} {term}")
        for i, d in enumerate(self.diag):
            if d:
                parts.append(f"{self.ptset.names[i]}(x){self.ptset.names[i]}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def sigma_bar(z: TensorElt) -> RedTensorElt:
    """Natural projection of the tensor square onto its reduced quotient."""
    n = z.ptset.size
    off = tuple(z.coeff(i, j) - z.coeff(j, i) for (i, j) in z.ptset.pairs())
    dia = tuple(z.coeff(i, i) % 2 for i in range(n))
    return RedTensorElt(z.ptset, off, dia)


# ---------------------------------------------------------------------------
# Textual element syntax used by the CLI:
#
#   elem  := ['-'] term (('+'|'-') term)*
#   term  := [int '*'?] atom | '0'
#   atom  := name | '[' name ',' name ']'
#
# e.g.  "e1 + e2 - e1",  "2 e1 + 3 [e1,e2]",  "-[a,b]",  "0"
# ---------------------------------------------------------------------------

_ELEM_TOKEN = re.compile(r"\s*(?:(?P<int>-?\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<punc>[-+*\[\],])|(?P<bad>\S))")


class NilSyntaxError(ValueError):
    pass


def parse_nil_element(text: str, ptset: PointedSet) -> NilElement:
    tokens: list[tuple[str, str]] = []
    pos = 0
    while pos < len(text):
        m = _ELEM_TOKEN.match(text, pos)
        if m is None:
            break
        if m.group("bad"):
            raise NilSyntaxError(f"column {m.start('bad') + 1}: unexpected {m.group('bad')!r}")
        for kind in ("int", "name", "punc"):
            if m.group(kind):
                # a leading '-' binds to the following term, not the integer
                if kind == "int" and m.group(kind).startswith("-"):
                    tokens.append(("punc", "-"))
                    tokens.append(("int", m.group(kind)[1:]))
                else:
                    tokens.append((kind, m.group(kind)))
                break
        pos = m.end()

    i = 0

    def peek() -> tuple[str, str] | None:
        return tokens[i] if i < len(tokens) else None

    def take(expected: tuple[str, str] | None = None) -> tuple[str, str]:
        nonlocal i
        t = peek()
        if t is None:
            raise NilSyntaxError("unexpected end of input")
        if expected is not None and t != expected:
            raise NilSyntaxError(f"expected {expected[1]!r}, got {t[1]!r}")
        i += 1
        return t

    def atom() -> NilElement:
        t = take()
        if t[0] == "name":
            try:
                return NilElement.generator(ptset, ptset.index(t[1]))
            except ValueError:
                raise NilSyntaxError(f"unknown generator {t[1]!r}") from None
        if t == ("punc", "["):
            a = take()
            take(("punc", ","))
            b = take()
            take(("punc", "]"))
            if a[0] != "name" or b[0] != "name":
                raise NilSyntaxError("commutator brackets take two generator names")
            try:
                ia, ib = ptset.index(a[1]), ptset.index(b[1])
            except ValueError:
                raise NilSyntaxError(f"unknown generator in [{a[1]},{b[1]}]") from None
            if ia == ib:
                return NilElement.zero(ptset)
            if ia < ib:
                return NilElement.basis_commutator(ptset, ia, ib)
            return nil_inv(NilElement.basis_commutator(ptset, ib, ia))
        raise NilSyntaxError(f"expected generator or '[', got {t[1]!r}")

    def term() -> NilElement:
        t = peek()
        if t is not None and t[0] == "int":
            take()
            k = int(t[1])
            nxt = peek()
            if nxt == ("punc", "*"):
                take()
                nxt = peek()
            if nxt is None or nxt[0] not in ("name",) and nxt != ("punc", "["):
                if k == 0:
                    return NilElement.zero(ptset)
                raise NilSyntaxError("integers may only appear as coefficients (or a lone 0)")
            return nil_scale(k, atom())
        return atom()

    if not tokens:
        raise NilSyntaxError("empty element")
    negate = False
    if peek() == ("punc", "-"):
        take()
        negate = True
    out = term()
    if negate:
        out = nil_inv(out)
    while peek() is not None:
        op = take()
        if op not in (("punc", "+"), ("punc", "-")):
            raise NilSyntaxError(f"expected '+' or '-', got {op[1]!r}")
        t = term()
        out = nil_mul(out, nil_inv(t) if op[1] == "-" else t)
    return out
