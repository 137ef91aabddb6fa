"""The double cover of the symmetric group sitting inside Pin+(n).

The group of interest consists of the units x of the even/odd Clifford
algebra over Q(sqrt2) whose twisted adjoint permutes the basis vectors
e_1..e_n with coefficient exactly +1.  It is generated by the scalar
omega = -1 together with t_i = (e_i - e_{i+1})/sqrt2 covering the adjacent
transposition (i i+1); the cover has kernel {1, -1} and order 2 * n!.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .clifford import Multivector, rho_matrix, twisted_adjoint
from .perm import Permutation
from .report import Report
from .scalars import ONE, QSqrt2, binom2

MAX_ENUM_DIM = 7


def gen_t(i: int, n: int) -> Multivector:
    """(e_i - e_{i+1})/sqrt2, the lift of the transposition (i i+1)."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"generator index {i} out of range 1..{n - 1}")
    e_i = Multivector.basis_vector(n, i)
    e_j = Multivector.basis_vector(n, i + 1)
    return (e_i - e_j) * QSqrt2(0, Fraction(1, 2))


def omega(n: int) -> Multivector:
    """The central scalar -1."""
    return Multivector.scalar(n, -1)


def hat_tau(k: int) -> Multivector:
    """Product over i=1..k of (e_i - e_{i+k})/sqrt2 in dimension 2k.

    Covers the block swap i <-> i+k; its square is the scalar (-1)^(k(k-1)/2).
    """
    if k < 1 or 2 * k > 16:
        raise ValueError(f"k must satisfy 1 <= k and 2k <= 16, got {k}")
    n = 2 * k
    out = Multivector.one(n)
    half = QSqrt2(0, Fraction(1, 2))
    for i in range(1, k + 1):
        v = (Multivector.basis_vector(n, i) - Multivector.basis_vector(n, i + k)) * half
        out = out * v
    return out


def membership(x: Multivector) -> Permutation | None:
    """The permutation sigma with twisted_adjoint(x, e_i) = e_{sigma(i)} exactly,
    or None if x is not a versor or some image is not a +1 basis vector."""
    if not x.is_versor():
        return None
    n = x.n
    images = []
    for i in range(1, n + 1):
        w = twisted_adjoint(x, Multivector.basis_vector(n, i))
        items = w.items()
        if len(items) != 1:
            return None
        mask, coeff = items[0]
        if coeff != ONE or mask.bit_count() != 1:
            return None
        images.append(mask.bit_length())
    try:
        return Permutation(tuple(images))
    except ValueError:
        return None


@dataclass(frozen=True)
class SymTrackElement:
    """A group element together with its image permutation (cached)."""

    mv: Multivector
    delta: Permutation

    @classmethod
    def from_multivector(cls, x: Multivector) -> "SymTrackElement":
        sigma = membership(x)
        if sigma is None:
            raise ValueError(f"not a member of the cover: {x}")
        return cls(x, sigma)

    @property
    def n(self) -> int:
        return self.mv.n

    def __mul__(self, other: "SymTrackElement") -> "SymTrackElement":
        if not isinstance(other, SymTrackElement):
            return NotImplemented
        return SymTrackElement(self.mv * other.mv, self.delta * other.delta)

    def inverse(self) -> "SymTrackElement":
        return SymTrackElement(self.mv.reversal(), self.delta.inverse())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymTrackElement):
            return NotImplemented
        return self.mv == other.mv

    def __hash__(self) -> int:
        return hash(self.mv)

    def __str__(self) -> str:
        return f"{self.mv}  |->  {self.delta}"


def _generator_elements(n: int) -> dict[str, SymTrackElement]:
    gens = {"w": SymTrackElement(omega(n), Permutation.identity(n))}
    for i in range(1, n):
        gens[f"t{i}"] = SymTrackElement(gen_t(i, n), Permutation.transposition(n, i, i + 1))
    return gens


def eval_word(word: Iterable[str], n: int) -> SymTrackElement:
    """Product of generator tokens "w", "t3", optionally suffixed "^-1" or "^k"."""
    gens = _generator_elements(n)
    out = SymTrackElement(Multivector.one(n), Permutation.identity(n))
    for token in word:
        name, _, exp = token.partition("^")
        name = name.strip()
        if name not in gens:
            raise ValueError(f"unknown generator {name!r} for dimension {n}")
        k = int(exp) if exp else 1
        g = gens[name]
        if k < 0:
            g, k = g.inverse(), -k
        for _ in range(k):
            out = out * g
    return out


@lru_cache(maxsize=None)
def enumerate_group(n: int) -> tuple[SymTrackElement, ...]:
    """All 2*n! elements, deterministically ordered.

    Breadth-first closure of {1} under right multiplication by the
    generators; the result is sorted by the canonical multivector key so
    the ordering does not depend on traversal order.
    """
    if not 2 <= n <= MAX_ENUM_DIM:
        raise ValueError(f"n must be in 2..{MAX_ENUM_DIM}, got {n}")
    gens = list(_generator_elements(n).values())
    one = SymTrackElement(Multivector.one(n), Permutation.identity(n))
    seen = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return tuple(sorted(seen, key=lambda el: el.mv.key()))


def check_presentation(n: int) -> Report:
    """Evaluate the five defining relation families on the Clifford model."""
    if n < 2:
        raise ValueError("need n >= 2")
    rep = Report(f"presentation relations hold in the Clifford model, n={n}")
    one = Multivector.one(n)
    w = omega(n)
    t = {i: gen_t(i, n) for i in range(1, n)}
    for i in range(1, n):
        rep.add(f"t{i}^2 = 1", t[i] * t[i] == one)
    for i in range(1, n - 1):
        rep.add(f"(t{i} t{i + 1})^3 = 1", (t[i] * t[i + 1]) ** 3 == one)
    rep.add("w^2 = 1", w * w == one)
    for i in range(1, n):
        rep.add(f"t{i} w = w t{i}", t[i] * w == w * t[i])
    for i in range(1, n):
        for j in range(i + 2, n):
            rep.add(f"t{i} t{j} = w t{j} t{i}", t[i] * t[j] == w * t[j] * t[i])
    return rep


def lemma_a_check(k: int) -> tuple[bool, int, Report]:
    """hat_tau(k)^2 against the scalar (-1)^binom2(k); returns (ok, sign, report)."""
    tau = hat_tau(k)
    sq = tau * tau
    expected_sign = -1 if binom2(k) % 2 else 1
    expected = Multivector.scalar(2 * k, expected_sign)
    ok = sq == expected
    rep = Report(f"block swap square, k={k}")
    rep.add(f"hat_tau({k})^2 = {expected_sign}", ok, witness="" if ok else str(sq))
    sign = 0
    if sq == Multivector.scalar(2 * k, 1):
        sign = 1
    elif sq == Multivector.scalar(2 * k, -1):
        sign = -1
    return ok, sign, rep


@dataclass
class ExtensionAnalysis:
    n: int
    kernel: list[SymTrackElement]
    kernel_ok: bool
    omega_central: bool
    split: bool
    section: dict[int, int] | None
    failures: list[tuple[tuple[int, ...], str]]
    report: Report


def extension_analysis(n: int) -> ExtensionAnalysis:
    """Kernel, centrality of -1, and an exhaustive splitting search.

    A section of the cover must send the adjacent transposition (i i+1) to
    one of the two elements +-t_i above it, so sections correspond to sign
    vectors; each vector is tested against the defining relations of the
    symmetric group.
    """
    if not 2 <= n <= 6:
        raise ValueError(f"n must be in 2..6, got {n}")
    rep = Report(f"extension analysis, n={n}")
    one = Multivector.one(n)
    w = omega(n)

    kernel = [x for x in enumerate_group(n) if x.delta.is_identity()]
    kernel_mvs = {x.mv for x in kernel}
    kernel_ok = kernel_mvs == {one, w}
    rep.add("kernel of delta is {1, -1}", kernel_ok, witness=f"size {len(kernel)}")

    central = all(w * g == g * w for g in (gen_t(i, n) for i in range(1, n)))
    rep.add("-1 commutes with every generator", central)

    t = {i: gen_t(i, n) for i in range(1, n)}
    failures: list[tuple[tuple[int, ...], str]] = []
    section: dict[int, int] | None = None
    for bits in range(1 << (n - 1)):
        signs = tuple(1 if bits & (1 << (i - 1)) == 0 else -1 for i in range(1, n))
        s = {i: (t[i] if signs[i - 1] > 0 else -t[i]) for i in range(1, n)}
        bad = ""
        for i in range(1, n):
            if s[i] * s[i] != one:
                bad = f"s{i}^2 != 1"
                break
        if not bad:
            for i in range(1, n - 1):
                if (s[i] * s[i + 1]) ** 3 != one:
                    bad = f"(s{i} s{i + 1})^3 != 1"
                    break
        if not bad:
            for i in range(1, n):
                for j in range(i + 2, n):
                    if (s[i] * s[j]) ** 2 != one:
                        bad = f"(s{i} s{j})^2 != 1"
                        break
                if bad:
                    break
        if bad:
            failures.append((signs, bad))
        elif section is None:
            section = {i: signs[i - 1] for i in range(1, n)}
    split = section is not None
    if split:
        rep.add("a homomorphic section exists", True,
                witness=" ".join(f"s{i}={'+' if v > 0 else '-'}t{i}" for i, v in sorted(section.items())))
    else:
        rep.add(f"no section: all {len(failures)}/{1 << (n - 1)} sign choices fail", len(failures) == (1 << (n - 1)),
                witness="; ".join(f"{s}: {r}" for s, r in failures[:2]) + ("; ..." if len(failures) > 2 else ""))
    return ExtensionAnalysis(n, kernel, kernel_ok, central, split, section, failures, rep)


def cup_one_exponent(n: int, m: int) -> int:
    """(n/2 + m/2) mod 2 for even n, m >= 2.

    The parity n/2 mod 2 equals binom2(n) mod 2 for even n, which is the
    sign exponent of hat_tau(n)^2; that identity is re-verified exactly in
    the Clifford model whenever the dimension 2n fits (n <= 7).
    """
    if n < 2 or m < 2 or n % 2 or m % 2:
        raise ValueError(f"need even n, m >= 2, got n={n} m={m}")
    for k in (n, m):
        parity = binom2(k) % 2
        if parity != (k // 2) % 2:
            raise AssertionError(f"parity identity broke at k={k}")
        if 2 * k <= 14:
            ok, sign, _ = lemma_a_check(k)
            if not ok or sign != (-1) ** parity:
                raise AssertionError(f"Clifford cross-check failed at k={k}")
    return (n // 2 + m // 2) % 2


def delta_fibers(n: int) -> dict[Permutation, list[SymTrackElement]]:
    fibers: dict[Permutation, list[SymTrackElement]] = {}
    for x in enumerate_group(n):
        fibers.setdefault(x.delta, []).append(x)
    return fibers


def det_equals_sign_report(n: int) -> Report:
    """det(rho(x)) = sign(delta(x)) for every element, via exact determinants."""
    from .clifford import is_orthogonal, mat_det

    rep = Report(f"rho determinant matches permutation sign, n={n}")
    ok = True
    witness = ""
    orth = True
    for x in enumerate_group(n):
        mat = rho_matrix(x.mv)
        if not is_orthogonal(mat):
            orth = False
            witness = f"non-orthogonal rho at {x.mv}"
            break
        if mat_det(mat) != QSqrt2(x.delta.sign()):
            ok = False
            witness = f"det mismatch at {x.mv}"
            break
    rep.add("rho(x) exactly orthogonal for all elements", orth, witness if not orth else "")
    rep.add("det(rho(x)) = sign(delta(x)) for all elements", ok and orth, witness if not ok else "")
    return rep
