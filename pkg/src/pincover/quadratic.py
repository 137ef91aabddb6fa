"""Square groups and quadratic pair modules with axiom validators.

A square group is a pair of groups Xe (nilpotency class <= 2) and Xee
(abelian) with P: Xee -> Xe, a quadratic map H: Xe -> Xee whose crossed
effect (a|b)_H = H(a+b) - H(b) - H(a) is bilinear, subject to

    (1)  (Px|b)_H = 0 = (a|Py)_H
    (2)  P((a|b)_H) = -a - b + a + b
    (3)  P H P(x) = P(x) + P(x)

A quadratic pair module strings two square groups over one Xee along a
boundary homomorphism bd: C1 -> C0, with P: Cee -> C1 and H: C0 -> Cee;
the level-0 structure map is bd o P and the level-1 quadratic map is H o bd.

H is stored by its generator values and the bilinear crossed-effect table;
evaluation on an arbitrary element expands the canonical form of the
element as a word and applies the defining recursion, so validity of the
stored table against actual H differences is itself a checked axiom.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Sequence

from .nilgroup import (
    NilElement,
    PointedSet,
    RedTensorElt,
    TensorElt,
    commutator,
    nil_inv,
    nil_mul,
    nil_scale,
    pair_pos,
    sigma_bar,
)
from .report import Report
from .scalars import binom2

# ---------------------------------------------------------------------------
# finitely generated abelian groups and group carriers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AbGroup:
    """Z^rank x Z/d1 x ... x Z/dk; elements are int tuples with the torsion
    coordinates reduced to canonical representatives in [0, d)."""

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.rank < 0 or any(d < 2 for d in self.torsion):
            raise ValueError("rank must be >= 0 and torsion orders >= 2")

    @property
    def ngens(self) -> int:
        return self.rank + len(self.torsion)

    def reduce(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.ngens:
            raise ValueError(f"expected {self.ngens} coordinates, got {len(vec)}")
        out = list(vec[: self.rank])
        for d, v in zip(self.torsion, vec[self.rank:]):
            out.append(v % d)
        return tuple(out)

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.ngens

    def add(self, x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
        return self.reduce([a + b for a, b in zip(x, y)])

    def neg(self, x: Sequence[int]) -> tuple[int, ...]:
        return self.reduce([-a for a in x])

    def scale(self, k: int, x: Sequence[int]) -> tuple[int, ...]:
        return self.reduce([k * a for a in x])

    def gen(self, i: int) -> tuple[int, ...]:
        return self.reduce([1 if k == i else 0 for k in range(self.ngens)])

    def generators(self) -> list[tuple[int, ...]]:
        return [self.gen(i) for i in range(self.ngens)]

    def gen_order(self, i: int) -> int | None:
        if i < self.rank:
            return None
        return self.torsion[i - self.rank]

    def is_finite(self) -> bool:
        return self.rank == 0

    def elements(self) -> Iterable[tuple[int, ...]]:
        if not self.is_finite():
            raise ValueError("infinite group")
        yield from product(*(range(d) for d in self.torsion))

    def sample(self, rng: random.Random, bound: int) -> tuple[int, ...]:
        return self.reduce([rng.randint(-bound, bound) for _ in range(self.ngens)])


class AbCarrier:
    """Abelian group carrier; elements are coordinate tuples."""

    kind = "ab"

    def __init__(self, group: AbGroup, gen_names: tuple[str, ...] | None = None) -> None:
        self.group = group
        self.gen_names = gen_names or tuple(f"g{i + 1}" for i in range(group.ngens))
        if len(self.gen_names) != group.ngens:
            raise ValueError("one name per generator required")

    @property
    def ngens(self) -> int:
        return self.group.ngens

    def zero(self):
        return self.group.zero()

    def add(self, x, y):
        return self.group.add(x, y)

    def neg(self, x):
        return self.group.neg(x)

    def scale(self, k: int, x):
        return self.group.scale(k, x)

    def commutator(self, x, y):
        return self.group.zero()

    def generators(self) -> list:
        return self.group.generators()

    def gen_relations_respected(self, images: Sequence, target: "Carrier") -> tuple[bool, str]:
        for i, im in enumerate(images):
            d = self.group.gen_order(i)
            if d is not None and target.scale(d, im) != target.zero():
                return False, f"{d} * image of {self.gen_names[i]} is nonzero"
        for i in range(len(images)):
            for j in range(i + 1, len(images)):
                if target.add(images[i], images[j]) != target.add(images[j], images[i]):
                    return False, f"images of {self.gen_names[i]}, {self.gen_names[j]} do not commute"
        return True, ""

    def abelianized(self, x) -> tuple[int, ...]:
        return tuple(x)

    def decompose(self, x) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """(linear word coefficients, central commutator coefficients)."""
        return tuple(x), ()

    def from_coords(self, flat: Sequence[int]):
        return self.group.reduce(flat)

    def coords(self, x) -> tuple[int, ...]:
        return tuple(x)

    @property
    def ncoords(self) -> int:
        return self.group.ngens

    def sample(self, rng: random.Random, bound: int):
        return self.group.sample(rng, bound)

    def describe(self) -> dict:
        return {"kind": "ab", "rank": self.group.rank, "torsion": list(self.group.torsion),
                "names": list(self.gen_names)}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AbCarrier) and self.group == other.group and self.gen_names == other.gen_names

    def __hash__(self) -> int:
        return hash((self.group, self.gen_names))


class NilCarrier:
    """Free class-2 group carrier; elements are NilElement."""

    kind = "nil"

    def __init__(self, ptset: PointedSet) -> None:
        self.ptset = ptset
        self.gen_names = ptset.names

    @property
    def ngens(self) -> int:
        return self.ptset.size

    def zero(self):
        return NilElement.zero(self.ptset)

    def add(self, x, y):
        return nil_mul(x, y)

    def neg(self, x):
        return nil_inv(x)

    def scale(self, k: int, x):
        return nil_scale(k, x)

    def commutator(self, x, y):
        return commutator(x, y)

    def generators(self) -> list:
        return [NilElement.generator(self.ptset, i) for i in range(self.ptset.size)]

    def gen_relations_respected(self, images: Sequence, target: "Carrier") -> tuple[bool, str]:
        # free on its generators within class 2; any images define a hom as
        # long as the target has class <= 2, which both carrier kinds do
        return True, ""

    def abelianized(self, x) -> tuple[int, ...]:
        return x.linear

    def decompose(self, x) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return x.linear, x.comm

    def from_coords(self, flat: Sequence[int]):
        n = self.ptset.size
        npairs = n * (n - 1) // 2
        if len(flat) != n + npairs:
            raise ValueError(f"expected {n + npairs} coordinates, got {len(flat)}")
        return NilElement(self.ptset, tuple(flat[:n]), tuple(flat[n:]))

    def coords(self, x) -> tuple[int, ...]:
        return x.linear + x.comm

    @property
    def ncoords(self) -> int:
        n = self.ptset.size
        return n + n * (n - 1) // 2

    def sample(self, rng: random.Random, bound: int):
        n = self.ptset.size
        return NilElement(
            self.ptset,
            tuple(rng.randint(-bound, bound) for _ in range(n)),
            tuple(rng.randint(-bound, bound) for _ in range(n * (n - 1) // 2)),
        )

    def describe(self) -> dict:
        return {"kind": "nil", "names": list(self.ptset.names)}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, NilCarrier) and self.ptset == other.ptset

    def __hash__(self) -> int:
        return hash(self.ptset)


Carrier = AbCarrier | NilCarrier


def carrier_letters(carrier: Carrier, x) -> list[tuple[int, int]]:
    """x spelled as a word of signed generators (index, +-1), canonical order."""
    linear, comm = carrier.decompose(x)
    word: list[tuple[int, int]] = []
    for i, a in enumerate(linear):
        word.extend([(i, 1 if a > 0 else -1)] * abs(a))
    if any(comm):
        pairs = carrier.ptset.pairs()  # only nil carriers have commutator coords
        for (i, j), c in zip(pairs, comm):
            block = [(i, -1), (j, -1), (i, 1), (j, 1)]
            if c < 0:
                block = [(g, -s) for g, s in reversed(block)]
            word.extend(block * abs(c))
    return word


# ---------------------------------------------------------------------------
# homomorphisms between carriers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Hom:
    src: Carrier
    dst: Carrier
    images: tuple

    def __post_init__(self) -> None:
        if len(self.images) != self.src.ngens:
            raise ValueError("one image per source generator required")

    def well_defined(self) -> tuple[bool, str]:
        return self.src.gen_relations_respected(self.images, self.dst)

    def __call__(self, x):
        linear, comm = self.src.decompose(x)
        out = self.dst.zero()
        for i, a in enumerate(linear):
            if a:
                out = self.dst.add(out, self.dst.scale(a, self.images[i]))
        if any(comm):
            pairs = self.src.ptset.pairs()
            for (i, j), c in zip(pairs, comm):
                if c:
                    br = self.dst.commutator(self.images[i], self.images[j])
                    out = self.dst.add(out, self.dst.scale(c, br))
        return out

    @classmethod
    def identity(cls, carrier: Carrier) -> "Hom":
        return cls(carrier, carrier, tuple(carrier.generators()))

    @classmethod
    def zero_map(cls, src: Carrier, dst: Carrier) -> "Hom":
        return cls(src, dst, tuple(dst.zero() for _ in range(src.ngens)))

    def then(self, g: "Hom") -> "Hom":
        if g.src != self.dst:
            raise ValueError("homs do not compose")
        return Hom(self.src, g.dst, tuple(g(im) for im in self.images))


# ---------------------------------------------------------------------------
# sampling policy (part of the public validator contract)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SamplePolicy:
    """Validators check on generators plus `count` pseudo-random bounded
    combinations drawn from a fixed seed."""

    seed: int = 0
    count: int = 64
    bound: int = 2


def sample_elements(carrier: Carrier, policy: SamplePolicy = SamplePolicy()) -> list:
    rng = random.Random(policy.seed)
    out = list(carrier.generators())
    out.extend(carrier.neg(g) for g in carrier.generators())
    out.append(carrier.zero())
    for _ in range(policy.count):
        out.append(carrier.sample(rng, policy.bound))
    return out


def sample_pairs(carrier: Carrier, policy: SamplePolicy = SamplePolicy()) -> list:
    rng = random.Random(policy.seed + 1)
    gens = carrier.generators()
    out = [(a, b) for a in gens for b in gens]
    for _ in range(policy.count):
        out.append((carrier.sample(rng, policy.bound), carrier.sample(rng, policy.bound)))
    return out


# ---------------------------------------------------------------------------
# the quadratic map data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadraticData:
    """Generator values H(g_i) and crossed-effect table (g_i|g_j)_H in Xee."""

    xee: AbGroup
    gen_values: tuple
    cross: tuple  # cross[i][j], each an Xee element

    def cross_effect(self, xbar: Sequence[int], ybar: Sequence[int]):
        out = self.xee.zero()
        for i, a in enumerate(xbar):
            if not a:
                continue
            for j, b in enumerate(ybar):
                if b:
                    out = self.xee.add(out, self.xee.scale(a * b, self.cross[i][j]))
        return out

    def evaluate(self, carrier: Carrier, x):
        """Recursion applied to the canonical word of x: letters in ascending
        generator order contribute c_i H(g_i) + binom2(c_i) (g_i|g_i), pairs
        contribute c_i c_j (g_i|g_j) for i < j, and each central basis
        commutator contributes (g_i|g_j) - (g_j|g_i)."""
        linear, comm = carrier.decompose(x)
        add, scale = self.xee.add, self.xee.scale
        out = self.xee.zero()
        for i, a in enumerate(linear):
            if a:
                out = add(out, scale(a, self.gen_values[i]))
                out = add(out, scale(binom2(a), self.cross[i][i]))
        for i in range(len(linear)):
            if not linear[i]:
                continue
            for j in range(i + 1, len(linear)):
                if linear[j]:
                    out = add(out, scale(linear[i] * linear[j], self.cross[i][j]))
        if any(comm):
            pairs = carrier.ptset.pairs()
            for (i, j), c in zip(pairs, comm):
                if c:
                    out = add(out, scale(c, self.xee.add(self.cross[i][j], self.xee.neg(self.cross[j][i]))))
        return out


# ---------------------------------------------------------------------------
# square groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SquareGroup:
    xe: Carrier
    xee: AbGroup
    p_images: tuple  # image in Xe of each Xee generator
    h: QuadraticData

    def __post_init__(self) -> None:
        if len(self.p_images) != self.xee.ngens:
            raise ValueError("one P image per Xee generator required")
        if self.h.xee != self.xee or len(self.h.gen_values) != self.xe.ngens:
            raise ValueError("quadratic data does not match the carriers")

    def p_hom(self) -> Hom:
        return Hom(AbCarrier(self.xee), self.xe, self.p_images)

    def P(self, z):
        return self.p_hom()(z)

    def H(self, x):
        return self.h.evaluate(self.xe, x)

    def cross_effect(self, x, y):
        return self.h.cross_effect(self.xe.abelianized(x), self.xe.abelianized(y))

    def T(self, z):
        return self.xee.add(self.H(self.P(z)), self.xee.neg(z))


def validate_square_group(sq: SquareGroup, policy: SamplePolicy = SamplePolicy()) -> Report:
    rep = Report("square group axioms")
    xe, xee = sq.xe, sq.xee

    ok, why = sq.p_hom().well_defined()
    rep.add("P respects the Xee relations", ok, why)
    if not ok:
        return rep

    first = ""
    ok = True
    for x, y in sample_pairs(xe, policy):
        expect = sq.cross_effect(x, y)
        got = xee.add(sq.H(xe.add(x, y)), xee.neg(xee.add(sq.H(y), sq.H(x))))
        if got != expect:
            ok, first = False, f"H(x+y)-H(y)-H(x) != (x|y)_H at x={x}, y={y}"
            break
    rep.add("stored crossed-effect table matches H differences", ok, first)

    zs = sample_elements(AbCarrier(xee), policy)
    xs = sample_elements(xe, policy)

    ok, first = True, ""
    for z in zs:
        pz = sq.P(z)
        for b in xe.generators():
            if sq.cross_effect(pz, b) != xee.zero():
                ok, first = False, f"(Pz|b) != 0 at z={z}, b={b}"
                break
            if sq.cross_effect(b, pz) != xee.zero():
                ok, first = False, f"(b|Pz) != 0 at z={z}, b={b}"
                break
        if not ok:
            break
    rep.add("axiom 1: crossed effects vanish on the image of P", ok, first)

    ok, first = True, ""
    for x, y in sample_pairs(xe, policy):
        if sq.P(sq.cross_effect(x, y)) != xe.commutator(x, y):
            ok, first = False, f"P((x|y)_H) != -x-y+x+y at x={x}, y={y}"
            break
    rep.add("axiom 2: P of a crossed effect is the commutator", ok, first)

    ok, first = True, ""
    for z in zs:
        lhs = sq.P(sq.H(sq.P(z)))
        rhs = xe.add(sq.P(z), sq.P(z))
        if lhs != rhs:
            ok, first = False, f"PHP(z) != 2P(z) at z={z}"
            break
    rep.add("axiom 3: PHP = 2P", ok, first)
    return rep


# ---------------------------------------------------------------------------
# quadratic pair modules
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadraticPairModule:
    c0: Carrier
    c1: Carrier
    cee: AbGroup
    bd: Hom            # C1 -> C0
    p_images: tuple    # image in C1 of each Cee generator
    h: QuadraticData   # on C0

    def __post_init__(self) -> None:
        if self.bd.src != self.c1 or self.bd.dst != self.c0:
            raise ValueError("bd must map C1 to C0")
        if len(self.p_images) != self.cee.ngens:
            raise ValueError("one P image per Cee generator required")
        if self.h.xee != self.cee or len(self.h.gen_values) != self.c0.ngens:
            raise ValueError("quadratic data does not match C0/Cee")

    def p_hom(self) -> Hom:
        return Hom(AbCarrier(self.cee), self.c1, self.p_images)

    def P(self, z):
        return self.p_hom()(z)

    def H(self, x):
        return self.h.evaluate(self.c0, x)

    def cross_effect(self, x, y):
        return self.h.cross_effect(self.c0.abelianized(x), self.c0.abelianized(y))

    def sq0(self) -> SquareGroup:
        p0 = tuple(self.bd(self.P(g)) for g in self.cee.generators())
        return SquareGroup(self.c0, self.cee, p0, self.h)

    def sq1(self) -> SquareGroup:
        gens1 = self.c1.generators()
        values = tuple(self.H(self.bd(y)) for y in gens1)
        cross = tuple(
            tuple(self.cross_effect(self.bd(y), self.bd(z)) for z in gens1) for y in gens1
        )
        return SquareGroup(self.c1, self.cee, self.p_images, QuadraticData(self.cee, values, cross))

    def T(self, z):
        return self.cee.add(self.H(self.bd(self.P(z))), self.cee.neg(z))

    def action_exponent(self, x, y):
        """x^y = x + P((bd x | y)_H) for x in C1, y in C0."""
        return self.c1.add(x, self.P(self.cross_effect(self.bd(x), y)))


def n_star(C: QuadraticPairModule, n: int, x, level) -> object:
    """The (Z, *) action: n*x = nx + binom2(n) bd P H(x) on C0,
    n*y = ny + binom2(n) P H bd(y) on C1, and n*z = n^2 z on Cee."""
    if level == 0:
        corr = C.bd(C.P(C.H(x)))
        return C.c0.add(C.c0.scale(n, x), C.c0.scale(binom2(n), corr))
    if level == 1:
        corr = C.P(C.H(C.bd(x)))
        return C.c1.add(C.c1.scale(n, x), C.c1.scale(binom2(n), corr))
    if level == "ee":
        return C.cee.scale(n * n, x)
    raise ValueError(f"level must be 0, 1 or 'ee', got {level!r}")


def validate_qpm(C: QuadraticPairModule, policy: SamplePolicy = SamplePolicy()) -> Report:
    rep = Report("quadratic pair module axioms")

    ok, why = C.bd.well_defined()
    rep.add("bd respects the C1 relations", ok, why)
    ok2, why2 = C.p_hom().well_defined()
    rep.add("P respects the Cee relations", ok2, why2)
    if not (ok and ok2):
        return rep

    sq0 = validate_square_group(C.sq0(), policy)
    for c in sq0.checks:
        rep.add(f"level 0 (bd o P): {c.name}", c.passed, c.witness)
    sq1 = validate_square_group(C.sq1(), policy)
    for c in sq1.checks:
        rep.add(f"level 1 (H o bd): {c.name}", c.passed, c.witness)

    sq1_obj = C.sq1()
    ok, first = True, ""
    for y in sample_elements(C.c1, policy):
        if sq1_obj.H(y) != C.H(C.bd(y)):
            ok, first = False, f"level-1 H disagrees with H o bd at {y}"
            break
    rep.add("level-1 quadratic map is H o bd", ok, first)

    zs = sample_elements(AbCarrier(C.cee), policy)
    ok, first = True, ""
    for z in zs:
        if C.T(C.T(z)) != C.cee.reduce(z):
            ok, first = False, f"T^2 != id at {z}"
            break
    rep.add("T = H bd P - 1 is an involution", ok, first)

    ok, first = True, ""
    for z in zs:
        if C.P(C.T(z)) != C.P(C.cee.reduce(z)):
            ok, first = False, f"P T != P at {z}"
            break
    rep.add("P T = P", ok, first)

    ok, first = True, ""
    for x in sample_elements(C.c0, policy):
        v = C.P(C.cross_effect(x, x))
        if C.c1.add(v, v) != C.c1.zero():
            ok, first = False, f"2 P((x|x)_H) != 0 at {x}"
            break
    rep.add("P((x|x)_H) has order at most 2", ok, first)

    rng = random.Random(policy.seed + 2)
    ok, first = True, ""
    for _ in range(policy.count):
        y = C.c1.sample(rng, policy.bound)
        x = C.c0.sample(rng, policy.bound)
        lhs = C.bd(C.action_exponent(y, x))
        rhs = C.c0.add(C.c0.add(C.c0.neg(x), C.bd(y)), x)
        if lhs != rhs:
            ok, first = False, f"bd(y^x) != -x + bd(y) + x at y={y}, x={x}"
            break
    rep.add("boundary of an exponent is conjugation", ok, first)

    ok, first = True, ""
    for _ in range(policy.count):
        y = C.c1.sample(rng, policy.bound)
        z = C.c1.sample(rng, policy.bound)
        lhs = C.action_exponent(y, C.bd(z))
        rhs = C.c1.add(C.c1.add(C.c1.neg(z), y), z)
        if lhs != rhs:
            ok, first = False, f"y^(bd z) != -z + y + z at y={y}, z={z}"
            break
    rep.add("exponent by a boundary is conjugation", ok, first)
    return rep


# ---------------------------------------------------------------------------
# morphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QpmMorphism:
    src: QuadraticPairModule
    dst: QuadraticPairModule
    f0: Hom
    f1: Hom
    fee: Hom

    def __post_init__(self) -> None:
        if self.f0.src != self.src.c0 or self.f0.dst != self.dst.c0:
            raise ValueError("f0 must map C0 to D0")
        if self.f1.src != self.src.c1 or self.f1.dst != self.dst.c1:
            raise ValueError("f1 must map C1 to D1")

    @classmethod
    def identity(cls, C: QuadraticPairModule) -> "QpmMorphism":
        ee = AbCarrier(C.cee)
        return cls(C, C, Hom.identity(C.c0), Hom.identity(C.c1), Hom.identity(ee))

    def then(self, g: "QpmMorphism") -> "QpmMorphism":
        if g.src is not self.dst and g.src != self.dst:
            raise ValueError("morphisms do not compose")
        return QpmMorphism(self.src, g.dst, self.f0.then(g.f0), self.f1.then(g.f1), self.fee.then(g.fee))


def n_star_square_group(X: SquareGroup, n: int, x):
    """n*x = nx + binom2(n) P H(x) on Xe."""
    return X.xe.add(X.xe.scale(n, x), X.xe.scale(binom2(n), X.P(X.H(x))))


def z_tensor_action_check(
    X: SquareGroup,
    endos: Sequence[tuple[Hom, Hom]] = (),
    policy: SamplePolicy = SamplePolicy(),
) -> Report:
    """(mn)* = m* o n* on Xe for m, n in -2..3, plus naturality f n* = n* f
    for the identity and any supplied (f_e, f_ee) endomorphism pairs."""
    rep = Report("integer action on a square group")
    xs = sample_elements(X.xe, policy)

    ok, first = True, ""
    for m in range(-2, 4):
        for n in range(-2, 4):
            for x in xs:
                if n_star_square_group(X, m * n, x) != n_star_square_group(X, m, n_star_square_group(X, n, x)):
                    ok, first = False, f"(mn)* != m* n* at m={m}, n={n}, x={x}"
                    break
            if not ok:
                break
        if not ok:
            break
    rep.add("multiplicativity (mn)* = m* o n*", ok, first)

    ok, first = True, ""
    for x in xs:
        if n_star_square_group(X, 1, x) != x or n_star_square_group(X, 0, x) != X.xe.zero():
            ok, first = False, f"unit or zero action wrong at x={x}"
            break
    rep.add("1* = id and 0* = 0", ok, first)

    pairs = [("identity", Hom.identity(X.xe), Hom.identity(AbCarrier(X.xee)))]
    pairs.extend(("supplied", fe, fee) for fe, fee in endos)
    for label, fe, fee in pairs:
        ok, first = True, ""
        for x in xs:
            if fee(X.H(x)) != X.H(fe(x)):
                ok, first = False, f"fee H != H fe at x={x}"
                break
        for z in AbCarrier(X.xee).generators():
            if not ok:
                break
            if fe(X.P(z)) != X.P(fee(z)):
                ok, first = False, f"fe P != P fee at z={z}"
        rep.add(f"{label} endomorphism respects H and P", ok, first)
        if not ok:
            continue
        ok, first = True, ""
        for n in range(-2, 4):
            for x in xs:
                if fe(n_star_square_group(X, n, x)) != n_star_square_group(X, n, fe(x)):
                    ok, first = False, f"fe n* != n* fe at n={n}, x={x}"
                    break
            if not ok:
                break
        rep.add(f"{label} endomorphism commutes with n*", ok, first)
    return rep


def compose_morphisms(f: QpmMorphism, g: QpmMorphism) -> QpmMorphism:
    """f followed by g."""
    return f.then(g)


def nstar_morphism(C: QuadraticPairModule, n: int) -> QpmMorphism:
    ee = AbCarrier(C.cee)
    f0 = Hom(C.c0, C.c0, tuple(n_star(C, n, g, 0) for g in C.c0.generators()))
    f1 = Hom(C.c1, C.c1, tuple(n_star(C, n, g, 1) for g in C.c1.generators()))
    fee = Hom(ee, ee, tuple(n_star(C, n, g, "ee") for g in ee.generators()))
    return QpmMorphism(C, C, f0, f1, fee)


def validate_morphism(f: QpmMorphism, kind: str = "strict", policy: SamplePolicy = SamplePolicy()) -> Report:
    """strict: commutes with H, P and bd.  weak: commutes with T and with the
    crossed-effect/P/bd column."""
    if kind not in ("strict", "weak"):
        raise ValueError("kind must be 'strict' or 'weak'")
    C, D = f.src, f.dst
    rep = Report(f"{kind} morphism laws")
    for name, hom in (("f0", f.f0), ("f1", f.f1), ("fee", f.fee)):
        ok, why = hom.well_defined()
        rep.add(f"{name} is a homomorphism", ok, why)

    ok, first = True, ""
    for y in sample_elements(C.c1, policy):
        if f.f0(C.bd(y)) != D.bd(f.f1(y)):
            ok, first = False, f"f0 bd != bd f1 at {y}"
            break
    rep.add("compatible with the boundary", ok, first)

    ok, first = True, ""
    for z in sample_elements(AbCarrier(C.cee), policy):
        if f.f1(C.P(z)) != D.P(f.fee(z)):
            ok, first = False, f"f1 P != P fee at {z}"
            break
    rep.add("compatible with P", ok, first)

    if kind == "strict":
        ok, first = True, ""
        for x in sample_elements(C.c0, policy):
            if f.fee(C.H(x)) != D.H(f.f0(x)):
                ok, first = False, f"fee H != H f0 at {x}"
                break
        rep.add("compatible with H", ok, first)
    else:
        ok, first = True, ""
        for x, y in sample_pairs(C.c0, policy):
            if f.fee(C.cross_effect(x, y)) != D.cross_effect(f.f0(x), f.f0(y)):
                ok, first = False, f"fee (x|y)_H != (f0 x|f0 y)_H at x={x}, y={y}"
                break
        rep.add("compatible with the crossed effect", ok, first)

        ok, first = True, ""
        for z in sample_elements(AbCarrier(C.cee), policy):
            if f.fee(C.T(z)) != D.T(f.fee(z)):
                ok, first = False, f"fee T != T fee at {z}"
                break
        rep.add("compatible with T", ok, first)
    return rep


# ---------------------------------------------------------------------------
# shipped instances
# ---------------------------------------------------------------------------


def z_nil_square_group() -> SquareGroup:
    """Xe = Z, Xee = Z, P = 0, H(n) = binom2(n), (a|b)_H = ab."""
    z = AbGroup(1)
    xe = AbCarrier(z, ("e",))
    h = QuadraticData(z, ((0,),), (((1,),),))
    return SquareGroup(xe, z, ((0,),), h)


def abelian_square_group(group: AbGroup, gen_names: tuple[str, ...] | None = None) -> SquareGroup:
    """Any abelian group viewed as the square group with Xee = 0."""
    xe = AbCarrier(group, gen_names)
    zee = AbGroup(0)
    values = tuple(() for _ in range(xe.ngens))
    cross = tuple(tuple(() for _ in range(xe.ngens)) for _ in range(xe.ngens))
    return SquareGroup(xe, zee, (), QuadraticData(zee, values, cross))


def qpm_eta() -> QuadraticPairModule:
    """C0 = Z, Cee = Z, C1 = Z/2; bd = 0, P reduces mod 2, H(n) = binom2(n)."""
    c0 = AbCarrier(AbGroup(1), ("e",))
    c1 = AbCarrier(AbGroup(0, (2,)), ("u",))
    cee = AbGroup(1)
    bd = Hom.zero_map(c1, c0)
    h = QuadraticData(cee, ((0,),), (((1,),),))
    return QuadraticPairModule(c0, c1, cee, bd, ((1,),), h)


def tensor_square_group(ptset: PointedSet) -> AbGroup:
    return AbGroup(ptset.size ** 2)


def tensor_coords(z: TensorElt) -> tuple[int, ...]:
    return z.coeffs


def tensor_from_coords(ptset: PointedSet, flat: Sequence[int]) -> TensorElt:
    return TensorElt(ptset, tuple(flat))


def red_tensor_group(ptset: PointedSet) -> AbGroup:
    n = ptset.size
    return AbGroup(n * (n - 1) // 2, (2,) * n)


def red_tensor_coords(r: RedTensorElt) -> tuple[int, ...]:
    return r.offdiag + r.diag


def red_tensor_carrier(ptset: PointedSet) -> AbCarrier:
    names = tuple(f"{a}(x){b}" for a, b in
                  [(ptset.names[i], ptset.names[j]) for i, j in ptset.pairs()]
                  + [(nm, nm) for nm in ptset.names])
    return AbCarrier(red_tensor_group(ptset), names)


def zero_free_quadratic_data(ptset: PointedSet) -> QuadraticData:
    """H(e) = 0 with (e_i|e_j)_H = e_j (x) e_i."""
    n = ptset.size
    cee = tensor_square_group(ptset)
    zero = cee.zero()
    values = tuple(zero for _ in range(n))
    cross = tuple(
        tuple(tensor_coords(TensorElt.basis(ptset, j, i)) for j in range(n)) for i in range(n)
    )
    return QuadraticData(cee, values, cross)


class QpmValidationError(ValueError):
    """Raised when supplied pair-module data fails the axiom checks; the
    full report rides along."""

    def __init__(self, report: Report) -> None:
        failure = report.first_failure()
        super().__init__(failure.name if failure else report.title)
        self.report = report


def qpm_from_squad(
    ptset: PointedSet,
    m_carrier: Carrier,
    bd_images: tuple,
    w_images: tuple,
    validate: bool = True,
    policy: SamplePolicy = SamplePolicy(),
) -> QuadraticPairModule:
    """Pair module over the free class-2 group with H the 0-free quadratic
    map; P is defined from the supplied map w by P(a (x) b) = w(b (x) a).
    Validates the result by default and raises QpmValidationError with the
    failing report when the data was not consistent."""
    n = ptset.size
    c0 = NilCarrier(ptset)
    cee = tensor_square_group(ptset)
    bd = Hom(m_carrier, c0, bd_images)
    p_images = []
    for i in range(n):
        for j in range(n):
            p_images.append(w_images[j * n + i])  # the (b (x) a) twist
    C = QuadraticPairModule(c0, m_carrier, cee, bd, tuple(p_images), zero_free_quadratic_data(ptset))
    if validate:
        rep = validate_qpm(C, policy)
        if not rep.ok:
            raise QpmValidationError(rep)
    return C


# ---------------------------------------------------------------------------
# JSON-friendly serialization (elements travel as flat coordinate lists)
# ---------------------------------------------------------------------------


def carrier_from_dict(d: dict) -> Carrier:
    kind = d.get("kind")
    if kind == "nil":
        return NilCarrier(PointedSet(tuple(d["names"])))
    if kind == "ab":
        group = AbGroup(int(d.get("rank", 0)), tuple(int(t) for t in d.get("torsion", ())))
        names = d.get("names")
        return AbCarrier(group, tuple(names) if names else None)
    raise ValueError(f"unknown carrier kind {kind!r}")


def qpm_to_dict(C: QuadraticPairModule) -> dict:
    return {
        "c0": C.c0.describe(),
        "c1": C.c1.describe(),
        "cee": {"rank": C.cee.rank, "torsion": list(C.cee.torsion)},
        "bd": [list(C.c0.coords(im)) for im in C.bd.images],
        "p": [list(C.c1.coords(im)) for im in C.p_images],
        "h": {
            "values": [list(v) for v in C.h.gen_values],
            "cross": [[list(v) for v in row] for row in C.h.cross],
        },
    }


def qpm_from_dict(d: dict) -> QuadraticPairModule:
    c0 = carrier_from_dict(d["c0"])
    c1 = carrier_from_dict(d["c1"])
    cd = d["cee"]
    cee = AbGroup(int(cd.get("rank", 0)), tuple(int(t) for t in cd.get("torsion", ())))
    bd = Hom(c1, c0, tuple(c0.from_coords(v) for v in d["bd"]))
    p_images = tuple(c1.from_coords(v) for v in d["p"])
    hd = d["h"]
    values = tuple(cee.reduce(v) for v in hd["values"])
    cross = tuple(tuple(cee.reduce(v) for v in row) for row in hd["cross"])
    return QuadraticPairModule(c0, c1, cee, bd, p_images, QuadraticData(cee, values, cross))


def parse_carrier_element(carrier: Carrier, text: str):
    """Element syntax over the carrier's generator names: signed integer
    combinations like "2 a - b + [a,b]" (nil carriers) or "a(x)b + 3 a(x)a"
    (abelian carriers; names matched literally, longest first)."""
    from .nilgroup import parse_nil_element

    if carrier.kind == "nil":
        return parse_nil_element(text, carrier.ptset)

    import re

    names = sorted(range(carrier.ngens), key=lambda i: -len(carrier.gen_names[i]))
    name_re = "|".join(re.escape(carrier.gen_names[i]) for i in names)
    token = re.compile(rf"\s*(?:(?P<name>{name_re})|(?P<num>\d+)|(?P<op>[+\-*]))")
    coords = [0] * carrier.ngens
    pos, sign, coeff, seen_any = 0, 1, None, False
    s = text.strip()
    if s == "0":
        return carrier.group.zero()
    while pos < len(s):
        m = token.match(s, pos)
        if not m:
            raise ValueError(f"bad element syntax at position {pos}: {s[pos:]!r}")
        pos = m.end()
        if m.group("op") == "*":
            if coeff is None:
                raise ValueError("'*' needs a preceding integer")
            continue
        if m.group("op"):
            if coeff is not None:
                raise ValueError("dangling coefficient before a sign")
            if m.group("op") == "-":
                sign = -sign
            continue
        if m.group("num"):
            if coeff is not None:
                raise ValueError("two coefficients in a row")
            coeff = int(m.group("num"))
            continue
        idx = carrier.gen_names.index(m.group("name"))
        coords[idx] += sign * (1 if coeff is None else coeff)
        sign, coeff, seen_any = 1, None, True
    if coeff is not None:
        raise ValueError("dangling coefficient at end of expression")
    if not seen_any:
        raise ValueError("empty element expression")
    return carrier.group.reduce(coords)


def qpm_nil(names: Sequence[str]) -> QuadraticPairModule:
    """The 0-free pair module on a pointed set: C0 free class-2, C1 the
    reduced tensor square, Cee the full tensor square.

    bd(class of x (x) y) = [y, x] and the composite P sends a (x) b to the
    class of a (x) b; this sign/twist choice is the one (up to negating C1)
    that passes the validator, as the derivation test checks.
    """
    ptset = PointedSet(tuple(names))
    n = ptset.size
    c1 = red_tensor_carrier(ptset)
    c0 = NilCarrier(ptset)
    bd_images = []
    for i, j in ptset.pairs():  # class of e_i (x) e_j |-> [e_j, e_i]
        bd_images.append(nil_inv(NilElement.basis_commutator(ptset, i, j)))
    for _ in range(n):  # diagonal classes bound to 0
        bd_images.append(NilElement.zero(ptset))
    w_images = []
    for i in range(n):
        for j in range(n):
            # w(e_i (x) e_j) = class of e_j (x) e_i, so that P(a (x) b) = class(a (x) b)
            w_images.append(red_tensor_coords(sigma_bar(TensorElt.basis(ptset, j, i))))
    return qpm_from_squad(ptset, c1, tuple(bd_images), tuple(w_images), validate=False)


BUILTIN_QPMS: dict[str, Callable[[], QuadraticPairModule]] = {
    "eta": qpm_eta,
    "nil1": lambda: qpm_nil(("a",)),
    "nil2": lambda: qpm_nil(("a", "b")),
    "nil3": lambda: qpm_nil(("a", "b", "c")),
}
