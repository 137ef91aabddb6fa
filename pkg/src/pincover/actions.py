"""Finite groups, crossed modules, the morphism groupoid of a crossed
module, sign groups, and sign-group actions on quadratic pair modules.

The double cover of the symmetric group enters as a sign group

    {+1,-1} --iota--> Gt --bd--> G --eps--> {+1,-1}

with iota, bd an extension; the bridge construction turns any finite sign
group into a crossed module over {+1,-1} x G whose exponent action twists
conjugation by iota(eps(g)^binom2(x)).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .perm import Permutation, all_permutations
from .pin import MAX_ENUM_DIM, SymTrackElement, enumerate_group, omega
from .quadratic import (
    QpmMorphism,
    QuadraticPairModule,
    SamplePolicy,
    compose_morphisms,
    n_star,
    nstar_morphism,
    sample_elements,
    sample_pairs,
    validate_morphism,
)
from .report import Report
from .scalars import binom2
from .tracks import _letter_extension

# ---------------------------------------------------------------------------
# finite groups as multiplication tables
# ---------------------------------------------------------------------------


class FiniteGroup:
    """Elements 0..n-1 with printable names; mul(i, j) looks up the table.
    Construction finds the identity and all inverses and fails fast when the
    table is not even a quasigroup; full associativity is a separate check
    (validate_group) since it costs |G|^3."""

    def __init__(self, names: tuple[str, ...], table: tuple[tuple[int, ...], ...]) -> None:
        n = len(names)
        if len(table) != n or any(len(row) != n for row in table):
            raise ValueError("table must be square and match the name count")
        for row in table:
            if sorted(row) != list(range(n)):
                raise ValueError("each table row must be a permutation of the elements")
        for j in range(n):
            if sorted(table[i][j] for i in range(n)) != list(range(n)):
                raise ValueError("each table column must be a permutation of the elements")
        self.names = tuple(names)
        self.table = tuple(tuple(row) for row in table)
        identity = None
        for e in range(n):
            if all(self.table[e][i] == i and self.table[i][e] == i for i in range(n)):
                identity = e
                break
        if identity is None:
            raise ValueError("no two-sided identity in the table")
        self.identity = identity
        inv = [None] * n
        for i in range(n):
            for j in range(n):
                if self.table[i][j] == identity and self.table[j][i] == identity:
                    inv[i] = j
                    break
            if inv[i] is None:
                raise ValueError(f"element {names[i]!r} has no inverse")
        self.inv_table = tuple(inv)

    @property
    def order(self) -> int:
        return len(self.names)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inv(self, i: int) -> int:
        return self.inv_table[i]

    def elements(self) -> range:
        return range(self.order)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteGroup) and self.names == other.names and self.table == other.table

    def __hash__(self) -> int:
        return hash((self.names, self.table))

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"

    @classmethod
    def from_mul(cls, names: tuple[str, ...], elements, mul) -> "FiniteGroup":
        """elements: hashable canonical objects in a fixed order; mul composes them."""
        index = {e: i for i, e in enumerate(elements)}
        if len(index) != len(names):
            raise ValueError("elements must be distinct and match the name count")
        table = tuple(
            tuple(index[mul(a, b)] for b in elements) for a in elements
        )
        return cls(names, table)

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls(("1",), ((0,),))

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        names = tuple(f"r{i}" if i else "1" for i in range(n))
        table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
        return cls(names, table)

    @classmethod
    def signs(cls) -> "FiniteGroup":
        return cls(("+1", "-1"), ((0, 1), (1, 0)))

    @classmethod
    def symmetric(cls, n: int) -> "FiniteGroup":
        perms = sorted(all_permutations(n))
        names = tuple(p.cycle_str() for p in perms)
        return cls.from_mul(names, perms, lambda a, b: a * b)

    @classmethod
    def product(cls, A: "FiniteGroup", B: "FiniteGroup") -> "FiniteGroup":
        names = tuple(f"({a},{b})" for a in A.names for b in B.names)
        nb = B.order

        def mul(i: int, j: int) -> int:
            ai, bi = divmod(i, nb)
            aj, bj = divmod(j, nb)
            return A.mul(ai, aj) * nb + B.mul(bi, bj)

        table = tuple(tuple(mul(i, j) for j in range(len(names))) for i in range(len(names)))
        return cls(names, table)

    def to_dict(self) -> dict:
        return {"names": list(self.names), "table": [list(r) for r in self.table]}

    @classmethod
    def from_dict(cls, d: dict) -> "FiniteGroup":
        return cls(tuple(d["names"]), tuple(tuple(r) for r in d["table"]))


def validate_group(G: FiniteGroup) -> Report:
    """Exhaustive associativity on top of the constructor's checks."""
    rep = Report("group axioms")
    ok, first = True, ""
    for a in G.elements():
        for b in G.elements():
            ab = G.mul(a, b)
            for c in G.elements():
                if G.mul(ab, c) != G.mul(a, G.mul(b, c)):
                    ok, first = False, f"({G.names[a]}{G.names[b]}){G.names[c]} differs"
                    break
            if not ok:
                break
        if not ok:
            break
    rep.add("associativity", ok, first)
    rep.add("identity and inverses", True, "")  # enforced at construction
    return rep


# ---------------------------------------------------------------------------
# crossed modules of finite groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CrossedModule:
    """bd: T -> N with a right action of N on T, written act[t][n]."""

    t: FiniteGroup
    n: FiniteGroup
    bd: tuple[int, ...]
    act: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.bd) != self.t.order:
            raise ValueError("bd must assign an image to every T element")
        if len(self.act) != self.t.order or any(len(r) != self.n.order for r in self.act):
            raise ValueError("act must be a T x N table")


def inner_crossed_module(G: FiniteGroup) -> CrossedModule:
    """T = N = G, bd = id, conjugation action."""
    bd = tuple(range(G.order))
    act = tuple(
        tuple(G.mul(G.mul(G.inv(n), t), n) for n in G.elements()) for t in G.elements()
    )
    return CrossedModule(G, G, bd, act)


def validate_crossed_module(X: CrossedModule) -> Report:
    rep = Report("crossed module axioms")
    T, N = X.t, X.n

    ok, first = True, ""
    for a in T.elements():
        for b in T.elements():
            if X.bd[T.mul(a, b)] != N.mul(X.bd[a], X.bd[b]):
                ok, first = False, f"bd not a homomorphism at ({T.names[a]}, {T.names[b]})"
                break
        if not ok:
            break
    rep.add("bd is a homomorphism", ok, first)

    ok, first = True, ""
    for t in T.elements():
        if X.act[t][N.identity] != t:
            ok, first = False, f"t^1 != t at {T.names[t]}"
            break
    rep.add("identity acts trivially", ok, first)

    ok, first = True, ""
    for t in T.elements():
        for a in N.elements():
            ta = X.act[t][a]
            for b in N.elements():
                if X.act[ta][b] != X.act[t][N.mul(a, b)]:
                    ok, first = False, f"(t^a)^b != t^(ab) at t={T.names[t]}, a={N.names[a]}, b={N.names[b]}"
                    break
            if not ok:
                break
        if not ok:
            break
    rep.add("right action law", ok, first)

    ok, first = True, ""
    for s in T.elements():
        for t in T.elements():
            st = T.mul(s, t)
            for a in N.elements():
                if X.act[st][a] != T.mul(X.act[s][a], X.act[t][a]):
                    ok, first = False, f"(st)^a != s^a t^a at s={T.names[s]}, t={T.names[t]}, a={N.names[a]}"
                    break
            if not ok:
                break
        if not ok:
            break
    rep.add("action by automorphisms", ok, first)

    ok, first = True, ""
    for t in T.elements():
        for a in N.elements():
            if X.bd[X.act[t][a]] != N.mul(N.mul(N.inv(a), X.bd[t]), a):
                ok, first = False, f"bd(t^a) != a^-1 bd(t) a at t={T.names[t]}, a={N.names[a]}"
                break
        if not ok:
            break
    rep.add("axiom 1: bd of an exponent is conjugation", ok, first)

    ok, first = True, ""
    for t in T.elements():
        for s in T.elements():
            if X.act[t][X.bd[s]] != T.mul(T.mul(T.inv(s), t), s):
                ok, first = False, f"t^bd(s) != s^-1 t s at t={T.names[t]}, s={T.names[s]}"
                break
        if not ok:
            break
    rep.add("axiom 2: exponent by a boundary is conjugation", ok, first)
    return rep


def validate_qpm_crossed_module(C: QuadraticPairModule, policy: SamplePolicy = SamplePolicy()) -> Report:
    """The boundary of a pair module with the exponent action, checked by
    sampling (the carriers are infinite)."""
    import random

    rep = Report("pair-module boundary as a crossed module")
    rng = random.Random(policy.seed + 11)
    triples = [
        (C.c1.sample(rng, policy.bound), C.c0.sample(rng, policy.bound), C.c1.sample(rng, policy.bound))
        for _ in range(policy.count)
    ]

    ok, first = True, ""
    for y, x, _ in triples:
        if C.bd(C.action_exponent(y, x)) != C.c0.add(C.c0.add(C.c0.neg(x), C.bd(y)), x):
            ok, first = False, f"bd(y^x) != -x + bd(y) + x at y={y}, x={x}"
            break
    rep.add("axiom 1: bd of an exponent is conjugation", ok, first)

    ok, first = True, ""
    for y, _, z in triples:
        if C.action_exponent(y, C.bd(z)) != C.c1.add(C.c1.add(C.c1.neg(z), y), z):
            ok, first = False, f"y^bd(z) != -z + y + z at y={y}, z={z}"
            break
    rep.add("axiom 2: exponent by a boundary is conjugation", ok, first)

    ok, first = True, ""
    for y, x, _ in triples:
        if C.action_exponent(y, C.c0.zero()) != y:
            ok, first = False, f"y^0 != y at {y}"
            break
    rep.add("zero exponent is the identity", ok, first)

    rng2 = random.Random(policy.seed + 12)
    ok, first = True, ""
    for _ in range(policy.count):
        y = C.c1.sample(rng2, policy.bound)
        x1 = C.c0.sample(rng2, policy.bound)
        x2 = C.c0.sample(rng2, policy.bound)
        if C.action_exponent(C.action_exponent(y, x1), x2) != C.action_exponent(y, C.c0.add(x1, x2)):
            ok, first = False, f"(y^x)^x' != y^(x+x') at y={y}"
            break
    rep.add("right action law", ok, first)
    return rep


# ---------------------------------------------------------------------------
# the morphism groupoid of a crossed module
# ---------------------------------------------------------------------------


class MonoidGroupoid:
    """Objects are the base group N; a morphism (g, t) runs g*bd(t) -> g,
    composes by (g, t) o (g*bd(t), t') = (g, t t'), and multiplies by the
    semidirect rule (g, t) (h, s) = (gh, t^h s).  The opposite structure
    reverses the multiplication and keeps the groupoid."""

    def __init__(self, cm: CrossedModule, reversed_product: bool = False) -> None:
        self.cm = cm
        self.reversed_product = reversed_product

    @property
    def objects(self) -> range:
        return self.cm.n.elements()

    def morphisms(self):
        return product(self.cm.n.elements(), self.cm.t.elements())

    @property
    def n_morphisms(self) -> int:
        return self.cm.n.order * self.cm.t.order

    def src(self, m: tuple[int, int]) -> int:
        g, t = m
        return self.cm.n.mul(g, self.cm.bd[t])

    def tgt(self, m: tuple[int, int]) -> int:
        return m[0]

    def identity(self, obj: int) -> tuple[int, int]:
        return (obj, self.cm.t.identity)

    def compose(self, a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
        """a after b; requires src(a) == tgt(b)."""
        if self.src(a) != self.tgt(b):
            raise ValueError("morphisms are not composable")
        return (a[0], self.cm.t.mul(a[1], b[1]))

    def inverse(self, m: tuple[int, int]) -> tuple[int, int]:
        return (self.src(m), self.cm.t.inv(m[1]))

    def _raw_product(self, a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
        g, t = a
        h, s = b
        return (self.cm.n.mul(g, h), self.cm.t.mul(self.cm.act[t][h], s))

    def product(self, a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
        if self.reversed_product:
            return self._raw_product(b, a)
        return self._raw_product(a, b)

    @property
    def unit_morphism(self) -> tuple[int, int]:
        return (self.cm.n.identity, self.cm.t.identity)

    def opposite(self) -> "MonoidGroupoid":
        return MonoidGroupoid(self.cm, not self.reversed_product)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MonoidGroupoid)
            and self.cm == other.cm
            and self.reversed_product == other.reversed_product
        )


def m_of_partial(cm: CrossedModule, max_morphisms: int = 10_000) -> MonoidGroupoid:
    M = MonoidGroupoid(cm)
    if M.n_morphisms > max_morphisms:
        raise ValueError(f"{M.n_morphisms} morphisms exceed the cap {max_morphisms}")
    return M


def monoid_groupoid_laws(M: MonoidGroupoid, assoc_cap: int = 300_000) -> Report:
    """Groupoid laws exhaustively; compositional associativity and the
    interchange law up to assoc_cap instances (deterministic order)."""
    rep = Report("monoid-groupoid laws")
    cm = M.cm
    T, N = cm.t, cm.n

    ok, first = True, ""
    for m in M.morphisms():
        if M.compose(m, M.identity(M.src(m))) != m or M.compose(M.identity(M.tgt(m)), m) != m:
            ok, first = False, f"identity laws fail at {m}"
            break
    rep.add("identities", ok, first)

    ok, first = True, ""
    for m in M.morphisms():
        iv = M.inverse(m)
        if M.src(iv) != M.tgt(m) or M.tgt(iv) != M.src(m):
            ok, first = False, f"inverse endpoints wrong at {m}"
            break
        if M.compose(m, iv) != M.identity(M.tgt(m)) or M.compose(iv, m) != M.identity(M.src(m)):
            ok, first = False, f"inverse laws fail at {m}"
            break
    rep.add("every morphism is invertible", ok, first)

    ok, first, seen = True, "", 0
    for g in N.elements():
        for t in T.elements():
            a = (g, t)
            for t2 in T.elements():
                b = (M.src(a), t2)
                ab = M.compose(a, b)
                for t3 in T.elements():
                    c = (M.src(b), t3)
                    seen += 1
                    if M.compose(ab, c) != M.compose(a, M.compose(b, c)):
                        ok, first = False, f"associativity fails at {a}, {b}, {c}"
                        break
                    if seen >= assoc_cap:
                        break
                if not ok or seen >= assoc_cap:
                    break
            if not ok or seen >= assoc_cap:
                break
        if not ok or seen >= assoc_cap:
            break
    rep.add("composition associative", ok, first)

    ok, first = True, ""
    for a in M.morphisms():
        for b in M.morphisms():
            p = M.product(a, b)
            want_src = N.mul(M.src(a), M.src(b)) if not M.reversed_product else N.mul(M.src(b), M.src(a))
            want_tgt = N.mul(M.tgt(a), M.tgt(b)) if not M.reversed_product else N.mul(M.tgt(b), M.tgt(a))
            if M.src(p) != want_src or M.tgt(p) != want_tgt:
                ok, first = False, f"product endpoints wrong at {a}, {b}"
                break
        if not ok:
            break
    rep.add("product is compatible with endpoints", ok, first)

    ok, first, seen = True, "", 0
    for g in N.elements():
        for t in T.elements():
            a = (g, t)
            for t2 in T.elements():
                b = (M.src(a), t2)
                for h in N.elements():
                    for s in T.elements():
                        c = (h, s)
                        for s2 in T.elements():
                            d = (M.src(c), s2)
                            seen += 1
                            lhs = M.product(M.compose(a, b), M.compose(c, d))
                            rhs = M.compose(M.product(a, c), M.product(b, d))
                            if lhs != rhs:
                                ok, first = False, f"interchange fails at {a},{b},{c},{d}"
                                break
                            if seen >= assoc_cap:
                                break
                        if not ok or seen >= assoc_cap:
                            break
                    if not ok or seen >= assoc_cap:
                        break
                if not ok or seen >= assoc_cap:
                    break
            if not ok or seen >= assoc_cap:
                break
        if not ok or seen >= assoc_cap:
            break
    rep.add("interchange law", ok, first)

    u = M.unit_morphism
    ok, first = True, ""
    for m in M.morphisms():
        if M.product(m, u) != m or M.product(u, m) != m:
            ok, first = False, f"unit morphism fails at {m}"
            break
    rep.add("unit laws", ok, first)
    return rep


# ---------------------------------------------------------------------------
# sign groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SignGroup:
    """{+1,-1} -> Gt -> G -> {+1,-1} with the first two maps an extension;
    omega is the image of -1, eps[g] is +-1."""

    gt: FiniteGroup
    g: FiniteGroup
    iota_minus: int
    bd: tuple[int, ...]
    eps: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.bd) != self.gt.order or len(self.eps) != self.g.order:
            raise ValueError("bd must cover Gt and eps must cover G")

    @property
    def omega(self) -> int:
        return self.iota_minus

    def eps_gt(self, t: int) -> int:
        """The composite Gt -> G -> {+1,-1}."""
        return self.eps[self.bd[t]]


def validate_sign_group(sg: SignGroup) -> Report:
    rep = Report("sign group structure")
    Gt, G = sg.gt, sg.g
    w = sg.iota_minus

    rep.add("iota injective (omega is not the identity)", w != Gt.identity, "")
    rep.add("omega squares to the identity", Gt.mul(w, w) == Gt.identity, "")

    central = all(Gt.mul(w, t) == Gt.mul(t, w) for t in Gt.elements())
    rep.add("omega is central", central, "")

    ok, first = True, ""
    for a in Gt.elements():
        for b in Gt.elements():
            if sg.bd[Gt.mul(a, b)] != G.mul(sg.bd[a], sg.bd[b]):
                ok, first = False, f"bd not a homomorphism at ({Gt.names[a]}, {Gt.names[b]})"
                break
        if not ok:
            break
    rep.add("bd is a homomorphism", ok, first)

    kernel = sorted(t for t in Gt.elements() if sg.bd[t] == G.identity)
    want = sorted({Gt.identity, w})
    rep.add("kernel of bd is {1, omega}", kernel == want,
            "" if kernel == want else f"kernel = {kernel}")

    surj = set(sg.bd) == set(G.elements())
    rep.add("bd is surjective", surj, "")

    ok, first = True, ""
    for a in G.elements():
        if sg.eps[a] not in (1, -1):
            ok, first = False, f"eps value {sg.eps[a]} at {G.names[a]}"
            break
        for b in G.elements():
            if sg.eps[G.mul(a, b)] != sg.eps[a] * sg.eps[b]:
                ok, first = False, f"eps not a homomorphism at ({G.names[a]}, {G.names[b]})"
                break
        if not ok:
            break
    rep.add("eps is a homomorphism into {+1,-1}", ok, first)
    return rep


def trivial_sign_group() -> SignGroup:
    gt = FiniteGroup(("1", "w"), ((0, 1), (1, 0)))
    return SignGroup(gt, FiniteGroup.trivial(), 1, (0, 0), (1,))


@lru_cache(maxsize=None)
def sign_group_sym_track(n: int) -> SignGroup:
    """The double cover of the symmetric group, with tables taken from the
    Clifford model (never from the presentation).

    Every element is omega^k times the first enumerated element over the same
    permutation, so the table needs one Clifford product per permutation pair
    (the parity cocycle) rather than one per element pair."""
    if not 2 <= n <= min(5, MAX_ENUM_DIM):
        raise ValueError("need 2 <= n <= 5 for table-backed groups")
    elems = enumerate_group(n)
    w_mv = omega(n)

    rep_idx: dict[Permutation, int] = {}
    for i, e in enumerate(elems):
        rep_idx.setdefault(e.delta, i)
    parity = []
    for e in elems:
        r = elems[rep_idx[e.delta]]
        if e.mv == r.mv:
            parity.append(0)
        elif e.mv == w_mv * r.mv:
            parity.append(1)
        else:
            raise AssertionError("fiber is not {rep, omega rep}")
    by_perm_parity = {(e.delta, parity[i]): i for i, e in enumerate(elems)}

    perms_enum = list(rep_idx)
    cocycle: dict[tuple[Permutation, Permutation], int] = {}
    for p in perms_enum:
        rp = elems[rep_idx[p]].mv
        for q in perms_enum:
            prod = rp * elems[rep_idx[q]].mv
            r = elems[rep_idx[p * q]].mv
            if prod == r:
                cocycle[(p, q)] = 0
            elif prod == w_mv * r:
                cocycle[(p, q)] = 1
            else:
                raise AssertionError("product left the fiber over p*q")

    table = tuple(
        tuple(
            by_perm_parity[
                (a.delta * b.delta, (parity[i] + parity[j] + cocycle[(a.delta, b.delta)]) % 2)
            ]
            for j, b in enumerate(elems)
        )
        for i, a in enumerate(elems)
    )
    gt = FiniteGroup(tuple(f"g{i}" for i in range(len(elems))), table)

    perms = sorted(all_permutations(n))
    g = FiniteGroup.from_mul(tuple(p.cycle_str() for p in perms), perms, lambda a, b: a * b)
    pidx = {p: i for i, p in enumerate(perms)}
    bd = tuple(pidx[e.delta] for e in elems)
    eps = tuple(p.sign() for p in perms)
    idx = {e: i for i, e in enumerate(elems)}
    w = idx[SymTrackElement(w_mv, Permutation.identity(n))]
    return SignGroup(gt, g, w, bd, eps)


def crossed_module_from_sign_group(sg: SignGroup) -> CrossedModule:
    """The boundary (eps bd, bd): Gt -> {+1,-1} x G with the exponent action

        g^(x,h) = hbar^-1 g hbar iota(eps(g)^binom2(x eps(h)))

    hbar being any lift of h.  The exponent uses x eps(h), not x alone, so
    the omega twist vanishes on pairs of the form (eps(h), h): those are the
    boundary values, where the action must reduce to plain conjugation.
    Verifies lift-independence exhaustively and the crossed-module axioms;
    raises ValueError when either fails."""
    Gt, G = sg.gt, sg.g
    signs = FiniteGroup.signs()
    base = FiniteGroup.product(signs, G)
    ng = G.order

    lifts: list[list[int]] = [[] for _ in range(ng)]
    for t in Gt.elements():
        lifts[sg.bd[t]].append(t)

    def act_with_lift(t: int, x_idx: int, h: int, lift: int) -> int:
        # The omega twist must vanish on the image of the boundary (pairs
        # (eps(h), h)), or exponents along the boundary stop being plain
        # conjugation; hence the exponent compares x against eps(h).
        out = Gt.mul(Gt.mul(Gt.inv(lift), t), lift)
        x = 1 if x_idx == 0 else -1
        if binom2(x * sg.eps[h]) % 2 == 1 and sg.eps_gt(t) == -1:
            out = Gt.mul(out, sg.omega)
        return out

    act_rows = []
    for t in Gt.elements():
        row = []
        for b in range(base.order):
            x_idx, h = divmod(b, ng)
            images = {act_with_lift(t, x_idx, h, lift) for lift in lifts[h]}
            if len(images) != 1:
                raise ValueError(
                    f"exponent action depends on the lift at t={Gt.names[t]}, base={(x_idx, h)}"
                )
            row.append(images.pop())
        act_rows.append(tuple(row))

    bd_c = tuple(
        (0 if sg.eps_gt(t) == 1 else 1) * ng + sg.bd[t] for t in Gt.elements()
    )
    cm = CrossedModule(Gt, base, bd_c, tuple(act_rows))
    rep = validate_crossed_module(cm)
    if not rep.ok:
        raise ValueError(f"crossed-module axioms fail: {rep.first_failure().name}")
    return cm


# ---------------------------------------------------------------------------
# sign-group actions on quadratic pair modules
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SignGroupAction:
    """star[g] is the strict endomorphism for g in G; bracket_values[t][i]
    is the bracket of the i-th degree-0 generator with t in Gt, extended to
    all of C0 by the track rule with base morphism star[bd(t)]."""

    C: QuadraticPairModule
    sg: SignGroup
    star: tuple[QpmMorphism, ...]
    bracket_values: tuple[tuple, ...]

    def __post_init__(self) -> None:
        if len(self.star) != self.sg.g.order:
            raise ValueError("one endomorphism per G element required")
        if len(self.bracket_values) != self.sg.gt.order:
            raise ValueError("one value row per Gt element required")

    def bracket(self, x, t: int):
        f0 = self.star[self.sg.bd[t]].f0
        return _letter_extension(self.C, self.C, f0, self.bracket_values[t], x)


def trivial_sign_group_action(C: QuadraticPairModule) -> SignGroupAction:
    """The unique action of the trivial sign group: the bracket with omega
    is forced to P((x|x)_H)."""
    sg = trivial_sign_group()
    zero_row = tuple(C.c1.zero() for _ in range(C.c0.ngens))
    omega_row = tuple(C.P(C.cross_effect(e, e)) for e in C.c0.generators())
    return SignGroupAction(C, sg, (QpmMorphism.identity(C),), (zero_row, omega_row))


def validate_sign_action(A: SignGroupAction, policy: SamplePolicy = SamplePolicy()) -> Report:
    rep = Report("sign group action axioms")
    C, sg = A.C, A.sg
    Gt, G = sg.gt, sg.g

    sgrep = validate_sign_group(sg)
    rep.add("underlying sign group", sgrep.ok,
            "" if sgrep.ok else str(sgrep.first_failure()))
    if not sgrep.ok:
        return rep

    for g in G.elements():
        mrep = validate_morphism(A.star[g], "strict", policy)
        if not mrep.ok:
            rep.add("every star image is a strict endomorphism", False,
                    f"star[{G.names[g]}]: {mrep.first_failure().name}")
            return rep
    rep.add("every star image is a strict endomorphism", True, "")

    gens0 = C.c0.generators()
    ok, first = True, ""
    idg = G.identity
    if A.star[idg].f0.images != tuple(gens0) or A.star[idg].f1.images != tuple(C.c1.generators()):
        ok, first = False, "star[1] is not the identity"
    for a in G.elements():
        if not ok:
            break
        for b in G.elements():
            lhs = A.star[G.mul(a, b)]
            rhs = compose_morphisms(A.star[a], A.star[b])
            if lhs.f0.images != rhs.f0.images or lhs.f1.images != rhs.f1.images:
                ok, first = False, f"star[{G.names[a]}{G.names[b]}] != star[{G.names[a]}] then star[{G.names[b]}]"
                break
    rep.add("star is a right action of G", ok, first)

    xs = sample_elements(C.c0, policy)
    zs = sample_elements(C.c1, policy)

    ok, first = True, ""
    for t in Gt.elements():
        f0 = A.star[sg.bd[t]].f0
        for x, y in sample_pairs(C.c0, policy):
            lhs = A.bracket(C.c0.add(x, y), t)
            rhs = C.c1.add(C.action_exponent(A.bracket(x, t), f0(y)), A.bracket(y, t))
            if lhs != rhs:
                ok, first = False, f"axiom 1 fails at t={Gt.names[t]}, x={x}, y={y}"
                break
        if not ok:
            break
    rep.add("axiom 1: bracket is a track in its first variable", ok, first)

    ok, first = True, ""
    for t in Gt.elements():
        e = sg.eps_gt(t)
        f0 = A.star[sg.bd[t]].f0
        for x in xs:
            if n_star(C, e, x, 0) != C.c0.add(f0(x), C.bd(A.bracket(x, t))):
                ok, first = False, f"axiom 2 fails at t={Gt.names[t]}, x={x}"
                break
        if not ok:
            break
    rep.add("axiom 2: eps(t)* = bd(t)* + bd bracket", ok, first)

    ok, first = True, ""
    for t in Gt.elements():
        e = sg.eps_gt(t)
        f1 = A.star[sg.bd[t]].f1
        for z in zs:
            if n_star(C, e, z, 1) != C.c1.add(f1(z), A.bracket(C.bd(z), t)):
                ok, first = False, f"axiom 3 fails at t={Gt.names[t]}, z={z}"
                break
        if not ok:
            break
    rep.add("axiom 3: eps(t)* = bd(t)* + bracket of the boundary", ok, first)

    ok, first = True, ""
    for s in Gt.elements():
        fs = A.star[sg.bd[s]].f0
        for t in Gt.elements():
            e_t = sg.eps_gt(t)
            for x in xs:
                lhs = A.bracket(x, Gt.mul(s, t))
                rhs = C.c1.add(A.bracket(fs(x), t), A.bracket(n_star(C, e_t, x, 0), s))
                if lhs != rhs:
                    ok, first = False, f"axiom 4 fails at s={Gt.names[s]}, t={Gt.names[t]}, x={x}"
                    break
            if not ok:
                break
        if not ok:
            break
    rep.add("axiom 4: bracket of a product", ok, first)

    ok, first = True, ""
    for x in xs:
        if A.bracket(x, sg.omega) != C.P(C.cross_effect(x, x)):
            ok, first = False, f"omega formula fails at x={x}"
            break
    rep.add("axiom 5: the omega formula", ok, first)
    return rep


# ---------------------------------------------------------------------------
# the induced crossed-module action
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CrossedModuleAction:
    """Action of the bridge crossed module on the same pair module:
    base_star[(x,h)] acts as x* then h*, and the double bracket is
    [[x,t]] = <eps(t)* x, t>."""

    C: QuadraticPairModule
    cm: CrossedModule
    sign_action: SignGroupAction
    base_star: tuple[QpmMorphism, ...]

    def bbracket(self, x, t: int):
        e = self.sign_action.sg.eps_gt(t)
        return self.sign_action.bracket(n_star(self.C, e, x, 0), t)

    def base_apply(self, b: int, x, level):
        """Apply the base element (x_sign, h) at the given level."""
        ng = self.sign_action.sg.g.order
        x_idx, h = divmod(b, ng)
        sign = 1 if x_idx == 0 else -1
        star = self.sign_action.star[h]
        if level == 0:
            return n_star(self.C, sign, star.f0(x), 0)
        if level == 1:
            return n_star(self.C, sign, star.f1(x), 1)
        raise ValueError("level must be 0 or 1")


def crossed_action_from_sign_action(
    A: SignGroupAction, policy: SamplePolicy = SamplePolicy()
) -> tuple[CrossedModuleAction, Report]:
    """Builds the crossed module of the sign group together with the double
    bracket and validates the five crossed-action axioms, including the
    second equality of axiom (4) as a consequence."""
    C, sg = A.C, A.sg
    cm = crossed_module_from_sign_group(sg)
    ng = sg.g.order

    base_star = []
    for b in range(cm.n.order):
        x_idx, h = divmod(b, ng)
        sign = 1 if x_idx == 0 else -1
        base_star.append(compose_morphisms(A.star[h], nstar_morphism(C, sign)))
    action = CrossedModuleAction(C, cm, A, tuple(base_star))

    rep = Report("crossed module action axioms")
    Gt = sg.gt
    xs = sample_elements(C.c0, policy)
    zs = sample_elements(C.c1, policy)

    def bd_star_apply(t: int, v, level):
        return action.base_apply(cm.bd[t], v, level)

    ok, first = True, ""
    for t in Gt.elements():
        for x, y in sample_pairs(C.c0, policy):
            lhs = action.bbracket(C.c0.add(x, y), t)
            rhs = C.c1.add(
                C.action_exponent(action.bbracket(x, t), bd_star_apply(t, y, 0)),
                action.bbracket(y, t),
            )
            if lhs != rhs:
                ok, first = False, f"axiom 1 fails at t={Gt.names[t]}, x={x}, y={y}"
                break
        if not ok:
            break
    rep.add("axiom 1: double bracket is a track in its first variable", ok, first)

    ok, first = True, ""
    for t in Gt.elements():
        for x in xs:
            if x != C.c0.add(bd_star_apply(t, x, 0), C.bd(action.bbracket(x, t))):
                ok, first = False, f"axiom 2 fails at t={Gt.names[t]}, x={x}"
                break
        if not ok:
            break
    rep.add("axiom 2: identity = bd_c(t)* + bd double bracket", ok, first)

    ok, first = True, ""
    for t in Gt.elements():
        for z in zs:
            if z != C.c1.add(bd_star_apply(t, z, 1), action.bbracket(C.bd(z), t)):
                ok, first = False, f"axiom 3 fails at t={Gt.names[t]}, z={z}"
                break
        if not ok:
            break
    rep.add("axiom 3: identity = bd_c(t)* + double bracket of the boundary", ok, first)

    ok, first = True, ""
    ok2, first2 = True, ""
    for s in Gt.elements():
        for t in Gt.elements():
            for x in xs:
                lhs = action.bbracket(x, Gt.mul(s, t))
                rhs = C.c1.add(action.bbracket(bd_star_apply(s, x, 0), t), action.bbracket(x, s))
                if lhs != rhs and ok:
                    ok, first = False, f"axiom 4 fails at s={Gt.names[s]}, t={Gt.names[t]}, x={x}"
                alt = C.c1.add(bd_star_apply(t, action.bbracket(x, s), 1), action.bbracket(x, t))
                if lhs != alt and ok2:
                    ok2, first2 = False, f"axiom 4 second equality fails at s={Gt.names[s]}, t={Gt.names[t]}, x={x}"
            if not (ok and ok2):
                break
        if not (ok and ok2):
            break
    rep.add("axiom 4: double bracket of a product", ok, first)
    rep.add("axiom 4: second equality holds as a consequence", ok2, first2)

    ok, first = True, ""
    for t in Gt.elements():
        for b in range(cm.n.order):
            binv = cm.n.inv(b)
            for x in xs:
                lhs = action.bbracket(x, cm.act[t][b])
                rhs = action.base_apply(b, action.bbracket(action.base_apply(binv, x, 0), t), 1)
                if lhs != rhs:
                    ok, first = False, f"axiom 5 fails at t={Gt.names[t]}, base={cm.n.names[b]}, x={x}"
                    break
            if not ok:
                break
        if not ok:
            break
    rep.add("axiom 5: equivariance under the base group", ok, first)

    ok, first = True, ""
    for x in xs:
        if action.bbracket(x, Gt.identity) != C.c1.zero():
            ok, first = False, f"bracket with 1 nonzero at {x}"
            break
    rep.add("double bracket with the identity vanishes", ok, first)
    return action, rep
