import pytest

from pincover.actions import (
    CrossedModule,
    FiniteGroup,
    MonoidGroupoid,
    crossed_action_from_sign_action,
    crossed_module_from_sign_group,
    inner_crossed_module,
    m_of_partial,
    monoid_groupoid_laws,
    sign_group_sym_track,
    trivial_sign_group,
    trivial_sign_group_action,
    validate_crossed_module,
    validate_group,
    validate_qpm_crossed_module,
    validate_sign_action,
    validate_sign_group,
    SignGroupAction,
)
from pincover.perm import Permutation
from pincover.pin import SymTrackElement, enumerate_group, gen_t, omega
from pincover.quadratic import (
    BUILTIN_QPMS,
    SamplePolicy,
    n_star,
    nstar_morphism,
    qpm_eta,
    qpm_nil,
)

POL = SamplePolicy()


# --- finite groups ---------------------------------------------------------


def test_symmetric_group_table():
    G = FiniteGroup.symmetric(3)
    assert G.order == 6
    rep = validate_group(G)
    assert rep.ok
    assert G.mul(G.identity, 3) == 3
    assert all(G.mul(i, G.inv(i)) == G.identity for i in G.elements())


def test_group_json_round_trip():
    G = FiniteGroup.symmetric(3)
    assert FiniteGroup.from_dict(G.to_dict()) == G
    C = FiniteGroup.cyclic(5)
    assert FiniteGroup.from_dict(C.to_dict()) == C


def test_product_group():
    P = FiniteGroup.product(FiniteGroup.signs(), FiniteGroup.cyclic(3))
    assert P.order == 6
    assert validate_group(P).ok
    # (-1, r) * (-1, r) = (+1, r^2)
    i = 1 * 3 + 1
    assert P.mul(i, i) == 0 * 3 + 2


def test_bad_tables_rejected():
    with pytest.raises(ValueError):
        FiniteGroup(("a", "b"), ((0, 0), (1, 1)))  # rows not permutations
    with pytest.raises(ValueError):
        # Latin square with a left identity only
        FiniteGroup(("a", "b", "c"), ((0, 1, 2), (2, 0, 1), (1, 2, 0)))


# --- crossed modules -------------------------------------------------------


def test_inner_crossed_module_passes():
    rep = validate_crossed_module(inner_crossed_module(FiniteGroup.symmetric(3)))
    assert rep.ok, rep.first_failure()


def test_mutated_action_rejected_with_witness():
    G = FiniteGroup.symmetric(3)
    X = inner_crossed_module(G)
    # replace conjugation by the trivial action; G is nonabelian so the
    # conjugation axioms must break somewhere
    trivial_act = tuple(tuple(t for _ in G.elements()) for t in G.elements())
    rep = validate_crossed_module(CrossedModule(G, G, X.bd, trivial_act))
    assert not rep.ok
    fail = rep.first_failure()
    assert fail.witness


def test_qpm_boundary_is_crossed_module():
    rep = validate_qpm_crossed_module(qpm_nil(("a", "b")), POL)
    assert rep.ok, rep.first_failure()
    rep = validate_qpm_crossed_module(qpm_eta(), POL)
    assert rep.ok, rep.first_failure()


# --- the morphism groupoid -------------------------------------------------


def test_discrete_groupoid_from_trivial_top_group():
    N = FiniteGroup.symmetric(3)
    T = FiniteGroup.trivial()
    X = CrossedModule(T, N, (N.identity,), ((0,) * N.order,))
    M = m_of_partial(X)
    assert M.n_morphisms == N.order
    for m in M.morphisms():
        assert M.src(m) == M.tgt(m) and m == M.identity(M.tgt(m))
    assert monoid_groupoid_laws(M).ok


def test_inner_c2_groupoid_shape():
    M = m_of_partial(inner_crossed_module(FiniteGroup.cyclic(2)))
    assert len(list(M.objects)) == 2
    assert M.n_morphisms == 4
    homs = {(a, b): [] for a in M.objects for b in M.objects}
    for m in M.morphisms():
        homs[(M.src(m), M.tgt(m))].append(m)
    assert all(len(v) == 1 for v in homs.values())  # connected, hom-sets size 1
    assert monoid_groupoid_laws(M).ok


@pytest.mark.parametrize("n", [2, 3])
def test_sym_track_groupoid_laws(n):
    M = m_of_partial(crossed_module_from_sign_group(sign_group_sym_track(n)))
    rep = monoid_groupoid_laws(M)
    assert rep.ok, rep.first_failure()


def test_opposite_is_involutive():
    M = m_of_partial(inner_crossed_module(FiniteGroup.symmetric(3)))
    Mop = M.opposite()
    assert monoid_groupoid_laws(Mop).ok
    assert Mop.opposite() == M
    a, b = (1, 2), (1, 3)
    assert Mop.product(a, b) == M.product(b, a)


def test_morphism_cap():
    with pytest.raises(ValueError):
        m_of_partial(inner_crossed_module(FiniteGroup.symmetric(5)))


def test_compose_requires_matching_endpoints():
    M = m_of_partial(inner_crossed_module(FiniteGroup.symmetric(3)))
    m = (0, 1)
    bad = (M.tgt(m), 1)
    if M.src(bad) != M.tgt(m):
        with pytest.raises(ValueError):
            M.compose(bad, m)


# --- sign groups -----------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_sym_track_sign_group_valid(n):
    sg = sign_group_sym_track(n)
    import math

    assert sg.gt.order == 2 * math.factorial(n)
    rep = validate_sign_group(sg)
    assert rep.ok, rep.first_failure()


def test_sym_track_2_is_klein_four():
    sg = sign_group_sym_track(2)
    Gt = sg.gt
    assert Gt.order == 4
    assert all(Gt.mul(t, t) == Gt.identity for t in Gt.elements())
    assert all(Gt.mul(a, b) == Gt.mul(b, a) for a in Gt.elements() for b in Gt.elements())


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_eps_agrees_with_permutation_sign(n):
    sg = sign_group_sym_track(n)
    elems = enumerate_group(n)
    for t, e in enumerate(elems):
        assert sg.eps_gt(t) == e.delta.sign()


def test_trivial_sign_group_valid():
    rep = validate_sign_group(trivial_sign_group())
    assert rep.ok


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sign_group_table_matches_direct_products(n):
    import random

    sg = sign_group_sym_track(n)
    elems = enumerate_group(n)
    idx = {e: i for i, e in enumerate(elems)}
    rng = random.Random(0)
    for _ in range(300):
        i, j = rng.randrange(len(elems)), rng.randrange(len(elems))
        assert sg.gt.mul(i, j) == idx[elems[i] * elems[j]]


def test_sign_group_bad_dimension():
    with pytest.raises(ValueError):
        sign_group_sym_track(6)


# --- the bridge crossed module ---------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4])
def test_bridge_crossed_module_exhaustive(n):
    cm = crossed_module_from_sign_group(sign_group_sym_track(n))
    rep = validate_crossed_module(cm)
    assert rep.ok, rep.first_failure()
    assert cm.n.order == 2 * cm.t.order // 2  # {+-1} x Sym(n) has order 2 n!


def test_bridge_witness_values():
    sg = sign_group_sym_track(2)
    cm = crossed_module_from_sign_group(sg)
    elems = enumerate_group(2)
    idx = {e: i for i, e in enumerate(elems)}
    t1 = idx[SymTrackElement.from_multivector(gen_t(1, 2))]
    wt1 = idx[SymTrackElement.from_multivector(omega(2) * gen_t(1, 2))]
    ng = sg.g.order
    # the pair (-1, id) multiplies odd elements by omega
    assert cm.act[t1][1 * ng + sg.g.identity] == wt1
    # the pair (+1, id) is the identity automorphism
    assert all(cm.act[t][0 * ng + sg.g.identity] == t for t in sg.gt.elements())
    # omega is even and central, hence fixed by everything
    w = sg.omega
    assert all(cm.act[w][b] == w for b in range(cm.n.order))


def test_bridge_boundary_is_eps_times_bd():
    sg = sign_group_sym_track(3)
    cm = crossed_module_from_sign_group(sg)
    ng = sg.g.order
    for t in sg.gt.elements():
        x_idx, h = divmod(cm.bd[t], ng)
        assert h == sg.bd[t]
        assert (1 if x_idx == 0 else -1) == sg.eps_gt(t)


# --- sign group actions ----------------------------------------------------


@pytest.mark.parametrize("name", sorted(BUILTIN_QPMS))
def test_trivial_action_validates(name):
    C = BUILTIN_QPMS[name]()
    rep = validate_sign_action(trivial_sign_group_action(C), POL)
    assert rep.ok, rep.first_failure()


def test_trivial_action_bracket_values_eta():
    C = qpm_eta()
    A = trivial_sign_group_action(C)
    e = C.c0.generators()[0]
    w = A.sg.omega
    assert A.bracket(e, w) == C.P(C.cross_effect(e, e))
    assert A.bracket(e, w) != C.c1.zero()
    assert A.bracket(e, A.sg.gt.identity) == C.c1.zero()


def test_trivial_action_bracket_values_nil():
    C = qpm_nil(("a",))
    A = trivial_sign_group_action(C)
    a = C.c0.generators()[0]
    w = A.sg.omega
    v = A.bracket(a, w)
    assert v == C.P(C.cross_effect(a, a))
    assert v != C.c1.zero()
    assert C.c1.add(v, v) == C.c1.zero()  # diagonal classes have order 2


def test_bracket_rearranged_axiom_two():
    C = qpm_nil(("a", "b"))
    A = trivial_sign_group_action(C)
    for t in A.sg.gt.elements():
        e = A.sg.eps_gt(t)
        f0 = A.star[A.sg.bd[t]].f0
        for x in C.c0.generators():
            lhs = C.bd(A.bracket(x, t))
            rhs = C.c0.add(C.c0.neg(f0(x)), n_star(C, e, x, 0))
            assert lhs == rhs


def test_mutated_omega_bracket_fails_omega_formula():
    C = qpm_eta()
    A = trivial_sign_group_action(C)
    zero_row = tuple(C.c1.zero() for _ in range(C.c0.ngens))
    B = SignGroupAction(C, A.sg, A.star, (A.bracket_values[0], zero_row))
    rep = validate_sign_action(B, POL)
    assert not rep.ok
    fail = rep.first_failure()
    assert fail.name == "axiom 5: the omega formula"
    assert fail.witness


def test_non_strict_star_rejected_before_axioms():
    C = qpm_nil(("a", "b"))
    A = trivial_sign_group_action(C)
    B = SignGroupAction(C, A.sg, (nstar_morphism(C, 2),), A.bracket_values)
    rep = validate_sign_action(B, POL)
    assert not rep.ok
    assert rep.first_failure().name == "every star image is a strict endomorphism"
    assert not any(c.name.startswith("axiom") for c in rep.checks)


# --- induced crossed-module actions ----------------------------------------


@pytest.mark.parametrize("name", ["eta", "nil1", "nil2"])
def test_crossed_action_validates(name):
    C = BUILTIN_QPMS[name]()
    action, rep = crossed_action_from_sign_action(trivial_sign_group_action(C), POL)
    assert rep.ok, rep.first_failure()
    names = [c.name for c in rep.checks]
    assert "axiom 4: second equality holds as a consequence" in names
    assert "double bracket with the identity vanishes" in names


def test_crossed_action_bracket_matches_omega_formula():
    C = qpm_eta()
    action, rep = crossed_action_from_sign_action(trivial_sign_group_action(C), POL)
    assert rep.ok
    w = action.sign_action.sg.omega
    for x in C.c0.generators():
        assert action.bbracket(x, w) == C.P(C.cross_effect(x, x))
