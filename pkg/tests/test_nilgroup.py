"""The closed-form group law and quadratic map against word-level oracles."""

from __future__ import annotations

import itertools
import random

import pytest

from pincover.nilgroup import (
    NilElement,
    NilSyntaxError,
    PointedSet,
    RedTensorElt,
    TensorElt,
    abelianize,
    commutator,
    crossed_effect_0free,
    h_0free,
    nil_inv,
    nil_mul,
    nil_scale,
    parse_nil_element,
    sigma_bar,
    tensor,
)

from oracles import element_to_word, h_recursion, word_normal_form

E2 = PointedSet(("a", "b"))
E3 = PointedSet(("a", "b", "c"))


def all_short_words(ptset, max_len):
    letters = [(i, s) for i in range(ptset.size) for s in (1, -1)]
    for length in range(max_len + 1):
        yield from (list(w) for w in itertools.product(letters, repeat=length))


class TestGroupLawAgainstRewriting:
    def test_products_of_all_short_words(self):
        # nil_mul must agree with bubble-sort rewriting of the concatenation
        for ptset, max_len in ((E2, 4), (E3, 3)):
            words = list(all_short_words(ptset, max_len))
            elements = [word_normal_form(w, ptset) for w in words]
            for (wa, xa), (wb, xb) in itertools.product(zip(words, elements), repeat=2):
                if len(wa) + len(wb) > max_len:
                    continue
                assert nil_mul(xa, xb) == word_normal_form(wa + wb, ptset)

    def test_single_swap(self):
        # e2 + e1 = e1 + e2 - [e1, e2]
        a, b = NilElement.generator(E2, 0), NilElement.generator(E2, 1)
        x = nil_mul(b, a)
        assert x.linear == (1, 1)
        assert x.comm == (-1,)

    def test_inverse_and_scale_against_iteration(self):
        rng = random.Random(7)
        zero = NilElement.zero(E3)
        for _ in range(64):
            x = NilElement(
                E3,
                tuple(rng.randint(-3, 3) for _ in range(3)),
                tuple(rng.randint(-3, 3) for _ in range(3)),
            )
            assert nil_mul(x, nil_inv(x)) == zero
            assert nil_mul(nil_inv(x), x) == zero
            acc = zero
            for k in range(6):
                assert nil_scale(k, x) == acc
                acc = nil_mul(acc, x)
            assert nil_scale(-3, x) == nil_inv(nil_scale(3, x))

    def test_commutator_is_central_and_bilinear(self):
        rng = random.Random(11)
        for _ in range(32):
            x, y, z = (
                NilElement(
                    E3,
                    tuple(rng.randint(-2, 2) for _ in range(3)),
                    tuple(rng.randint(-2, 2) for _ in range(3)),
                )
                for _ in range(3)
            )
            c = commutator(x, y)
            assert not any(c.linear)
            assert nil_mul(c, z) == nil_mul(z, c)
            assert commutator(nil_mul(x, z), y) == nil_mul(commutator(x, y), commutator(z, y))

    def test_word_round_trip(self):
        rng = random.Random(3)
        for _ in range(64):
            x = NilElement(
                E3,
                tuple(rng.randint(-2, 2) for _ in range(3)),
                tuple(rng.randint(-2, 2) for _ in range(3)),
            )
            assert word_normal_form(element_to_word(x), E3) == x


class TestQuadraticMap:
    def test_closed_form_matches_recursion_exhaustively(self):
        for lin in itertools.product(range(-2, 3), repeat=2):
            for comm in itertools.product(range(-2, 3), repeat=1):
                x = NilElement(E2, lin, comm)
                assert h_0free(x) == h_recursion(x)

    def test_closed_form_matches_recursion_three_generators(self):
        rng = random.Random(5)
        for _ in range(128):
            x = NilElement(
                E3,
                tuple(rng.randint(-2, 2) for _ in range(3)),
                tuple(rng.randint(-2, 2) for _ in range(3)),
            )
            assert h_0free(x) == h_recursion(x)

    def test_defining_recursion_holds_for_the_closed_form(self):
        rng = random.Random(13)
        for _ in range(128):
            x, y = (
                NilElement(
                    E3,
                    tuple(rng.randint(-2, 2) for _ in range(3)),
                    tuple(rng.randint(-2, 2) for _ in range(3)),
                )
                for _ in range(2)
            )
            lhs = h_0free(nil_mul(x, y))
            rhs = h_0free(x) + h_0free(y) + crossed_effect_0free(x, y)
            assert lhs == rhs

    def test_frozen_small_values(self):
        a, b = NilElement.generator(E2, 0), NilElement.generator(E2, 1)
        e_aa = TensorElt.basis(E2, 0, 0)
        assert h_0free(a) == TensorElt.zero(E2)
        assert h_0free(nil_inv(a)) == e_aa          # H(-e) = e(x)e
        assert h_0free(nil_mul(a, a)) == e_aa       # H(2e) = e(x)e
        assert crossed_effect_0free(a, b) == TensorElt.basis(E2, 1, 0)
        # H([a,b]) = b(x)a - a(x)b
        assert h_0free(commutator(a, b)) == TensorElt.basis(E2, 1, 0) - TensorElt.basis(E2, 0, 1)


class TestReducedTensorSquare:
    def test_sigma_bar_is_additive(self):
        rng = random.Random(17)
        for _ in range(64):
            z = TensorElt(E3, tuple(rng.randint(-4, 4) for _ in range(9)))
            w = TensorElt(E3, tuple(rng.randint(-4, 4) for _ in range(9)))
            assert sigma_bar(z + w) == sigma_bar(z) + sigma_bar(w)

    def test_sigma_bar_relations(self):
        # e_j (x) e_i |-> -class(e_i (x) e_j); diagonal classes have order 2
        z = TensorElt.basis(E2, 1, 0)
        assert sigma_bar(z) == -sigma_bar(TensorElt.basis(E2, 0, 1))
        d = sigma_bar(TensorElt.basis(E2, 0, 0))
        assert d + d == RedTensorElt.zero(E2)
        assert d != RedTensorElt.zero(E2)

    def test_symmetric_tensors_die_off_diagonal(self):
        rng = random.Random(19)
        for _ in range(32):
            u = [rng.randint(-3, 3) for _ in range(3)]
            v = [rng.randint(-3, 3) for _ in range(3)]
            z = tensor(u, v, E3) + tensor(v, u, E3)
            assert all(c == 0 for c in sigma_bar(z).offdiag)


class TestElementSyntax:
    def test_examples(self):
        assert parse_nil_element("e1 + e2 - e1", PointedSet(("e1", "e2"))) == nil_mul(
            nil_mul(NilElement.generator(PointedSet(("e1", "e2")), 0),
                    NilElement.generator(PointedSet(("e1", "e2")), 1)),
            nil_inv(NilElement.generator(PointedSet(("e1", "e2")), 0)),
        )
        pt = PointedSet(("e1", "e2"))
        assert parse_nil_element("[e1,e2]", pt) == NilElement.basis_commutator(pt, 0, 1)
        assert parse_nil_element("[e2,e1]", pt) == nil_inv(NilElement.basis_commutator(pt, 0, 1))
        assert parse_nil_element("2 e1 + 3 [e1,e2]", pt) == nil_mul(
            nil_scale(2, NilElement.generator(pt, 0)),
            nil_scale(3, NilElement.basis_commutator(pt, 0, 1)),
        )
        assert parse_nil_element("0", pt) == NilElement.zero(pt)
        assert parse_nil_element("-e1", pt) == nil_inv(NilElement.generator(pt, 0))

    def test_errors(self):
        pt = PointedSet(("a", "b"))
        with pytest.raises(NilSyntaxError):
            parse_nil_element("a + + b", pt)
        with pytest.raises(NilSyntaxError):
            parse_nil_element("c", pt)
        with pytest.raises(NilSyntaxError):
            parse_nil_element("[a b]", pt)
        with pytest.raises(NilSyntaxError):
            parse_nil_element("3", pt)
        with pytest.raises(NilSyntaxError):
            parse_nil_element("", pt)

    def test_round_trip_through_str(self):
        rng = random.Random(23)
        pt = PointedSet(("a", "b", "c"))
        for _ in range(64):
            x = NilElement(
                pt,
                tuple(rng.randint(-3, 3) for _ in range(3)),
                tuple(rng.randint(-3, 3) for _ in range(3)),
            )
            assert parse_nil_element(str(x), pt) == x


def test_abelianize_drops_commutators():
    x = nil_mul(NilElement.generator(E2, 1), NilElement.generator(E2, 0))
    assert abelianize(x) == (1, 1)
    assert abelianize(commutator(NilElement.generator(E2, 0), NilElement.generator(E2, 1))) == (0, 0)
