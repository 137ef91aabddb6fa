"""Tests for the expression parser, printer, and evaluator."""

import random
from fractions import Fraction

import pytest

from pincover.clifford import Multivector
from pincover.exprlang import (
    Add,
    BasisVec,
    ExprSyntaxError,
    GenT,
    Mul,
    Neg,
    OmegaLit,
    Pow,
    RationalLit,
    Sqrt2Lit,
    Sub,
    eval_expr,
    infer_dim,
    parse,
    print_expr,
)
from pincover.pin import gen_t, omega
from pincover.scalars import QSqrt2


def test_parse_juxtaposition_product():
    e = parse("(1/2) (e1-e2) (e1-e2)")
    assert eval_expr(e, dim=2) == Multivector.one(2)


def test_parse_generator_word():
    e = parse("t1 t3 t1 t3")
    assert infer_dim(e) == 4
    assert eval_expr(e) == omega(4)
    # Explicit '*' means the same thing as juxtaposition.
    assert parse("t1 * t3") == parse("t1 t3")


def test_power_node_and_precedence():
    e = parse("e1 ^ 2")
    assert e == Pow(BasisVec(1), 2)
    assert eval_expr(e, dim=1) == Multivector.one(1)
    # Power binds tighter than juxtaposition, which binds tighter than sums.
    assert parse("e1 e2 ^ 2") == Mul(BasisVec(1), Pow(BasisVec(2), 2))
    assert parse("e1 + e2 e3") == Add(BasisVec(1), Mul(BasisVec(2), BasisVec(3)))
    assert parse("e1 - e2 - e3") == Sub(Sub(BasisVec(1), BasisVec(2)), BasisVec(3))


def test_negative_exponent_is_versor_inverse():
    t1 = gen_t(1, 2)
    assert eval_expr(parse("t1 ^ -1"), dim=2) == t1
    x = eval_expr(parse("(e1 e2) ^ -1"), dim=2)
    assert x * eval_expr(parse("e1 e2"), dim=2) == Multivector.one(2)
    # Non-versors have no inverse of this kind.
    with pytest.raises(ValueError):
        eval_expr(parse("(1 + e1) ^ -1"), dim=1)


def test_rationals_and_sqrt2():
    assert parse("3/4") == RationalLit(Fraction(3, 4))
    assert eval_expr(parse("sqrt2 sqrt2"), dim=1) == Multivector.scalar(1, 2)
    got = eval_expr(parse("1/2 sqrt2"), dim=1)
    assert got == Multivector.scalar(1, QSqrt2(0, Fraction(1, 2)))
    # A negative literal reprints as a negation with the same value.
    reparsed = parse(print_expr(RationalLit(Fraction(-3, 4))))
    assert reparsed == Neg(RationalLit(Fraction(3, 4)))
    assert eval_expr(reparsed, dim=1) == Multivector.scalar(1, QSqrt2(Fraction(-3, 4)))


def test_unary_minus():
    assert parse("-e1") == Neg(BasisVec(1))
    assert parse("--e1") == Neg(Neg(BasisVec(1)))
    assert eval_expr(parse("-e1 - -e1"), dim=1) == Multivector.zero(1)


def test_omega_literal():
    e = parse("w t1 w")
    assert e == Mul(Mul(OmegaLit(), GenT(1)), OmegaLit())
    assert eval_expr(e, dim=2) == gen_t(1, 2)


def test_infer_dim():
    assert infer_dim(parse("1/2")) == 1
    assert infer_dim(parse("e3 + e1")) == 3
    assert infer_dim(parse("t2")) == 3
    assert infer_dim(parse("w")) == 1


def test_eval_dim_too_small():
    with pytest.raises(ValueError):
        eval_expr(parse("e3"), dim=2)


def test_syntax_errors_have_positions():
    for src in ("e0", "t0", "q1", "1/", "(e1", "e1 )", "1/0", "e1 / 2", "e1 ^ x", "", "1..2"):
        with pytest.raises(ExprSyntaxError) as info:
            parse(src)
        assert info.value.line >= 1 and info.value.col >= 1
    with pytest.raises(ExprSyntaxError) as info:
        parse("e1 +\n  @")
    assert info.value.line == 2


def _random_expr(rng: random.Random, depth: int):
    # Stays inside the parser's image: rational literals are nonnegative
    # (the grammar spells negatives with unary minus, i.e. a Neg node).
    if depth == 0:
        return rng.choice(
            [
                RationalLit(Fraction(rng.randint(0, 9), rng.randint(1, 9))),
                Sqrt2Lit(),
                BasisVec(rng.randint(1, 4)),
                GenT(rng.randint(1, 3)),
                OmegaLit(),
            ]
        )
    kind = rng.randrange(5)
    if kind == 0:
        return Neg(_random_expr(rng, depth - 1))
    if kind == 1:
        return Add(_random_expr(rng, depth - 1), _random_expr(rng, depth - 1))
    if kind == 2:
        return Sub(_random_expr(rng, depth - 1), _random_expr(rng, depth - 1))
    if kind == 3:
        return Mul(_random_expr(rng, depth - 1), _random_expr(rng, depth - 1))
    return Pow(_random_expr(rng, depth - 1), rng.randint(0, 3))


def test_print_parse_round_trip():
    rng = random.Random(20260814)
    for _ in range(200):
        e = _random_expr(rng, rng.randint(1, 4))
        assert parse(print_expr(e)) == e


def test_round_trip_preserves_value():
    rng = random.Random(7)
    for _ in range(50):
        e = _random_expr(rng, 2)
        n = max(infer_dim(e), 4)
        try:
            want = eval_expr(e, dim=n)
        except ValueError:
            continue  # negative power of a non-versor
        assert eval_expr(parse(print_expr(e)), dim=n) == want
