"""Finite group presentations and coset enumeration over the trivial subgroup.

Words are tuples of (generator index, exponent +-1).  The enumerator is the
relator-scanning strategy with a fixed coset introduction order, so its
output (and overflow behaviour) is deterministic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Sequence

from .report import Report

Word = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class FinitePresentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self) -> None:
        seen = set()
        for g in self.generators:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", g):
                raise ValueError(f"bad generator name {g!r}")
            if g in seen:
                raise ValueError(f"duplicate generator {g!r}")
            seen.add(g)
        for word in self.relators:
            for gen, exp in word:
                if not 0 <= gen < len(self.generators):
                    raise ValueError(f"relator mentions unknown generator index {gen}")
                if exp not in (1, -1):
                    raise ValueError(f"exponent must be +-1, got {exp}")

    def word_str(self, word: Word) -> str:
        return " ".join(self.generators[g] + ("" if e == 1 else "^-1") for g, e in word) or "1"


def _power(word: Word, k: int) -> Word:
    if k < 0:
        word = tuple((g, -e) for g, e in reversed(word))
        k = -k
    return word * k


def sym_track_presentation(n: int) -> FinitePresentation:
    """Generators w, t1..t(n-1); relators of the order-2*n! cover.

    t_i^2, (t_i t_{i+1})^3, w^2, [t_i, w], and t_i t_j w^-1 t_i^-1 t_j^-1
    for j >= i+2 (the last family says t_i t_j = w t_j t_i).
    """
    if n < 2:
        raise ValueError("need n >= 2")
    gens = ("w",) + tuple(f"t{i}" for i in range(1, n))
    W = 0
    T = {i: i for i in range(1, n)}  # generator index of t_i
    rels: list[Word] = []
    for i in range(1, n):
        rels.append(((T[i], 1), (T[i], 1)))
    for i in range(1, n - 1):
        rels.append(_power(((T[i], 1), (T[i + 1], 1)), 3))
    rels.append(((W, 1), (W, 1)))
    for i in range(1, n):
        rels.append(((T[i], -1), (W, -1), (T[i], 1), (W, 1)))
    for i in range(1, n):
        for j in range(i + 2, n):
            rels.append(((T[i], 1), (T[j], 1), (W, -1), (T[i], -1), (T[j], -1)))
    return FinitePresentation(gens, tuple(rels))


def verify_images(
    pres: FinitePresentation,
    images: Sequence,
    mul: Callable,
    inv: Callable,
    one,
    eq: Callable = None,
) -> Report:
    """Evaluate every relator on candidate generator images in a target group."""
    if len(images) != len(pres.generators):
        raise ValueError("one image per generator required")
    if eq is None:
        eq = lambda a, b: a == b
    rep = Report("relators hold on the generator images")
    for word in pres.relators:
        val = one
        for g, e in word:
            val = mul(val, images[g] if e == 1 else inv(images[g]))
        rep.add(pres.word_str(word) + " = 1", eq(val, one))
    return rep


class CosetOverflow(Exception):
    def __init__(self, max_cosets: int) -> None:
        super().__init__(f"coset table exceeded {max_cosets} rows")
        self.max_cosets = max_cosets


class _CosetTable:
    """Coset table over the full generator+inverse alphabet with a union-find
    of coincident cosets.  Letter 2g is generator g, letter 2g+1 its inverse."""

    def __init__(self, ngens: int, max_cosets: int) -> None:
        self.nletters = 2 * ngens
        self.max_cosets = max_cosets
        self.table: list[list[int | None]] = [[None] * self.nletters]
        self.parent = [0]
        self.n_alive = 1
        self.queue: list[int] = []

    def rep(self, k: int) -> int:
        root = k
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[k] != root:
            self.parent[k], k = root, self.parent[k]
        return root

    def alive(self, k: int) -> bool:
        return self.parent[k] == k

    def define(self, alpha: int, letter: int) -> int:
        if len(self.table) >= self.max_cosets:
            raise CosetOverflow(self.max_cosets)
        beta = len(self.table)
        self.table.append([None] * self.nletters)
        self.parent.append(beta)
        self.n_alive += 1
        self.table[alpha][letter] = beta
        self.table[beta][letter ^ 1] = alpha
        return beta

    def _merge(self, a: int, b: int) -> None:
        a, b = self.rep(a), self.rep(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        self.parent[b] = a
        self.n_alive -= 1
        self.queue.append(b)

    def coincidence(self, a: int, b: int) -> None:
        self._merge(a, b)
        while self.queue:
            gamma = self.queue.pop(0)
            row = self.table[gamma]
            for letter in range(self.nletters):
                delta = row[letter]
                if delta is None:
                    continue
                self.table[delta][letter ^ 1] = None
                mu, nu = self.rep(gamma), self.rep(delta)
                existing = self.table[mu][letter]
                if existing is not None:
                    self._merge(nu, existing)
                else:
                    back = self.table[nu][letter ^ 1]
                    if back is not None:
                        self._merge(mu, back)
                    else:
                        self.table[mu][letter] = nu
                        self.table[nu][letter ^ 1] = mu

    def scan_and_fill(self, alpha: int, word: Sequence[int]) -> None:
        f, i = alpha, 0
        b, j = alpha, len(word) - 1
        while True:
            while i <= j:
                nxt = self.table[f][word[i]]
                if nxt is None:
                    break
                f, i = nxt, i + 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i:
                prv = self.table[b][word[j] ^ 1]
                if prv is None:
                    break
                b, j = prv, j - 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                self.table[f][word[i]] = b
                self.table[b][word[i] ^ 1] = f
                return
            self.define(f, word[i])


def todd_coxeter(pres: FinitePresentation, max_cosets: int = 100_000) -> int:
    """Order of the presented group (index of the trivial subgroup).

    Raises CosetOverflow if more than max_cosets rows would be introduced.
    """
    ngens = len(pres.generators)
    letters = [
        tuple((2 * g) if e == 1 else (2 * g + 1) for g, e in word)
        for word in pres.relators
    ]
    ct = _CosetTable(ngens, max_cosets)
    alpha = 0
    while alpha < len(ct.table):
        if not ct.alive(alpha):
            alpha += 1
            continue
        for word in letters:
            ct.scan_and_fill(alpha, word)
            if not ct.alive(alpha):
                break
        if ct.alive(alpha):
            for letter in range(ct.nletters):
                if ct.table[alpha][letter] is None:
                    ct.define(alpha, letter)
        alpha += 1
    return ct.n_alive


# ---------------------------------------------------------------------------
# Text format:  gens: w t1 t2; rels: t1^2, (t1 t2)^3, w^2, t1^-1 w^-1 t1 w
#
#   file      := 'gens:' name+ ';' 'rels:' word (',' word)*
#   word      := item+
#   item      := (name | '(' word ')') ('^' '-'? digits)?
#
# Whitespace separates names; newlines are whitespace.  '#' starts a comment.
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<pow>\^-?\d+)|(?P<punc>[();,:])|(?P<bad>\S))")


def _tokenize_presentation(text: str) -> list[tuple[str, str, int]]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0]
        pos = 0
        while pos < len(line):
            m = _TOKEN.match(line, pos)
            if m is None:
                break
            if m.group("bad"):
                raise PresentationSyntaxError(f"line {lineno}: unexpected character {m.group('bad')!r}")
            kind = "name" if m.group("name") else ("pow" if m.group("pow") else "punc")
            out.append((kind, m.group(kind), lineno))
            pos = m.end()
    return out


class PresentationSyntaxError(ValueError):
    pass


class _WordParser:
    def __init__(self, tokens: list[tuple[str, str, int]], gen_index: dict[str, int]) -> None:
        self.tokens = tokens
        self.pos = 0
        self.gen_index = gen_index

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> tuple[str, str, int]:
        t = self.peek()
        if t is None:
            raise PresentationSyntaxError("unexpected end of input")
        self.pos += 1
        return t

    def parse_word(self) -> Word:
        items: list[tuple[int, int]] = []
        while True:
            t = self.peek()
            if t is None or (t[0] == "punc" and t[1] in ",;)"):
                break
            items.extend(self.parse_item())
        if not items:
            raise PresentationSyntaxError("empty relator word")
        return tuple(items)

    def parse_item(self) -> Word:
        kind, value, lineno = self.take()
        if kind == "name":
            base: Word = ((self._gen(value, lineno), 1),)
        elif kind == "punc" and value == "(":
            base = self.parse_word()
            t = self.take()
            if t[:2] != ("punc", ")"):
                raise PresentationSyntaxError(f"line {t[2]}: expected ')'")
        else:
            raise PresentationSyntaxError(f"line {lineno}: expected generator or '(', got {value!r}")
        t = self.peek()
        if t is not None and t[0] == "pow":
            self.take()
            return _power(base, int(t[1][1:]))
        return base

    def _gen(self, name: str, lineno: int) -> int:
        if name not in self.gen_index:
            raise PresentationSyntaxError(f"line {lineno}: unknown generator {name!r}")
        return self.gen_index[name]


def parse_presentation(text: str) -> FinitePresentation:
    tokens = _tokenize_presentation(text)
    parser = _WordParser(tokens, {})
    t = parser.take()
    if t[:2] != ("name", "gens"):
        raise PresentationSyntaxError("file must start with 'gens:'")
    t = parser.take()
    if t[:2] != ("punc", ":"):
        raise PresentationSyntaxError("expected ':' after 'gens'")
    gens: list[str] = []
    while True:
        t = parser.take()
        if t[:2] == ("punc", ";"):
            break
        if t[0] != "name":
            raise PresentationSyntaxError(f"line {t[2]}: expected generator name, got {t[1]!r}")
        gens.append(t[1])
    if not gens:
        raise PresentationSyntaxError("no generators declared")
    parser.gen_index = {g: i for i, g in enumerate(gens)}
    t = parser.take()
    if t[:2] != ("name", "rels"):
        raise PresentationSyntaxError("expected 'rels:' after generator list")
    t = parser.take()
    if t[:2] != ("punc", ":"):
        raise PresentationSyntaxError("expected ':' after 'rels'")
    rels = [parser.parse_word()]
    while parser.peek() is not None:
        t = parser.take()
        if t[:2] != ("punc", ","):
            raise PresentationSyntaxError(f"line {t[2]}: expected ',' between relators")
        rels.append(parser.parse_word())
    return FinitePresentation(tuple(gens), tuple(rels))


def format_presentation(pres: FinitePresentation) -> str:
    rels = ", ".join(pres.word_str(w).replace(" ", " ") for w in pres.relators)
    return f"gens: {' '.join(pres.generators)}; rels: {rels}"
