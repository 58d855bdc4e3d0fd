"""Words in the generators of Z^n x| S_n: parsing, evaluation, closure.

The generator alphabet is fixed:

    s : transposition of points 1, 2 (no translation)
    t : the cycle sending v to v - 1 (and 1 to n), no translation
    g : unit translation of the last coordinate, identity permutation
    a : the product g . t
    b : alias of s

A word is a normalized sequence of (symbol, exponent) letters.  The text
grammar is whitespace-separated terms, where a term is a symbol or a
parenthesized word, optionally raised to a nonzero integer power:

    word := term*       term := SYMBOL ['^' INT] | '(' word ')' ['^' INT]

Relation presets and derived identities are verified by evaluating words
in the concrete group; a report saying "holds" certifies only that the
named words evaluate to the identity, not that any relation set presents
the group.
"""

from __future__ import annotations

import math
import random
import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Sequence

from . import limits
from .semidirect import (
    SemiElement,
    identity_perm,
    semi_identity,
    semi_inverse,
    semi_multiply,
    semi_power,
)

Letter = tuple[str, int]
Word = tuple[Letter, ...]

SYMBOLS = ("s", "t", "g", "a", "b")


class WordSyntaxError(ValueError):
    """Malformed word text; `position` is the 0-based offending offset."""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (position {position})")


def normalize_word(letters: Iterable[Letter]) -> Word:
    """Merge adjacent equal symbols, dropping letters that cancel to zero."""
    out: list[Letter] = []
    for sym, exp in letters:
        if sym not in SYMBOLS:
            raise ValueError(f"unknown symbol {sym!r}")
        exp = int(exp)
        if exp == 0:
            continue
        if out and out[-1][0] == sym:
            merged = out[-1][1] + exp
            out.pop()
            if merged:
                out.append((sym, merged))
        else:
            out.append((sym, exp))
    return tuple(out)


def letter(sym: str, exp: int = 1) -> Word:
    return normalize_word([(sym, exp)])


def word_concat(*words: Word) -> Word:
    return normalize_word(l for w in words for l in w)


def word_inverse(word: Word) -> Word:
    return tuple((sym, -exp) for sym, exp in reversed(word))


def word_power(word: Word, k: int) -> Word:
    if k == 0:
        return ()
    if k < 0:
        return word_power(word_inverse(word), -k)
    return normalize_word(l for _ in range(k) for l in word)


def render_word(word: Word) -> str:
    """Inverse of parse_word on normalized words; empty word renders ''. """
    return " ".join(sym if exp == 1 else f"{sym}^{exp}" for sym, exp in word)


_TOKEN = re.compile(r"\s*(?:(?P<lpar>\()|(?P<rpar>\))|(?P<hat>\^)"
                    r"|(?P<int>-?\d+)|(?P<sym>[stgab]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i = 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if m is None:
            stripped = text[i:].lstrip()
            if not stripped:
                break
            raise WordSyntaxError(
                f"unexpected character {stripped[0]!r}",
                len(text) - len(stripped),
            )
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        i = m.end()
    return tokens


def parse_word(text: str) -> Word:
    """Parse the grammar above into a normalized word."""
    tokens = _tokenize(text)
    letters, i = _parse_sequence(tokens, 0, len(text), depth=0)
    return normalize_word(letters)


def _parse_sequence(tokens, i: int, text_len: int, depth: int):
    letters: list[Letter] = []
    while i < len(tokens):
        kind, value, pos = tokens[i]
        if kind == "rpar":
            if depth == 0:
                raise WordSyntaxError("unmatched ')'", pos)
            return letters, i
        if kind == "sym":
            exp, i = _parse_exponent(tokens, i + 1, text_len)
            letters.append((value, exp))
        elif kind == "lpar":
            inner, j = _parse_sequence(tokens, i + 1, text_len, depth + 1)
            if j >= len(tokens) or tokens[j][0] != "rpar":
                raise WordSyntaxError("missing ')'", text_len)
            if not inner:
                raise WordSyntaxError("empty parentheses", pos)
            exp, i = _parse_exponent(tokens, j + 1, text_len)
            if exp >= 0:
                letters.extend(l for _ in range(exp) for l in inner)
            else:
                inverse = [(sym, -e) for sym, e in reversed(inner)]
                letters.extend(l for _ in range(-exp) for l in inverse)
        else:
            raise WordSyntaxError(f"unexpected token {value!r}", pos)
    if depth != 0:
        raise WordSyntaxError("missing ')'", text_len)
    return letters, i


def _parse_exponent(tokens, i: int, text_len: int) -> tuple[int, int]:
    if i < len(tokens) and tokens[i][0] == "hat":
        if i + 1 >= len(tokens) or tokens[i + 1][0] != "int":
            pos = tokens[i][2]
            raise WordSyntaxError("'^' must be followed by an integer", pos)
        exp = int(tokens[i + 1][1])
        if exp == 0:
            raise WordSyntaxError("zero exponent", tokens[i + 1][2])
        return exp, i + 2
    return 1, i


def standard_generators(n: int) -> dict[str, SemiElement]:
    """The five named generators as concrete elements of Z^n x| S_n."""
    if n < 2:
        raise ValueError(f"generators need n >= 2, got {n}")
    zero = (0,) * n
    sigma = SemiElement(zero, (2, 1, *range(3, n + 1)))
    tau = SemiElement(zero, (n, *range(1, n)))
    gamma = SemiElement((*((0,) * (n - 1)), 1), identity_perm(n))
    a = semi_multiply(gamma, tau)
    return {"s": sigma, "t": tau, "g": gamma, "a": a, "b": sigma}


def eval_word(word: Word, n: int) -> SemiElement:
    """Left-to-right product of generator powers in Z^n x| S_n."""
    gens = standard_generators(n)
    acc = semi_identity(n)
    for sym, exp in word:
        acc = semi_multiply(acc, semi_power(gens[sym], exp))
    return acc


class Relation(NamedTuple):
    label: str
    word: Word


@dataclass(frozen=True)
class RelationPreset:
    name: str
    n: int
    relations: tuple[Relation, ...]


def _commutator(x: Word, y: Word) -> Word:
    return word_concat(x, y, word_inverse(x), word_inverse(y))


def _conjugate(by: Word, x: Word) -> Word:
    return word_concat(by, x, word_inverse(by))


def relation_preset(n: int, name: str) -> RelationPreset:
    """Relation families 'sn', 'three_gen', 'two_gen', stored as L R^-1 words."""
    key = name.replace("-", "_").lower()
    if key == "sn":
        return RelationPreset("sn", n, _sn_relations(n))
    if key == "three_gen":
        rels = _sn_relations(n) + _gamma_relations(n)
        return RelationPreset("three_gen", n, rels)
    if key == "two_gen":
        return RelationPreset("two_gen", n, _two_gen_relations(n))
    raise ValueError(f"unknown preset {name!r}")


def _sn_relations(n: int) -> tuple[Relation, ...]:
    if n < 4:
        raise ValueError(f"preset needs n >= 4, got {n}")
    s, t = letter("s"), letter("t")
    rels = [
        Relation("s^2", word_power(s, 2)),
        Relation("(s t s t^-1)^3",
                 word_power(word_concat(s, t, s, letter("t", -1)), 3)),
    ]
    for m in range(2, n - 1):
        rels.append(Relation(
            f"(s t^{m} s t^-{m})^2",
            word_power(word_concat(s, letter("t", m), s, letter("t", -m)), 2),
        ))
    rels.append(Relation(
        f"(s t)^{n - 1} t^-{n}",
        word_concat(word_power(word_concat(s, t), n - 1), letter("t", -n)),
    ))
    return tuple(rels)


def _gamma_relations(n: int) -> tuple[Relation, ...]:
    if n < 4:
        raise ValueError(f"preset needs n >= 4, got {n}")
    s, g = letter("s"), letter("g")
    rels = []
    for k in range(0, n - 2):
        conj = _conjugate(letter("t", k), s)
        text = f"t^{k} s t^-{k}" if k else "s"
        rels.append(Relation(
            f"g {text} ({text} g)^-1", _commutator(g, conj)))
    for l in range(1, n):
        conj = _conjugate(letter("t", l), g)
        text = f"t^{l} g t^-{l}"
        rels.append(Relation(
            f"g {text} ({text} g)^-1", _commutator(g, conj)))
    return tuple(rels)


def _two_gen_relations(n: int) -> tuple[Relation, ...]:
    if n < 2:
        raise ValueError(f"preset needs n >= 2, got {n}")
    a, b = letter("a"), letter("b")
    square = Relation("b^2", word_power(b, 2))
    if n == 2:
        return (
            square,
            Relation("b a^2 b a^-2",
                     word_concat(b, letter("a", 2), b, letter("a", -2))),
        )
    braid = Relation(
        "(b a b a^-1)^3",
        word_power(word_concat(b, a, b, letter("a", -1)), 3),
    )
    if n == 3:
        return (
            square,
            braid,
            Relation("b a^3 b a^-3",
                     word_concat(b, letter("a", 3), b, letter("a", -3))),
        )
    rels = [square, braid]
    for k in range(2, n - 1):
        rels.append(Relation(
            f"(b a^{k} b a^-{k})^2",
            word_power(word_concat(b, letter("a", k), b, letter("a", -k)), 2),
        ))
    rels.append(Relation(
        f"b a^{n} b a^-{n}",
        word_concat(b, letter("a", n), b, letter("a", -n)),
    ))
    return tuple(rels)


_RELATION_NOTE = (
    "each listed word evaluates to the identity for the concrete generators; "
    "this does not certify that the relation set presents the group"
)


@dataclass(frozen=True)
class RelationCheck:
    label: str
    holds: bool
    value: SemiElement


@dataclass(frozen=True)
class RelationReport:
    preset: str
    n: int
    note: str
    checks: tuple[RelationCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.holds for c in self.checks)


def verify_relations(preset: RelationPreset) -> RelationReport:
    ident = semi_identity(preset.n)
    checks = tuple(
        RelationCheck(rel.label, eval_word(rel.word, preset.n) == ident,
                      eval_word(rel.word, preset.n))
        for rel in preset.relations
    )
    return RelationReport(preset.name, preset.n, _RELATION_NOTE, checks)


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    instance: str
    holds: bool
    lhs: SemiElement
    rhs: SemiElement


@dataclass(frozen=True)
class IdentityReport:
    n: int
    checks: tuple[IdentityCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.holds for c in self.checks)


def verify_derived_identities(n: int, seed: int = 0, draws: int = 4) -> IdentityReport:
    """Evaluate both sides of the derived word identities and compare.

    For n in {2, 3} only the first two families apply; from n = 4 on the
    full list is checked.  Commutation exponents are drawn from [-5, 5]
    deterministically from `seed`.
    """
    if n < 2:
        raise ValueError(f"identities need n >= 2, got {n}")
    checks: list[IdentityCheck] = []

    def compare(name: str, instance: str, lhs: Word, rhs: Word) -> None:
        left, right = eval_word(lhs, n), eval_word(rhs, n)
        checks.append(IdentityCheck(name, instance, left == right, left, right))

    s, t, g, a, b = (letter(x) for x in SYMBOLS)

    for i in range(1, n):
        swap = tuple(
            i + 1 if v == i else i if v == i + 1 else v for v in range(1, n + 1)
        )
        lhs = word_concat(letter("t", i - 1), s, letter("t", 1 - i))
        left = eval_word(lhs, n)
        right = SemiElement((0,) * n, swap)
        checks.append(IdentityCheck(
            "adjacent_swap_conjugate", f"i={i}", left == right, left, right))

    compare("cycle_order", f"t^{n}", word_power(t, n), ())

    if n >= 4:
        compare(
            "cycle_from_two_generators", "t",
            t,
            word_concat(letter("a", -1), word_power(word_concat(b, a), n - 2),
                        b, letter("a", 3 - n)),
        )
        compare(
            "translation_from_two_generators", "g",
            g,
            word_concat(letter("a", n - 2), b,
                        word_power(word_concat(letter("a", -1), b), n - 2), a),
        )
        compare("power_swap", f"a^{n} b = b a^{n}",
                word_concat(letter("a", n), b), word_concat(b, letter("a", n)))
        for k in range(2, n - 1):
            compare(
                "prefix_rewrite", f"k={k}",
                word_concat(word_power(word_concat(letter("a", -1), b), n - k),
                            letter("a", n - k), b, letter("a", -1)),
                word_concat(letter("a", -1), b, a, b, letter("a", -2), b,
                            word_power(word_concat(letter("a", -1), b), n - k - 2),
                            letter("a", n - k - 1)),
            )
        rng = random.Random(seed)
        for _ in range(draws):
            alpha = rng.randint(-5, 5)
            beta = rng.randint(-5, 5)
            ga, gb = letter("g", alpha), letter("g", beta)
            for l in range(1, n):
                conj = _conjugate(letter("t", l), gb)
                compare(
                    "commutation_with_powers",
                    f"g^{alpha} t^{l} g^{beta} t^-{l}",
                    word_concat(ga, conj), word_concat(conj, ga),
                )
            for k in range(0, n - 2):
                conj = _conjugate(letter("t", k), s)
                compare(
                    "commutation_with_powers",
                    f"g^{alpha} t^{k} s t^-{k}",
                    word_concat(ga, conj), word_concat(conj, ga),
                )
    return IdentityReport(n, tuple(checks))


def _ext_gcd(x: int, y: int) -> tuple[int, int, int]:
    """(g, p, q) with p*x + q*y = g > 0."""
    old_r, r = x, y
    old_p, p = 1, 0
    old_q, q = 0, 1
    while r:
        quot = old_r // r
        old_r, r = r, old_r - quot * r
        old_p, p = p, old_p - quot * p
        old_q, q = q, old_q - quot * q
    if old_r < 0:
        old_r, old_p, old_q = -old_r, -old_p, -old_q
    return old_r, old_p, old_q


class _IntLattice:
    """Row-echelon accumulator for an integer lattice in Z^n."""

    def __init__(self, n: int):
        self.n = n
        self._rows: dict[int, list[int]] = {}

    def add(self, vec: Sequence[int]) -> None:
        v = list(vec)
        for col in range(self.n):
            if v[col] == 0:
                continue
            row = self._rows.get(col)
            if row is None:
                if v[col] < 0:
                    v = [-x for x in v]
                self._rows[col] = v
                return
            a, c = row[col], v[col]
            if c % a == 0:
                quot = c // a
                v = [y - quot * x for x, y in zip(row, v)]
            else:
                gcd, p, q = _ext_gcd(a, c)
                new_row = [p * x + q * y for x, y in zip(row, v)]
                v = [(a // gcd) * y - (c // gcd) * x for x, y in zip(row, v)]
                self._rows[col] = new_row

    @property
    def rank(self) -> int:
        return len(self._rows)

    def spans_all(self) -> bool:
        """True when the accumulated rows generate all of Z^n."""
        if self.rank != self.n:
            return False
        index = 1
        for col, row in self._rows.items():
            index *= row[col]
        return abs(index) == 1


@dataclass(frozen=True)
class ClosureReport:
    n: int
    generator_count: int
    element_count: int
    closed: bool
    budget: int
    budget_exhausted: bool
    stopped_early: bool
    permutation_count: int
    permutations_complete: bool
    translation_count: int
    translation_rank: int
    translations_span_lattice: bool
    targets_reached: dict[str, bool]


def generated_closure(
    images: Sequence[SemiElement],
    budget: int = limits.MAX_CLOSURE_BUDGET,
    targets: Mapping[str, SemiElement] | None = None,
    stop_early: bool = False,
) -> ClosureReport:
    """Breadth-first closure of the identity under images and their inverses.

    Reports how much of S_n the permutation parts cover and the integer
    lattice spanned by the pure translations reached.  With stop_early the
    walk halts as soon as every target element has been seen and the pure
    translations already have full rank; exhausting the element budget is
    reported, not raised.
    """
    if not images:
        raise ValueError("need at least one generator image")
    if budget < 1:
        raise ValueError(f"budget must be positive, got {budget}")
    if budget > limits.MAX_CLOSURE_BUDGET:
        raise limits.BudgetExceededError(
            f"budget {budget} exceeds cap {limits.MAX_CLOSURE_BUDGET}")
    n = len(images[0].z)
    for img in images:
        if len(img.z) != n or len(img.s) != n:
            raise ValueError("generator images have mismatched sizes")

    gens: list[SemiElement] = []
    for img in images:
        for candidate in (img, semi_inverse(img)):
            if candidate not in gens:
                gens.append(candidate)

    ident = semi_identity(n)
    identity_perm_n = ident.s
    target_items = dict(targets or {})
    reached = {name: el == ident for name, el in target_items.items()}
    lattice = _IntLattice(n)
    translations: set = set()

    visited = {ident}
    queue = deque([ident])
    perms = {ident.s}
    budget_exhausted = False
    stopped_early = False

    def goal_met() -> bool:
        return (
            stop_early
            and bool(target_items)
            and all(reached.values())
            and lattice.rank == n
        )

    while queue and not budget_exhausted and not stopped_early:
        z, s = queue.popleft()
        for k, r in gens:
            nz = tuple(z[i] + k[s[i] - 1] for i in range(n))
            ns = tuple(r[s[i] - 1] for i in range(n))
            h = SemiElement(nz, ns)
            if h in visited:
                continue
            if len(visited) >= budget:
                budget_exhausted = True
                break
            visited.add(h)
            queue.append(h)
            perms.add(ns)
            if ns == identity_perm_n and any(nz):
                translations.add(nz)
                lattice.add(nz)
            for name, el in target_items.items():
                if not reached[name] and h == el:
                    reached[name] = True
            if goal_met():
                stopped_early = True
                break

    return ClosureReport(
        n=n,
        generator_count=len(images),
        element_count=len(visited),
        closed=not queue and not budget_exhausted and not stopped_early,
        budget=budget,
        budget_exhausted=budget_exhausted,
        stopped_early=stopped_early,
        permutation_count=len(perms),
        permutations_complete=len(perms) == math.factorial(n),
        translation_count=len(translations),
        translation_rank=lattice.rank,
        translations_span_lattice=lattice.spans_all(),
        targets_reached=reached,
    )
