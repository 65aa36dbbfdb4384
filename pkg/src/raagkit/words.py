"""Elements of a right-angled Artin group as canonical reduced words.

A letter is a pair ``(vertex, sign)`` with sign ``+1`` or ``-1``.  Every
:class:`GroupElement` stores the lexicographically least reduced word of its
shuffle class, so equality of elements is equality of stored words.
"""
from __future__ import annotations

import re
from typing import Iterable, Sequence

from .graph import Graph, GraphError

Letter = tuple[int, int]


class WordError(ValueError):
    pass


def letter_key(letter: Letter) -> tuple[int, int]:
    v, s = letter
    return (v, 0 if s > 0 else 1)


def cancel(graph: Graph, word: Sequence[Letter]) -> list[Letter]:
    """Delete pairs ``v^e w v^-e`` with every letter of ``w`` commuting with ``v``, to a fixpoint."""
    stars = graph._stars
    out: list[Letter] = []
    for v, s in word:
        # scan back through letters commuting with v for an inverse partner
        star = stars[v]
        hit = -1
        for p in range(len(out) - 1, -1, -1):
            u, t = out[p]
            if u == v:
                if t == -s:
                    hit = p
                break
            if u not in star:
                break
        if hit >= 0:
            del out[hit]
        else:
            out.append((v, s))
    return out


def lex_least(graph: Graph, word: Sequence) -> list:
    """Lexicographically least word in the commutation class of ``word``.

    Letters may be ``(vertex, sign)`` pairs or bare vertex indices.
    """
    rest = list(word)
    if not rest:
        return []
    tupled = isinstance(rest[0], tuple)
    verts = [x[0] for x in rest] if tupled else rest
    keys = [letter_key(x) for x in rest] if tupled else rest
    stars = graph._stars
    n = len(rest)
    # blockers[p]: earlier letters that do not commute with letter p
    blockers = [0] * n
    for p in range(n):
        star = stars[verts[p]]
        blockers[p] = sum(1 for q in range(p) if verts[q] not in star)
    alive = list(range(n))
    out = []
    while alive:
        best = None
        for p in alive:
            if blockers[p] == 0 and (best is None or keys[p] < keys[best]):
                best = p
        alive.remove(best)
        out.append(rest[best])
        star = stars[verts[best]]
        for q in alive:
            if q > best and verts[q] not in star:
                blockers[q] -= 1
    return out


def normal_form(graph: Graph, word: Iterable[Letter]) -> tuple[Letter, ...]:
    word = list(word)
    n = graph.n
    for v, s in word:
        if not (type(v) is int and 0 <= v < n) or s not in (1, -1):
            raise WordError(f"invalid letter {(v, s)!r}")
    return tuple(lex_least(graph, cancel(graph, word)))


class GroupElement:
    """An element of A_Gamma held as its canonical word."""

    __slots__ = ("graph", "word", "_hash")

    def __init__(self, graph: Graph, word: Iterable[Letter] = (), *, canonical=False):
        self.graph = graph
        self.word = tuple(word) if canonical else normal_form(graph, word)
        self._hash = hash((graph, self.word))

    @classmethod
    def identity(cls, graph):
        return cls(graph, (), canonical=True)

    @classmethod
    def generator(cls, graph, v, sign=1):
        return cls(graph, ((graph.vertex(v), sign),), canonical=True)

    @classmethod
    def parse(cls, graph, text):
        return cls(graph, parse_word(graph, text))

    # -- group operations ---------------------------------------------------

    def _check(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        if other.graph != self.graph:
            raise WordError("elements live in different groups")
        return other

    def __mul__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return GroupElement(self.graph, self.word + other.word)

    def inverse(self) -> "GroupElement":
        # the reverse of a reduced word is reduced; only the shuffle needs redoing
        word = lex_least(self.graph, [(v, -s) for v, s in reversed(self.word)])
        return GroupElement(self.graph, word, canonical=True)

    def __pow__(self, k: int):
        base = self if k >= 0 else self.inverse()
        return GroupElement(self.graph, base.word * abs(k))

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.graph == other.graph and self.word == other.word

    def __hash__(self):
        return self._hash

    # -- measurements -------------------------------------------------------

    def __len__(self):
        return len(self.word)

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(v for v, _ in self.word)

    @property
    def is_positive(self) -> bool:
        return all(s > 0 for _, s in self.word)

    def is_identity(self) -> bool:
        return not self.word

    def measure(self) -> tuple[frozenset[int], int, bool]:
        return self.support, self.length, self.is_positive

    def exponent_sums(self) -> tuple[int, ...]:
        sums = [0] * self.graph.n
        for v, s in self.word:
            sums[v] += s
        return tuple(sums)

    def __str__(self):
        return format_word(self.graph, self.word)

    def __repr__(self):
        return f"GroupElement({self})"


def multiply(a: GroupElement, b: GroupElement) -> GroupElement:
    return a * b


def invert(a: GroupElement) -> GroupElement:
    return a.inverse()


def commutator(a: GroupElement, b: GroupElement) -> GroupElement:
    """``a b a^-1 b^-1``."""
    if a.graph != b.graph:
        raise WordError("elements live in different groups")
    inv = lambda w: [(v, -s) for v, s in reversed(w)]
    return GroupElement(a.graph, a.word + b.word + tuple(inv(a.word)) + tuple(inv(b.word)))


# ---------------------------------------------------------------------------
# text syntax: "v3 v1^-1 v2^2"

_TOKEN = re.compile(r"^([^\s^]+)(?:\^(-?\d+))?$")


def parse_word(graph: Graph, text: str) -> list[Letter]:
    letters = []
    for tok in text.split():
        if tok == "1":
            continue
        m = _TOKEN.match(tok)
        if not m:
            raise WordError(f"bad token {tok!r}")
        try:
            v = graph.vertex(m.group(1))
        except GraphError:
            raise WordError(f"bad token {tok!r}: unknown vertex") from None
        e = int(m.group(2)) if m.group(2) is not None else 1
        letters.extend([(v, 1 if e > 0 else -1)] * abs(e))
    return letters


def format_word(graph: Graph, word: Sequence[Letter]) -> str:
    if not word:
        return "1"
    return " ".join(graph.label(v) if s > 0 else f"{graph.label(v)}^-1" for v, s in word)
