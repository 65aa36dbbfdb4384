"""Truncated series in the enveloping algebra and the Magnus map.

Monomials are positive words in the vertices, stored lex-least in their
commutation class (so they are elements of the trace monoid).  A
:class:`Series` carries an explicit degree cap and coefficient modulus;
mixing caps or moduli is an error.
"""
from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Union

from .graph import Graph
from .words import GroupElement, Letter, commutator, lex_least

Monomial = tuple[int, ...]


class SeriesError(ValueError):
    pass


class NotInGamma2(ValueError):
    pass


class InternalInconsistency(AssertionError):
    pass


@lru_cache(maxsize=1 << 20)
def canonical_monomial(graph: Graph, mono: Monomial) -> Monomial:
    if len(mono) <= 1:
        return mono
    return tuple(lex_least(graph, mono))


@lru_cache(maxsize=1 << 20)
def _append(graph: Graph, mono: Monomial, v: int) -> Monomial:
    return canonical_monomial(graph, mono + (v,))


@lru_cache(maxsize=1 << 20)
def _concat(graph: Graph, m1: Monomial, m2: Monomial) -> Monomial:
    return canonical_monomial(graph, m1 + m2)


class Series:
    """Element of U(A_Gamma) modulo monomials of degree above ``cap``."""

    __slots__ = ("graph", "cap", "mod", "terms")

    def __init__(self, graph: Graph, cap: int, terms=None, mod: int = 0, *, canonical=False):
        if cap < 0 or mod < 0 or mod == 1:
            raise SeriesError(f"bad cap/modulus ({cap}, {mod})")
        self.graph = graph
        self.cap = cap
        self.mod = mod
        clean: dict[Monomial, int] = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) > cap:
                continue
            if not canonical:
                m = canonical_monomial(graph, m)
            clean[m] = clean.get(m, 0) + c
        self.terms = {m: c for m, c in clean.items() if self._red(c)} if not mod else {
            m: c % mod for m, c in clean.items() if c % mod
        }

    def _red(self, c):
        return c % self.mod if self.mod else c

    # -- constructors -------------------------------------------------------

    @classmethod
    def one(cls, graph, cap, mod=0):
        return cls(graph, cap, {(): 1}, mod, canonical=True)

    @classmethod
    def zero(cls, graph, cap, mod=0):
        return cls(graph, cap, {}, mod, canonical=True)

    @classmethod
    def monomial(cls, graph, mono: Iterable[int], cap, coeff=1, mod=0):
        return cls(graph, cap, {tuple(mono): coeff}, mod)

    @classmethod
    def vertex(cls, graph, v, cap, mod=0):
        return cls(graph, cap, {(graph.vertex(v),): 1}, mod, canonical=True)

    def _like(self, terms):
        return Series(self.graph, self.cap, terms, self.mod, canonical=True)

    def _compatible(self, other):
        if not isinstance(other, Series):
            raise SeriesError(f"cannot combine a series with {type(other).__name__}")
        if (self.graph, self.cap, self.mod) != (other.graph, other.cap, other.mod):
            raise SeriesError(
                f"series mismatch: cap {self.cap} vs {other.cap}, mod {self.mod} vs {other.mod}"
                + ("" if self.graph == other.graph else ", different graphs")
            )

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        self._compatible(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return self._like(out)

    def __neg__(self):
        return self._like({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self._like({m: c * other for m, c in self.terms.items()})
        return series_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return (self.graph, self.cap, self.mod, self.terms) == (other.graph, other.cap, other.mod, other.terms)

    def __hash__(self):
        return hash((self.graph, self.cap, self.mod, frozenset(self.terms.items())))

    def mul_vertex(self, v: int, *, left=False) -> "Series":
        """Multiply by the degree-one monomial ``v`` on the right (or left)."""
        out: dict[Monomial, int] = {}
        for m, c in self.terms.items():
            if len(m) < self.cap:
                k = _concat(self.graph, (v,), m) if left else _append(self.graph, m, v)
                out[k] = out.get(k, 0) + c
        return self._like(out)

    # -- structure ----------------------------------------------------------

    def part(self, d: int) -> "Series":
        """Homogeneous part of degree ``d``."""
        return self._like({m: c for m, c in self.terms.items() if len(m) == d})

    def degrees(self) -> list[int]:
        return sorted({len(m) for m in self.terms})

    def lowest_positive_degree(self):
        ds = [d for d in self.degrees() if d > 0]
        return ds[0] if ds else None

    def constant(self) -> int:
        return self.terms.get((), 0)

    def support(self) -> frozenset[int]:
        return frozenset(v for m in self.terms for v in m)

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(): 1}

    def truncate(self, cap: int) -> "Series":
        if cap > self.cap:
            raise SeriesError("cannot raise the degree cap of a truncated series")
        return Series(self.graph, cap, self.terms, self.mod, canonical=True)

    def reduce_mod(self, p: int) -> "Series":
        if self.mod and self.mod != p:
            raise SeriesError("series already carries a different modulus")
        return Series(self.graph, self.cap, self.terms, p, canonical=True)

    def bracket(self, other) -> "Series":
        return self * other - other * self

    # -- serialisation ------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: (len(mc[0]), mc[0]))

    def to_dict(self) -> dict:
        return {
            "cap": self.cap,
            "mod": self.mod,
            "terms": [
                {"monomial": format_monomial(self.graph, m), "coeff": c}
                for m, c in self.sorted_terms()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, graph, data):
        terms = {}
        for t in data["terms"]:
            m = parse_monomial(graph, t["monomial"])
            terms[m] = terms.get(m, 0) + int(t["coeff"])
        return cls(graph, int(data["cap"]), terms, int(data.get("mod", 0)))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            name = format_monomial(self.graph, m)
            if name == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(name)
            elif c == -1:
                parts.append("-" + name)
            else:
                parts.append(f"{c}*{name}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Series(cap={self.cap}, mod={self.mod}: {self})"


def format_monomial(graph: Graph, m: Monomial) -> str:
    return ".".join(graph.label(v) for v in m) if m else "1"


def parse_monomial(graph: Graph, text: str) -> Monomial:
    text = text.strip()
    if text in ("", "1"):
        return ()
    return canonical_monomial(graph, tuple(graph.vertex(x) for x in text.split(".")))


def series_mul(a: Series, b: Series) -> Series:
    a._compatible(b)
    cap, graph = a.cap, a.graph
    out: dict[Monomial, int] = {}
    for m1, c1 in a.terms.items():
        room = cap - len(m1)
        for m2, c2 in b.terms.items():
            if len(m2) <= room:
                k = _concat(graph, m1, m2)
                out[k] = out.get(k, 0) + c1 * c2
    return a._like(out)


def series_invert(a: Series) -> Series:
    """Inverse of a series with constant term 1, via c_j = -sum_{i<j} c_i a_{j-i}."""
    if a._red(a.constant() - 1) != 0:
        raise SeriesError("only series with constant term 1 are invertible here")
    parts = [a.part(d) for d in range(a.cap + 1)]
    inv = [Series.one(a.graph, a.cap, a.mod)]
    for j in range(1, a.cap + 1):
        acc = Series.zero(a.graph, a.cap, a.mod)
        for i in range(j):
            acc = acc + inv[i] * parts[j - i]
        inv.append(-acc)
    total = inv[0]
    for c in inv[1:]:
        total = total + c
    return total


# ---------------------------------------------------------------------------
# Magnus map


def magnus_word(graph: Graph, word: Iterable[Letter], cap: int, mod: int = 0) -> Series:
    """Magnus image of an arbitrary (not necessarily reduced) word."""
    terms: dict[Monomial, int] = {(): 1}
    for v, sign in word:
        out = dict(terms)
        for m, c in terms.items():
            # v -> 1 + v, and v^-1 -> 1 - v + v^2 - ...
            coeff, k = c, m
            for _ in range(cap - len(m)):
                k = _append(graph, k, v)
                coeff = coeff if sign > 0 else -coeff
                out[k] = out.get(k, 0) + coeff
                if sign > 0:
                    break
        terms = {m: c for m, c in out.items() if c}
        if mod:
            terms = {m: c % mod for m, c in terms.items() if c % mod}
    return Series(graph, cap, terms, mod, canonical=True)


def magnus(g: GroupElement, cap: int, mod: int = 0) -> Series:
    """Truncated image of ``g`` under v -> 1 + v."""
    if cap < 1:
        raise SeriesError("Magnus degree cap must be at least 1")
    return magnus_word(g.graph, g.word, cap, mod)


def lcs_membership(g: GroupElement, c: int) -> bool:
    """Is ``g`` in the ``c``-th term of the lower central series?"""
    if c < 1:
        raise ValueError("lower central series index starts at 1")
    if c == 1 or g.is_identity():
        return True
    return magnus(g, c - 1).is_one()


@dataclass(frozen=True)
class AtLeast:
    """Undetermined value known to be at least ``bound``."""

    bound: int

    def __str__(self):
        return f">={self.bound}"


Depth = Union[int, float, AtLeast]


def lcs_depth(g: GroupElement, cap: int | None = None) -> Depth:
    """Least ``d`` with a nonzero degree-``d`` Magnus term, i.e. g in gamma_d minus gamma_{d+1}.

    Returns ``math.inf`` for the identity and ``AtLeast(cap + 1)`` when no
    term of degree up to ``cap`` survives.
    """
    if g.is_identity():
        return math.inf
    if cap is None:
        cap = max(8, g.length)
    if cap < 1:
        raise ValueError("cap must be at least 1")
    for d in range(1, cap + 1):
        if not magnus(g, d).part(d).is_zero():
            return d
    return AtLeast(cap + 1)


def depth_to_json(d: Depth):
    if d == math.inf:
        return "inf"
    if isinstance(d, AtLeast):
        return str(d)
    return d


# ---------------------------------------------------------------------------
# The degree-two quotient


def l2_basis(graph: Graph) -> list[tuple[tuple[int, int], Series]]:
    """Non-adjacent pairs ``i < j`` with their images ``v_i v_j - v_j v_i``."""
    out = []
    for i in graph.vertices:
        for j in range(i + 1, graph.n):
            if not graph.adjacent(i, j):
                img = Series(graph, 2, {(i, j): 1, (j, i): -1}, canonical=True)
                out.append(((i, j), img))
    return out


def l2_pairs(graph: Graph) -> list[tuple[int, int]]:
    return [p for p, _ in l2_basis(graph)]


def l2_coordinates(g: GroupElement) -> tuple[int, ...]:
    """Coordinates of ``g * gamma_3`` in the commutator basis of L_2."""
    mu = magnus(g, 2)
    if not mu.part(1).is_zero():
        raise NotInGamma2(f"{g} is not in the commutator subgroup")
    basis = l2_basis(g.graph)
    coords = tuple(mu.terms.get(p, 0) for p, _ in basis)
    rebuilt = Series.zero(g.graph, 2)
    for c, (_, img) in zip(coords, basis):
        rebuilt = rebuilt + img * c
    if rebuilt != mu.part(2):
        raise InternalInconsistency(f"degree-2 part of mu({g}) is not in the span of the basis")
    return coords


# ---------------------------------------------------------------------------
# Brackets

Bracket = Union[int, tuple]


def bracket_weight(expr: Bracket) -> int:
    if isinstance(expr, tuple):
        left, right = expr
        return bracket_weight(left) + bracket_weight(right)
    return 1


def bracket_eval(graph: Graph, expr: Bracket, cap: int | None = None) -> tuple[GroupElement, Series]:
    """Evaluate a bracket as a group commutator and as a ring commutator."""
    k = bracket_weight(expr)
    cap = k if cap is None else cap
    if cap < k:
        raise SeriesError(f"cap {cap} is below the bracket weight {k}")

    def ev(e):
        if isinstance(e, tuple):
            (g1, r1), (g2, r2) = ev(e[0]), ev(e[1])
            return commutator(g1, g2), r1.bracket(r2)
        v = graph.vertex(e)
        return GroupElement.generator(graph, v), Series.vertex(graph, v, cap)

    return ev(expr)


def parse_bracket(graph: Graph, text: str) -> Bracket:
    tokens = re.findall(r"\[|\]|,|[^\s\[\],]+", text)
    pos = 0

    def expr():
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("unexpected end of bracket expression")
        tok = tokens[pos]
        pos += 1
        if tok == "[":
            left = expr()
            if tokens[pos:pos + 1] != [","]:
                raise ValueError("expected ',' in bracket")
            pos += 1
            right = expr()
            if tokens[pos:pos + 1] != ["]"]:
                raise ValueError("expected ']' in bracket")
            pos += 1
            return (left, right)
        return graph.vertex(tok)

    out = expr()
    if pos != len(tokens):
        raise ValueError(f"trailing input in bracket expression {text!r}")
    return out


# ---------------------------------------------------------------------------
# Centre probes


def centralizer_witness(a: Series, upto: int | None = None):
    """A vertex ``v`` whose bracket ``v a - a v`` is nonzero in degrees ``<= upto + 1``.

    Probes the vertices whose star misses the support of the lowest nonzero
    homogeneous part first, then the rest.  Returns ``None`` if all vanish.
    """
    if a.is_zero():
        raise SeriesError("zero series has no centralizer witness")
    if upto is None:
        upto = a.cap - 1
    if upto > a.cap - 1:
        raise SeriesError(f"upto={upto} needs a series cap of at least {upto + 1}")
    graph = a.graph
    low = min(a.degrees())
    supp = a.part(low).support()
    first = [v for v in graph.vertices if not supp <= graph.star(v)]
    rest = [v for v in graph.vertices if v not in first]
    for v in first + rest:
        b = a.mul_vertex(v, left=True) - a.mul_vertex(v)
        if any(len(m) <= upto + 1 for m in b.terms):
            return v
    return None
