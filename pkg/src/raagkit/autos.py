"""Automorphisms of A_Gamma: Laurence-Servatius generators, Torelli data, Johnson filtration.

Automorphisms act on the left.  ``a * b`` (or :func:`compose`) applies ``b``
first and then ``a``, so the abelianisation map is multiplicative with
column ``i`` of the matrix holding the abelianised image of ``v_i``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

from . import linalg
from .graph import Graph
from .magnus import AtLeast, l2_basis, l2_coordinates, magnus
from .words import GroupElement, commutator


class ConstraintViolation(ValueError):
    pass


class MissingWord(ValueError):
    pass


class NotTorelli(ValueError):
    pass


# ---------------------------------------------------------------------------
# Generators


@dataclass(frozen=True)
class Symmetry:
    perm: tuple[int, ...]  # v_i -> v_perm[i]


@dataclass(frozen=True)
class Inversion:
    i: int


@dataclass(frozen=True)
class PartialConj:
    """Conjugate one component of Gamma - st(v_j) by v_j."""

    j: int
    component: frozenset[int]


@dataclass(frozen=True)
class ExtendedPartialConj:
    j: int
    components: tuple[frozenset[int], ...]


@dataclass(frozen=True)
class Transvection:
    """v_i -> v_i v_j."""

    i: int
    j: int


@dataclass(frozen=True)
class Kijk:
    """v_i -> v_i [v_j, v_k]."""

    i: int
    j: int
    k: int


Generator = Union[Symmetry, Inversion, PartialConj, ExtendedPartialConj, Transvection, Kijk]


def _fail(msg):
    raise ConstraintViolation(msg)


def _fmt_set(graph, s):
    return "{" + ",".join(graph.label(v) for v in sorted(s)) + "}"


def validate(graph: Graph, gen: Generator) -> Generator:
    """Check the defining constraints of ``gen`` on ``graph``; return it unchanged."""
    n = graph.n

    def vert(*vs):
        for v in vs:
            if not (isinstance(v, int) and 0 <= v < n):
                _fail(f"vertex index {v!r} out of range")

    if isinstance(gen, Symmetry):
        p = gen.perm
        if sorted(p) != list(range(n)):
            _fail(f"{p} is not a permutation of the vertices")
        for a, b in graph.edges:
            if not graph.adjacent(p[a], p[b]):
                _fail(f"permutation does not preserve edge {graph.label(a)}-{graph.label(b)}")
    elif isinstance(gen, Inversion):
        vert(gen.i)
    elif isinstance(gen, (PartialConj, ExtendedPartialConj)):
        vert(gen.j)
        comps = [gen.component] if isinstance(gen, PartialConj) else list(gen.components)
        if not comps:
            _fail("extended partial conjugation needs at least one component")
        allowed = graph.components_minus_star(gen.j)
        for c in comps:
            if c not in allowed:
                _fail(
                    f"{_fmt_set(graph, c)} is not a connected component of "
                    f"Gamma - st({graph.label(gen.j)})"
                )
        if len(set(comps)) != len(comps):
            _fail("components of an extended partial conjugation must be distinct")
    elif isinstance(gen, Transvection):
        vert(gen.i, gen.j)
        if gen.i == gen.j:
            _fail("transvection needs i != j")
        if not graph.link(gen.i) <= graph.star(gen.j):
            _fail(
                f"lk({graph.label(gen.i)})={_fmt_set(graph, graph.link(gen.i))} is not contained "
                f"in st({graph.label(gen.j)})={_fmt_set(graph, graph.star(gen.j))}"
            )
    elif isinstance(gen, Kijk):
        i, j, k = gen.i, gen.j, gen.k
        vert(i, j, k)
        if len({i, j, k}) != 3:
            _fail("K_ijk needs distinct i, j, k")
        if not (graph.dominates(i, j) and graph.dominates(i, k)):
            _fail(f"K_ijk needs {graph.label(i)} <= {graph.label(j)} and {graph.label(i)} <= {graph.label(k)}")
        if graph.adjacent(j, k):
            _fail(f"K_ijk needs {graph.label(j)} and {graph.label(k)} non-adjacent")
    else:
        raise TypeError(f"not a generator: {gen!r}")
    return gen


def partial_conjugation(graph: Graph, i, j) -> PartialConj:
    """K_ij: the component of Gamma - st(v_j) containing v_i, conjugated by v_j."""
    i, j = graph.vertex(i), graph.vertex(j)
    if i in graph.star(j):
        _fail(f"{graph.label(i)} lies in st({graph.label(j)}); K_ij is undefined")
    comp = next(c for c in graph.components_minus_star(j) if i in c)
    return PartialConj(j, comp)


def conjugated_set(gen) -> frozenset[int]:
    if isinstance(gen, PartialConj):
        return gen.component
    return frozenset().union(*gen.components)


def generator_images(graph: Graph, gen: Generator, exponent: int = 1) -> tuple[GroupElement, ...]:
    gens = [GroupElement.generator(graph, v) for v in graph.vertices]
    inv = exponent < 0
    if isinstance(gen, Symmetry):
        p = gen.perm
        if inv:
            q = [0] * len(p)
            for a, b in enumerate(p):
                q[b] = a
            p = q
        return tuple(gens[p[v]] for v in graph.vertices)
    if isinstance(gen, Inversion):
        return tuple(g.inverse() if v == gen.i else g for v, g in enumerate(gens))
    if isinstance(gen, (PartialConj, ExtendedPartialConj)):
        c = gens[gen.j].inverse() if inv else gens[gen.j]
        moved = conjugated_set(gen)
        return tuple(c * g * c.inverse() if v in moved else g for v, g in enumerate(gens))
    if isinstance(gen, Transvection):
        t = gens[gen.j].inverse() if inv else gens[gen.j]
        return tuple(g * t if v == gen.i else g for v, g in enumerate(gens))
    if isinstance(gen, Kijk):
        j, k = (gen.k, gen.j) if inv else (gen.j, gen.k)
        c = commutator(gens[j], gens[k])
        return tuple(g * c if v == gen.i else g for v, g in enumerate(gens))
    raise TypeError(f"not a generator: {gen!r}")


def generator_name(graph: Graph, gen: Generator) -> str:
    """Conventional name such as ``K13``, ``rho12`` or ``s1``.

    Vertices labelled ``v<k>`` are written as ``k``; other labels verbatim.
    """
    num = lambda v: _short_label(graph.label(v))
    if isinstance(gen, Symmetry):
        return "sym" + format_cycles(gen.perm, num)
    if isinstance(gen, Inversion):
        return "s" + num(gen.i)
    if isinstance(gen, PartialConj):
        # name by the component vertex cyclically preceding the conjugator
        below = [v for v in gen.component if v < gen.j]
        i = max(below) if below else max(gen.component)
        return "K" + num(i) + num(gen.j)
    if isinstance(gen, ExtendedPartialConj):
        return "K" + "".join("{" + ",".join(num(v) for v in sorted(c)) + "}" for c in gen.components) + num(gen.j)
    if isinstance(gen, Transvection):
        return "rho" + num(gen.i) + num(gen.j)
    if isinstance(gen, Kijk):
        return "K" + num(gen.i) + num(gen.j) + num(gen.k)
    raise TypeError(gen)


def _short_label(label: str) -> str:
    return label[1:] if label[:1] == "v" and label[1:].isdigit() else label


# -- text syntax -----------------------------------------------------------


def format_cycles(perm: Sequence[int], num=lambda v: str(v + 1)) -> str:
    seen, out = set(), []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc, v = [], start
        while v not in seen:
            seen.add(v)
            cyc.append(num(v))
            v = perm[v]
        out.append("(" + " ".join(cyc) + ")")
    return "".join(out) or "()"


def format_generator(gen: Generator, graph: Optional[Graph] = None) -> str:
    """Text syntax; vertices are 1-based numbers, or labels when ``graph`` is given."""
    num = (lambda v: str(v + 1)) if graph is None else graph.label
    if isinstance(gen, Symmetry):
        return "sym:" + format_cycles(gen.perm, num)
    if isinstance(gen, Inversion):
        return f"inv:{num(gen.i)}"
    if isinstance(gen, PartialConj):
        return f"pc:{num(gen.j)}/{{{','.join(num(v) for v in sorted(gen.component))}}}"
    if isinstance(gen, ExtendedPartialConj):
        comps = "/".join("{" + ",".join(num(v) for v in sorted(c)) + "}" for c in gen.components)
        return f"pc:{num(gen.j)}/{comps}"
    if isinstance(gen, Transvection):
        return f"tv:{num(gen.i)},{num(gen.j)}"
    if isinstance(gen, Kijk):
        return f"kijk:{num(gen.i)},{num(gen.j)},{num(gen.k)}"
    raise TypeError(gen)


def _vertex_token(graph: Graph, tok: str) -> int:
    tok = tok.strip()
    if tok in graph.labels:
        return graph.vertex(tok)
    if tok.isdigit() and 1 <= int(tok) <= graph.n:
        return int(tok) - 1
    raise ConstraintViolation(f"unknown vertex {tok!r}")


def parse_generator(graph: Graph, text: str) -> tuple[Generator, int]:
    """Parse ``kind:args`` with an optional ``^-1`` suffix; returns (generator, exponent)."""
    text = text.strip()
    exponent = 1
    if text.endswith("^-1"):
        text, exponent = text[:-3], -1
    kind, _, args = text.partition(":")
    kind = kind.strip()
    if kind == "sym":
        perm = list(range(graph.n))
        for cyc in re.findall(r"\(([^)]*)\)", args):
            vs = [_vertex_token(graph, t) for t in cyc.replace(",", " ").split()]
            for a, b in zip(vs, vs[1:] + vs[:1]):
                perm[a] = b
        gen = Symmetry(tuple(perm))
    elif kind == "inv":
        gen = Inversion(_vertex_token(graph, args))
    elif kind == "pc":
        if "/" in args:
            head, *sets = args.split("/")
            j = _vertex_token(graph, head)
            comps = []
            for s in sets:
                body = s.strip()
                if not (body.startswith("{") and body.endswith("}")):
                    raise ConstraintViolation(f"bad component {s!r}")
                comps.append(frozenset(_vertex_token(graph, t) for t in body[1:-1].split(",") if t.strip()))
            gen = PartialConj(j, comps[0]) if len(comps) == 1 else ExtendedPartialConj(j, tuple(sorted(comps, key=min)))
        else:
            i, j = (_vertex_token(graph, t) for t in args.split(","))
            gen = partial_conjugation(graph, i, j)
    elif kind == "tv":
        i, j = (_vertex_token(graph, t) for t in args.split(","))
        gen = Transvection(i, j)
    elif kind == "kijk":
        i, j, k = (_vertex_token(graph, t) for t in args.split(","))
        gen = Kijk(i, j, k)
    else:
        raise ConstraintViolation(f"unknown generator kind {kind!r}")
    return validate(graph, gen), exponent


_SPLIT = re.compile(r",\s*(?=(?:sym|inv|pc|tv|kijk)\s*:)")


def parse_automorphism(graph: Graph, text: str) -> "Automorphism":
    """Comma-separated generator word, applied right to left."""
    parts = [p for p in _SPLIT.split(text.strip()) if p.strip()]
    out = Automorphism.identity(graph)
    for p in parts:
        gen, e = parse_generator(graph, p)
        out = out * Automorphism.from_generator(graph, gen, e)
    return out


# ---------------------------------------------------------------------------
# Automorphisms

Word = tuple[tuple[Generator, int], ...]


class Automorphism:
    """Vertex image table, with an optional generator word (applied right to left)."""

    def __init__(self, graph: Graph, images: Sequence[GroupElement], word: Optional[Iterable] = None, *, check=True):
        self.graph = graph
        self.images = tuple(images)
        self.word: Optional[Word] = tuple(word) if word is not None else None
        if check:
            self._check()

    def _check(self):
        g = self.graph
        if len(self.images) != g.n or any(x.graph != g for x in self.images):
            raise ConstraintViolation("image table does not match the graph")
        for a, b in g.edges:
            if not commutator(self.images[a], self.images[b]).is_identity():
                raise ConstraintViolation(
                    f"images of {g.label(a)} and {g.label(b)} do not commute; not an endomorphism"
                )
        if abs(linalg.det(self.matrix)) != 1:
            raise ConstraintViolation("abelianisation matrix is not invertible over the integers")

    @classmethod
    def identity(cls, graph):
        return cls(graph, [GroupElement.generator(graph, v) for v in graph.vertices], (), check=False)

    @classmethod
    def from_generator(cls, graph, gen: Generator, exponent: int = 1):
        validate(graph, gen)
        return cls(graph, generator_images(graph, gen, exponent), ((gen, exponent),), check=False)

    @classmethod
    def from_word(cls, graph, word: Iterable[tuple[Generator, int]]):
        out = cls.identity(graph)
        for gen, e in word:
            out = out * cls.from_generator(graph, gen, e)
        return out

    # -- action -------------------------------------------------------------

    def apply(self, g: GroupElement) -> GroupElement:
        if g.graph != self.graph:
            raise ConstraintViolation("element and automorphism live over different graphs")
        letters = []
        for v, s in g.word:
            img = self.images[v]
            letters.extend(img.word if s > 0 else [(u, -t) for u, t in reversed(img.word)])
        return GroupElement(self.graph, letters)

    __call__ = apply

    def __mul__(self, other: "Automorphism") -> "Automorphism":
        if not isinstance(other, Automorphism):
            return NotImplemented
        if other.graph != self.graph:
            raise ConstraintViolation("automorphisms live over different graphs")
        word = self.word + other.word if self.word is not None and other.word is not None else None
        return Automorphism(self.graph, [self.apply(x) for x in other.images], word, check=False)

    def inverse(self) -> "Automorphism":
        if self.word is None:
            raise MissingWord("inversion needs a recorded generator word")
        return Automorphism.from_word(self.graph, [(g, -e) for g, e in reversed(self.word)])

    def __eq__(self, other):
        if not isinstance(other, Automorphism):
            return NotImplemented
        return self.graph == other.graph and self.images == other.images

    def __hash__(self):
        return hash((self.graph, self.images))

    def is_identity(self) -> bool:
        return all(img.word == ((v, 1),) for v, img in enumerate(self.images))

    # -- abelianisation -----------------------------------------------------

    @cached_property
    def matrix(self) -> linalg.Matrix:
        cols = [img.exponent_sums() for img in self.images]
        return tuple(tuple(cols[c][r] for c in range(self.graph.n)) for r in range(self.graph.n))

    def is_torelli(self) -> bool:
        return self.matrix == linalg.identity(self.graph.n)

    def table(self) -> dict[str, str]:
        return {self.graph.label(v): str(img) for v, img in enumerate(self.images)}

    def __repr__(self):
        body = ", ".join(f"{k} -> {v}" for k, v in self.table().items())
        return f"Automorphism({body})"


def make_generator(graph: Graph, spec) -> Automorphism:
    """Validated generator automorphism from a :class:`Generator` or its text syntax."""
    if isinstance(spec, str):
        gen, e = parse_generator(graph, spec)
        return Automorphism.from_generator(graph, gen, e)
    return Automorphism.from_generator(graph, spec)


def apply(a: Automorphism, g: GroupElement) -> GroupElement:
    return a.apply(g)


def compose(*autos: Automorphism) -> Automorphism:
    """``compose(a, b)`` applies ``b`` first."""
    out = autos[0]
    for a in autos[1:]:
        out = out * a
    return out


def invert_by_word(a: Automorphism) -> Automorphism:
    return a.inverse()


def abelianization_matrix(a: Automorphism) -> linalg.Matrix:
    return a.matrix


def is_torelli(a: Automorphism) -> bool:
    return a.is_torelli()


def inner(g: GroupElement) -> Automorphism:
    """Conjugation v -> g v g^-1, recorded as a word of extended partial conjugations."""
    graph = g.graph
    images = [g * GroupElement.generator(graph, v) * g.inverse() for v in graph.vertices]
    word = []
    for v, s in g.word:
        comps = tuple(graph.components_minus_star(v))
        if comps:
            gen = PartialConj(v, comps[0]) if len(comps) == 1 else ExtendedPartialConj(v, comps)
            word.append((gen, s))
    return Automorphism(graph, images, word, check=False)


# ---------------------------------------------------------------------------
# Generating sets


def enumerate_standard_generators(graph: Graph) -> list[Generator]:
    """Symmetries, inversions, partial conjugations and transvections, in that order."""
    gens: list[Generator] = [Symmetry(p) for p in graph.automorphisms()]
    gens += [Inversion(i) for i in graph.vertices]
    gens += enumerate_partial_conjugations(graph)
    gens += [
        Transvection(i, j) for i in graph.vertices for j in graph.vertices
        if i != j and graph.link(i) <= graph.star(j)
    ]
    return gens


def enumerate_partial_conjugations(graph: Graph) -> list[PartialConj]:
    return [PartialConj(j, c) for j in graph.vertices for c in graph.components_minus_star(j)]


def enumerate_torelli_generators(graph: Graph) -> list[Generator]:
    """Day's generating set: partial conjugations keyed by (j, component), then K_ijk with j < k."""
    gens: list[Generator] = list(enumerate_partial_conjugations(graph))
    for i in graph.vertices:
        for j in graph.vertices:
            for k in range(j + 1, graph.n):
                if len({i, j, k}) == 3 and not graph.adjacent(j, k) \
                        and graph.dominates(i, j) and graph.dominates(i, k):
                    gens.append(Kijk(i, j, k))
    return gens


def out0_generators(graph: Graph) -> list[Generator]:
    """Inversions, partial conjugations and transvections (no graph symmetries)."""
    return [g for g in enumerate_standard_generators(graph) if not isinstance(g, Symmetry)]


# ---------------------------------------------------------------------------
# First Johnson homomorphism


def tau1_formula(graph: Graph, gen: Generator) -> linalg.Matrix:
    """Closed-form tau_1 image: row ``l`` holds the L_2 coordinates of the image of v_l."""
    pairs = [p for p, _ in l2_basis(graph)]
    col = {p: c for c, p in enumerate(pairs)}
    rows = [[0] * len(pairs) for _ in graph.vertices]

    def put(l, a, b, coeff=1):
        # [v_a, v_b] = -[v_b, v_a]
        if a > b:
            a, b, coeff = b, a, -coeff
        rows[l][col[(a, b)]] += coeff

    if isinstance(gen, (PartialConj, ExtendedPartialConj)):
        for l in conjugated_set(gen):
            put(l, gen.j, l)
    elif isinstance(gen, Kijk):
        put(gen.i, gen.j, gen.k)
    else:
        raise TypeError(f"tau_1 closed form is only defined on Torelli generators, not {gen!r}")
    return tuple(tuple(r) for r in rows)


def tau1_magnus(a: Automorphism) -> linalg.Matrix:
    """tau_1 computed from Magnus coordinates of phi(v_l) v_l^-1."""
    if not a.is_torelli():
        raise NotTorelli("tau_1 is only defined on the Torelli subgroup")
    g = a.graph
    return tuple(
        l2_coordinates(a.images[v] * GroupElement.generator(g, v, -1)) for v in g.vertices
    )


def johnson_level(a: Automorphism, cap: int):
    """Largest ``c < cap`` with ``a`` in G_c but not G_{c+1}; ``AtLeast(cap)`` if ``a`` is in G_cap."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if not a.is_torelli():
        raise NotTorelli("Johnson level is only defined on the Torelli subgroup")
    g = a.graph
    moved = [a.images[v] * GroupElement.generator(g, v, -1) for v in g.vertices]
    moved = [w for w in moved if not w.is_identity()]
    for c in range(1, cap):
        # a in G_{c+1} iff every phi(v) v^-1 has vanishing Magnus part in degree c + 1
        if any(not magnus(w, c + 1).part(c + 1).is_zero() for w in moved):
            return c
    return AtLeast(cap)


@dataclass(frozen=True)
class H1Report:
    generators: int
    rank: int
    ambient: int

    def as_tuple(self):
        return (self.generators, self.rank, self.ambient)


def tau1_stack(graph: Graph, gens=None, *, via="formula") -> list[tuple[int, ...]]:
    gens = enumerate_torelli_generators(graph) if gens is None else gens
    rows = []
    for gen in gens:
        m = tau1_formula(graph, gen) if via == "formula" else tau1_magnus(Automorphism.from_generator(graph, gen))
        rows.append(tuple(x for row in m for x in row))
    return rows


def torelli_h1_report(graph: Graph) -> H1Report:
    gens = enumerate_torelli_generators(graph)
    rows = tau1_stack(graph, gens)
    ambient = graph.n * len(l2_basis(graph))
    return H1Report(len(gens), linalg.rank(rows) if rows else 0, ambient)


# ---------------------------------------------------------------------------
# Symmetry conjugation


def conjugate_by_symmetry(sym: Generator, gen: Generator) -> Generator:
    """alpha gen alpha^-1 for a graph symmetry alpha with permutation sigma."""
    if not isinstance(sym, Symmetry):
        raise TypeError("conjugating element must be a graph symmetry")
    s = sym.perm
    img = lambda vs: frozenset(s[v] for v in vs)
    if isinstance(gen, Symmetry):
        inv = [0] * len(s)
        for a, b in enumerate(s):
            inv[b] = a
        return Symmetry(tuple(s[gen.perm[inv[v]]] for v in range(len(s))))
    if isinstance(gen, Inversion):
        return Inversion(s[gen.i])
    if isinstance(gen, PartialConj):
        return PartialConj(s[gen.j], img(gen.component))
    if isinstance(gen, ExtendedPartialConj):
        return ExtendedPartialConj(s[gen.j], tuple(sorted((img(c) for c in gen.components), key=min)))
    if isinstance(gen, Transvection):
        return Transvection(s[gen.i], s[gen.j])
    if isinstance(gen, Kijk):
        return Kijk(s[gen.i], s[gen.j], s[gen.k])
    raise TypeError(gen)
