"""Defining graphs of right-angled Artin groups and their combinatorics.

Vertices are identified by their index ``0..n-1``; labels are only used for
input and output.  Every derived structure here is immutable.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Malformed graph input or an unknown vertex."""

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column


class Graph:
    """A finite simple graph with labelled vertices."""

    def __init__(self, labels: Sequence[str], edges: Iterable[tuple[int, int]] = ()):
        labels = tuple(str(x) for x in labels)
        if len(set(labels)) != len(labels):
            raise GraphError("vertex labels must be unique")
        n = len(labels)
        nbrs = [set() for _ in range(n)]
        for a, b in edges:
            if not (0 <= a < n and 0 <= b < n):
                raise GraphError(f"edge ({a}, {b}) out of range")
            if a == b:
                raise GraphError(f"self-loop at {labels[a]}")
            nbrs[a].add(b)
            nbrs[b].add(a)
        self._labels = labels
        self._adj = tuple(frozenset(s) for s in nbrs)
        self._stars = tuple(a | {i} for i, a in enumerate(self._adj))
        self._index = {lab: i for i, lab in enumerate(labels)}
        self._hash = hash((labels, self._adj))

    # -- construction helpers -------------------------------------------

    @classmethod
    def from_labelled_edges(cls, labels, edges):
        index = {lab: i for i, lab in enumerate(labels)}
        out = []
        for a, b in edges:
            for x in (a, b):
                if x not in index:
                    raise GraphError(f"unknown vertex {x!r} in edge [{a!r}, {b!r}]")
            out.append((index[a], index[b]))
        return cls(labels, out)

    @classmethod
    def standard(cls, n, edges=()):
        """Graph on ``v1..vn``; ``edges`` uses 1-based vertex numbers."""
        return cls([f"v{i + 1}" for i in range(n)], [(a - 1, b - 1) for a, b in edges])

    @classmethod
    def cycle(cls, n):
        return cls.standard(n, [(i, i % n + 1) for i in range(1, n + 1)])

    @classmethod
    def complete(cls, n):
        return cls.standard(n, combinations(range(1, n + 1), 2))

    @classmethod
    def discrete(cls, n):
        return cls.standard(n)

    @classmethod
    def path(cls, n):
        return cls.standard(n, [(i, i + 1) for i in range(1, n)])

    # -- basic accessors --------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._labels)

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    @property
    def vertices(self) -> range:
        return range(self.n)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((a, b) for a in range(self.n) for b in sorted(self._adj[a]) if a < b)

    def label(self, v: int) -> str:
        return self._labels[v]

    def vertex(self, v) -> int:
        """Resolve an index or a label to a vertex index."""
        if isinstance(v, str):
            try:
                return self._index[v]
            except KeyError:
                raise GraphError(f"unknown vertex {v!r}") from None
        if isinstance(v, int) and 0 <= v < self.n:
            return v
        raise GraphError(f"unknown vertex {v!r}")

    def adjacent(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def commute(self, u: int, v: int) -> bool:
        """Generators commute iff they are equal or adjacent."""
        return v in self._stars[u]

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._labels == other._labels and self._adj == other._adj

    def __hash__(self):
        return self._hash

    def __repr__(self):
        edges = ", ".join(f"{self.label(a)}-{self.label(b)}" for a, b in self.edges)
        return f"Graph([{', '.join(self._labels)}]; {edges})"

    # -- links and stars --------------------------------------------------

    def link(self, v) -> frozenset[int]:
        return self._adj[self.vertex(v)]

    def star(self, v) -> frozenset[int]:
        v = self.vertex(v)
        return self._adj[v] | {v}

    def link_of_set(self, s) -> frozenset[int]:
        s = [self.vertex(v) for v in s]
        if not s:
            raise GraphError("link of an empty vertex set is undefined")
        return frozenset.intersection(*(self._adj[v] for v in s))

    def star_of_set(self, s) -> frozenset[int]:
        s = frozenset(self.vertex(v) for v in s)
        return s | self.link_of_set(s)

    # -- subgraphs and components ----------------------------------------

    def components_of(self, subset) -> list[frozenset[int]]:
        """Connected components of the induced subgraph on ``subset``, sorted by least vertex."""
        remaining = set(subset)
        comps = []
        while remaining:
            start = min(remaining)
            comp, stack = {start}, [start]
            while stack:
                u = stack.pop()
                for w in self._adj[u]:
                    if w in remaining and w not in comp:
                        comp.add(w)
                        stack.append(w)
            remaining -= comp
            comps.append(frozenset(comp))
        comps.sort(key=min)
        return comps

    def components(self) -> list[frozenset[int]]:
        return self.components_of(self.vertices)

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def components_minus_star(self, j) -> list[frozenset[int]]:
        j = self.vertex(j)
        return self.components_of(set(self.vertices) - self.star(j))

    def induced(self, subset) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph, plus the map new index -> old index."""
        keep = tuple(sorted(self.vertex(v) for v in subset))
        pos = {v: i for i, v in enumerate(keep)}
        edges = [(pos[a], pos[b]) for a, b in self.edges if a in pos and b in pos]
        return Graph([self._labels[v] for v in keep], edges), keep

    def is_clique(self, subset) -> bool:
        return all(self.adjacent(a, b) for a, b in combinations(subset, 2))

    def is_independent(self, subset) -> bool:
        return not any(self.adjacent(a, b) for a, b in combinations(subset, 2))

    # -- derived data ------------------------------------------------------

    def dominates(self, u: int, v: int) -> bool:
        """``u <= v`` in the domination preorder: lk(u) is contained in st(v)."""
        return self._adj[u] <= (self._adj[v] | {v})

    @cached_property
    def preorder(self) -> "PreorderAnalysis":
        return preorder_analysis(self)

    def center_vertices(self) -> frozenset[int]:
        return frozenset(v for v in self.vertices if len(self._adj[v]) == self.n - 1)

    def max_independent_set_size(self) -> int:
        return max_independent_set_size(self)

    def automorphisms(self) -> list[tuple[int, ...]]:
        return graph_automorphisms(self)

    def connected_decomposition(self) -> tuple[list["Graph"], int]:
        big = [c for c in self.components() if len(c) >= 2]
        isolated = sum(1 for v in self.vertices if not self._adj[v])
        return [self.induced(c)[0] for c in big], isolated

    # -- serialisation -----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "vertices": list(self._labels),
            "edges": [[self.label(a), self.label(b)] for a, b in self.edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_dot(self, name="G") -> str:
        # declare every vertex first so the vertex order survives a round trip
        lines = [f"graph {name} {{"]
        for v in self.vertices:
            lines.append(f"  {self.label(v)};")
        for a, b in self.edges:
            lines.append(f"  {self.label(a)} -- {self.label(b)};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _position(text, pos):
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def _locate(text, needle):
    pos = text.find(needle)
    if pos < 0:
        return None, None
    return _position(text, pos)


def graph_from_json(text: str) -> Graph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(data, dict) or "vertices" not in data:
        raise GraphError("graph JSON must be an object with a 'vertices' list")
    labels = [str(v) for v in data["vertices"]]
    known = set(labels)
    if len(known) != len(labels):
        raise GraphError("duplicate vertex label")
    edges = data.get("edges", [])
    for e in edges:
        if not isinstance(e, list) or len(e) != 2:
            raise GraphError(f"edge must be a pair, got {e!r}", *_locate(text, json.dumps(e)))
        for x in e:
            if str(x) not in known:
                raise GraphError(f"unknown vertex {x!r} in edge", *_locate(text, json.dumps(x)))
        if e[0] == e[1]:
            raise GraphError(f"self-loop at {e[0]!r}", *_locate(text, json.dumps(e[0])))
    return Graph.from_labelled_edges(labels, [(str(a), str(b)) for a, b in edges])


_DOT_HEADER = re.compile(r"^\s*(strict\s+)?graph\s*(\w+)?\s*\{", re.S)
_DOT_ID = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$|^-?\d+$")


def graph_from_dot(text: str) -> Graph:
    """Read an undirected DOT graph without attributes: ``a -- b -- c; d;``."""
    m = _DOT_HEADER.match(text)
    if not m:
        raise GraphError("expected 'graph NAME {'", 1, 1)
    close = text.rfind("}")
    if close < m.end():
        raise GraphError("missing closing brace", *_locate(text, text[-1:]))
    body_start = m.end()
    labels, edges = [], []
    seen = set()

    def add(v):
        if v not in seen:
            seen.add(v)
            labels.append(v)

    body = text[body_start:close]
    offset = body_start
    for stmt in re.split(r"[;\n]", body):
        here = offset
        offset += len(stmt) + 1
        s = stmt.strip()
        if not s or s.startswith("//") or s.startswith("#"):
            continue
        pos = here + stmt.find(s)
        if "->" in s or "[" in s or "=" in s:
            raise GraphError(f"unsupported DOT statement {s!r}", *_position(text, pos))
        parts = [p.strip() for p in s.split("--")]
        for p in parts:
            if not _DOT_ID.match(p):
                raise GraphError(f"bad vertex identifier {p!r}", *_position(text, pos))
            add(p)
        edges.extend(zip(parts, parts[1:]))
    for a, b in edges:
        if a == b:
            raise GraphError(f"self-loop at {a!r}")
    return Graph.from_labelled_edges(labels, edges)


def load_graph(path) -> Graph:
    with open(path) as fh:
        text = fh.read()
    if str(path).endswith((".dot", ".gv")) or _DOT_HEADER.match(text):
        return graph_from_dot(text)
    return graph_from_json(text)


# ---------------------------------------------------------------------------
# Domination preorder


@dataclass(frozen=True)
class PreorderAnalysis:
    """Domination preorder ``u <= v`` iff lk(u) is contained in st(v).

    ``classes`` lists the equivalence classes in an admissible order: if a
    vertex of class ``i`` is dominated by one of class ``j`` then ``i <= j``.
    ``boundaries`` are the 0-based start offsets of each class in
    ``enumeration`` followed by ``n``.
    """

    leq: tuple[tuple[bool, ...], ...]
    classes: tuple[tuple[int, ...], ...]
    abelian: tuple[bool, ...]
    class_leq: tuple[tuple[bool, ...], ...]
    maximal: tuple[int, ...]
    enumeration: tuple[int, ...]
    boundaries: tuple[int, ...]

    def class_of(self, v: int) -> int:
        for ci, cls in enumerate(self.classes):
            if v in cls:
                return ci
        raise KeyError(v)

    def maximal_classes(self) -> list[tuple[int, ...]]:
        return [self.classes[i] for i in self.maximal]


def closure_classes(n, leq):
    """Classes, class order, and an admissible ordering for a preorder matrix.

    Ties between incomparable classes go to the class with the smallest vertex.
    """
    seen, raw = set(), []
    for v in range(n):
        if v in seen:
            continue
        cls = tuple(u for u in range(n) if leq[u][v] and leq[v][u])
        seen.update(cls)
        raw.append(cls)
    k = len(raw)
    below = [[leq[raw[a][0]][raw[b][0]] for b in range(k)] for a in range(k)]
    order, placed = [], set()
    while len(order) < k:
        ready = [
            a for a in range(k) if a not in placed
            and all(b in placed for b in range(k) if b != a and below[b][a])
        ]
        nxt = min(ready, key=lambda a: raw[a][0])
        order.append(nxt)
        placed.add(nxt)
    classes = tuple(raw[a] for a in order)
    class_leq = tuple(tuple(below[a][b] for b in order) for a in order)
    return classes, class_leq


def preorder_analysis(graph: Graph) -> PreorderAnalysis:
    n = graph.n
    leq = tuple(tuple(graph.dominates(u, v) for v in range(n)) for u in range(n))
    classes, class_leq = closure_classes(n, leq)
    abelian = []
    for cls in classes:
        if graph.is_clique(cls):
            abelian.append(True)
        elif graph.is_independent(cls):
            abelian.append(False)
        else:
            raise AssertionError(f"class {cls} is neither a clique nor independent")
    k = len(classes)
    maximal = tuple(a for a in range(k) if not any(class_leq[a][b] for b in range(k) if b != a))
    enumeration = tuple(v for cls in classes for v in cls)
    bounds, pos = [], 0
    for cls in classes:
        bounds.append(pos)
        pos += len(cls)
    bounds.append(n)
    return PreorderAnalysis(leq, classes, tuple(abelian), class_leq, maximal, enumeration, tuple(bounds))


# ---------------------------------------------------------------------------
# Independent sets and automorphisms


def max_independent_set_size(graph: Graph) -> int:
    """Exact maximum independent set size by branch and bound."""
    adj = [graph.link(v) for v in graph.vertices]
    best = 0

    def grow(candidates: frozenset, size: int):
        nonlocal best
        if size + len(candidates) <= best:
            return
        if not candidates:
            best = size
            return
        # branch on a vertex of maximum degree within the candidates
        v = max(candidates, key=lambda u: (len(adj[u] & candidates), -u))
        grow(candidates - adj[v] - {v}, size + 1)
        if adj[v] & candidates:
            grow(candidates - {v}, size)

    grow(frozenset(graph.vertices), 0)
    return best


def graph_automorphisms(graph: Graph) -> list[tuple[int, ...]]:
    """All adjacency-preserving permutations, in lexicographic order (identity first)."""
    n = graph.n
    deg = [len(graph.link(v)) for v in graph.vertices]
    result = []
    image = [-1] * n
    used = [False] * n

    def extend(v):
        if v == n:
            result.append(tuple(image))
            return
        for w in range(n):
            if used[w] or deg[w] != deg[v]:
                continue
            if all(graph.adjacent(u, v) == graph.adjacent(image[u], w) for u in range(v)):
                image[v], used[w] = w, True
                extend(v + 1)
                used[w] = False
        image[v] = -1

    extend(0)
    return result
