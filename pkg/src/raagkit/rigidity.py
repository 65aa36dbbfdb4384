"""SL-dimension, block decompositions, projections and the rank-bound checks.

Restriction, exclusion and projection are computed generator by generator
with a single case table: a target vertex set ``W`` survives, the rest of
the restricted subgraph is killed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .autos import (
    Automorphism, ConstraintViolation, ExtendedPartialConj, Generator, Inversion, Kijk,
    PartialConj, Symmetry, Transvection, conjugated_set, format_generator, generator_name,
    out0_generators, validate,
)
from .graph import Graph, closure_classes


class UnsupportedGenerator(ValueError):
    pass


class NotMaximal(ValueError):
    pass


class NotDisconnected(ValueError):
    pass


class NotAComponent(ValueError):
    pass


def sl_dimension(graph: Graph) -> int:
    """Size of the largest abelian equivalence class of the domination preorder (at least 1)."""
    if graph.n < 1:
        raise ValueError("SL-dimension needs at least one vertex")
    pre = graph.preorder
    return max((len(c) for c, ab in zip(pre.classes, pre.abelian) if ab), default=1)


# ---------------------------------------------------------------------------
# Subgroups given by generators


@dataclass(frozen=True)
class Block:
    vertices: tuple[int, ...]
    abelian: bool

    @property
    def size(self):
        return len(self.vertices)


class SubgroupSpec:
    """Subgroup of Out(A_Gamma) generated by a list of validated generators.

    ``v_i <=_G v_j`` is the reflexive-transitive closure of the transvection
    pairs ``(i, j)`` present in the list.
    """

    def __init__(self, graph: Graph, generators: Sequence[Generator] = ()):
        self.graph = graph
        self.generators = tuple(validate(graph, g) for g in generators)
        n = graph.n
        reach = [[i == j for j in range(n)] for i in range(n)]
        for g in self.generators:
            if isinstance(g, Transvection):
                reach[g.i][g.j] = True
        for k in range(n):
            for i in range(n):
                if reach[i][k]:
                    for j in range(n):
                        if reach[k][j]:
                            reach[i][j] = True
        self.leq = tuple(tuple(r) for r in reach)
        classes, self.class_leq = closure_classes(n, self.leq)
        self.blocks = tuple(Block(c, graph.is_clique(c)) for c in classes)
        self.ordering = tuple(v for c in classes for v in c)
        self._check()

    @classmethod
    def full(cls, graph: Graph) -> "SubgroupSpec":
        """Generated by every inversion, partial conjugation and transvection."""
        return cls(graph, out0_generators(graph))

    def _check(self):
        g, pre = self.graph, self.graph.preorder
        for i in g.vertices:
            for j in g.vertices:
                if self.leq[i][j] and not pre.leq[i][j]:
                    raise AssertionError(f"v{i + 1} <=_G v{j + 1} but not v{i + 1} <= v{j + 1}")
        for b in self.blocks:
            if len({pre.class_of(v) for v in b.vertices}) != 1:
                raise AssertionError(f"G-class {b.vertices} spans several domination classes")
            if not (b.abelian or g.is_independent(b.vertices)):
                raise AssertionError(f"G-class {b.vertices} is neither a clique nor independent")

    @property
    def transvection_pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset((g.i, g.j) for g in self.generators if isinstance(g, Transvection))

    def sl_dimension(self) -> int:
        return max((b.size for b in self.blocks if b.abelian), default=1)

    def block_profile(self) -> list[tuple[tuple[int, ...], int, bool]]:
        return [(b.vertices, b.size, b.abelian) for b in self.blocks]

    def signature(self) -> str:
        return "".join(f"[{b.size}{'a' if b.abelian else 'n'}]" for b in self.blocks)

    def block_conformance(self) -> list[str]:
        """Generators whose matrix, reordered by ``ordering``, breaks the block pattern.

        Entry (row block I, column block J) may be nonzero only when block J
        lies below block I; the diagonal blocks are the G-classes.  Graph
        symmetries are skipped since they live outside the finite-index part.
        """
        pos = {v: p for p, v in enumerate(self.ordering)}
        block_of = {}
        for bi, b in enumerate(self.blocks):
            for v in b.vertices:
                block_of[v] = bi
        bad = []
        for gen in self.generators:
            if isinstance(gen, Symmetry):
                continue
            m = Automorphism.from_generator(self.graph, gen).matrix
            for r in self.graph.vertices:
                for c in self.graph.vertices:
                    if m[r][c] == 0:
                        continue
                    I, J = block_of[r], block_of[c]
                    if I != J and not (pos[c] < pos[r] and self.class_leq[J][I]):
                        bad.append(format_generator(gen))
                        break
                else:
                    continue
                break
        return bad


def sl_dimension_subgroup(spec: SubgroupSpec) -> int:
    return spec.sl_dimension()


def block_profile(spec: SubgroupSpec):
    return spec.block_profile()


# ---------------------------------------------------------------------------
# Restriction / exclusion case table


def _transfer(graph: Graph, domain: frozenset, target: frozenset, gen: Generator) -> tuple[Graph, Optional[Generator]]:
    """Image of ``gen`` after restricting to ``domain`` and killing ``domain - target``.

    Returns the induced graph on ``target`` and the image generator there
    (``None`` for the identity).
    """
    sub, keep = graph.induced(target)
    new = {v: p for p, v in enumerate(keep)}
    if isinstance(gen, (Symmetry, Kijk)):
        raise UnsupportedGenerator(f"{format_generator(gen)} is not an Out^0 generator")
    if isinstance(gen, Inversion):
        return sub, Inversion(new[gen.i]) if gen.i in target else None
    if isinstance(gen, Transvection):
        if gen.i not in target:
            return sub, None
        if gen.j in target:
            return sub, validate(sub, Transvection(new[gen.i], new[gen.j]))
        if gen.j in domain:
            return sub, None  # v_j is killed
        raise ConstraintViolation(f"{format_generator(gen)} does not preserve the restricted subgroup")
    if isinstance(gen, (PartialConj, ExtendedPartialConj)):
        if gen.j not in target:
            return sub, None
        moved = conjugated_set(gen) & target
        if not moved:
            return sub, None
        j = new[gen.j]
        comps = [c for c in sub.components_minus_star(j) if {keep[v] for v in c} & moved]
        covered = frozenset(keep[v] for c in comps for v in c)
        if covered != moved:
            raise AssertionError(f"{format_generator(gen)} does not restrict to whole components")
        if len(comps) == len(sub.components_minus_star(j)):
            return sub, None  # conjugation by v_j on the whole target is inner
        if len(comps) == 1:
            return sub, validate(sub, PartialConj(j, comps[0]))
        return sub, validate(sub, ExtendedPartialConj(j, tuple(comps)))
    raise TypeError(gen)


def class_link(graph: Graph, cls) -> frozenset[int]:
    return graph.link_of_set(cls)


def _check_maximal(graph: Graph, cls) -> tuple[int, ...]:
    cls = tuple(sorted(graph.vertex(v) for v in cls))
    pre = graph.preorder
    if cls not in pre.classes:
        # allow naming a class by any one of its vertices
        if len(cls) == 1:
            cls = pre.classes[pre.class_of(cls[0])]
        else:
            raise NotMaximal(f"{cls} is not an equivalence class")
    if pre.classes.index(cls) not in pre.maximal:
        raise NotMaximal(f"class {{{','.join(graph.label(v) for v in cls)}}} is not maximal")
    return cls


def project_generator(graph: Graph, cls, gen: Generator) -> tuple[Graph, Optional[Generator]]:
    """P_v on one generator: restrict to st[v], then kill [v]; lands on lk[v]."""
    cls = _check_maximal(graph, cls)
    link = class_link(graph, cls)
    return _transfer(graph, frozenset(cls) | link, link, gen)


def _image_spec(graph, domain, target, gens):
    sub = graph.induced(target)[0]
    images = []
    for g in gens:
        _, img = _transfer(graph, domain, target, g)
        if img is not None and img not in images:
            images.append(img)
    return SubgroupSpec(sub, images)


def _monotone(source: SubgroupSpec, image: SubgroupSpec):
    if image.sl_dimension() > source.sl_dimension():
        raise AssertionError(
            f"SL-dimension increased from {source.sl_dimension()} to {image.sl_dimension()}"
        )


def project_generator_set(graph: Graph, cls, gens: Sequence[Generator]) -> SubgroupSpec:
    cls = _check_maximal(graph, cls)
    link = class_link(graph, cls)
    image = _image_spec(graph, frozenset(cls) | link, link, gens)
    _monotone(SubgroupSpec(graph, gens), image)
    return image


def _require_disconnected(graph: Graph):
    if graph.is_connected():
        raise NotDisconnected("restriction and exclusion need a disconnected graph")


def restrict_to_component(graph: Graph, component, gen: Generator) -> tuple[Graph, Optional[Generator]]:
    _require_disconnected(graph)
    comp = frozenset(graph.vertex(v) for v in component)
    if comp not in graph.components() or len(comp) < 2:
        raise NotAComponent("expected a connected component with at least two vertices")
    return _transfer(graph, comp, comp, gen)


def restrict_generator_set(graph: Graph, component, gens) -> SubgroupSpec:
    _require_disconnected(graph)
    comp = frozenset(graph.vertex(v) for v in component)
    if comp not in graph.components() or len(comp) < 2:
        raise NotAComponent("expected a connected component with at least two vertices")
    image = _image_spec(graph, comp, comp, gens)
    _monotone(SubgroupSpec(graph, gens), image)
    return image


def isolated_vertices(graph: Graph) -> frozenset[int]:
    return frozenset(v for v in graph.vertices if not graph.link(v))


def exclude_to_free(graph: Graph, gen: Generator) -> tuple[Graph, Optional[Generator]]:
    """E: kill the non-isolated part, landing on the free group on the isolated vertices."""
    _require_disconnected(graph)
    return _transfer(graph, frozenset(graph.vertices), isolated_vertices(graph), gen)


def exclude_generator_set(graph: Graph, gens) -> SubgroupSpec:
    _require_disconnected(graph)
    image = _image_spec(graph, frozenset(graph.vertices), isolated_vertices(graph), gens)
    _monotone(SubgroupSpec(graph, gens), image)
    return image


# ---------------------------------------------------------------------------
# Decomposition tree


@dataclass
class Leaf:
    kind: str  # "GL", "Out(F)" or "trivial"
    rank: int
    vertices: tuple[str, ...] = ()

    def to_dict(self):
        name = {"GL": f"GL_{self.rank}", "Out(F)": f"Out(F_{self.rank})"}.get(self.kind, "trivial")
        return {"node": "Leaf", "kind": name, "vertices": list(self.vertices)}


@dataclass
class Disconnected:
    children: list
    free_rank: int
    vertices: tuple[str, ...] = ()

    def to_dict(self):
        return {"node": "Disconnected", "vertices": list(self.vertices), "free_rank": self.free_rank,
                "children": [c.to_dict() for c in self.children]}


@dataclass
class CenterSplit:
    center: tuple[str, ...]
    tr_rank: int
    gl_size: int
    child: object
    vertices: tuple[str, ...] = ()

    def to_dict(self):
        return {"node": "CenterSplit", "vertices": list(self.vertices), "class": list(self.center),
                "tr_rank": self.tr_rank, "gl_size": self.gl_size, "child": self.child.to_dict()}


@dataclass
class CenterlessProjection:
    classes: list
    children: list
    kernel: str = "finitely generated free abelian"
    vertices: tuple[str, ...] = ()

    def to_dict(self):
        return {"node": "CenterlessProjection", "vertices": list(self.vertices),
                "classes": [list(c) for c in self.classes], "kernel": self.kernel,
                "children": [c.to_dict() for c in self.children]}


Node = Union[Leaf, Disconnected, CenterSplit, CenterlessProjection]


def decomposition_tree(graph: Graph) -> Node:
    labels = graph.labels
    n = graph.n
    if n == 0:
        return Leaf("trivial", 0)
    if graph.is_clique(graph.vertices):
        return Leaf("GL", n, labels)
    if not graph.edges:
        return Leaf("Out(F)", n, labels)
    if not graph.is_connected():
        comps, free = graph.connected_decomposition()
        return Disconnected([decomposition_tree(c) for c in comps], free, labels)
    center = graph.center_vertices()
    if center:
        link = frozenset(graph.vertices) - center
        child = decomposition_tree(graph.induced(link)[0])
        return CenterSplit(tuple(graph.label(v) for v in sorted(center)), len(center) * len(link),
                           len(center), child, labels)
    pre = graph.preorder
    classes, children = [], []
    for cls in pre.maximal_classes():
        classes.append(tuple(graph.label(v) for v in cls))
        children.append(decomposition_tree(graph.induced(class_link(graph, cls))[0]))
    return CenterlessProjection(classes, children, vertices=labels)


def tree_leaves(node: Node) -> list[str]:
    if isinstance(node, Leaf):
        return [node.to_dict()["kind"]]
    if isinstance(node, CenterSplit):
        return tree_leaves(node.child)
    return [x for c in node.children for x in tree_leaves(c)]


# ---------------------------------------------------------------------------
# Rank-bound checks


@dataclass
class Verdict:
    d_sl: int
    F: int
    real_rank: int
    hypothesis_met: bool
    applies: bool
    statement: str

    def to_dict(self):
        return dict(self.__dict__)


def rank_bound_check(graph: Graph, real_rank: int) -> Verdict:
    d, F = sl_dimension(graph), graph.max_independent_set_size()
    met = real_rank >= 2
    applies = met and real_rank >= d
    if not met:
        text = "hypothesis not met: the real rank must be at least 2"
    elif applies:
        text = (f"every homomorphism from an irreducible lattice in a real-rank-{real_rank} group "
                f"to Out(A_Gamma) has finite image (d_SL = {d})")
    else:
        text = f"no conclusion: real rank {real_rank} is below d_SL = {d}"
    return Verdict(d, F, real_rank, met, applies, text)


@dataclass
class Obligations:
    m: int
    F: int
    obligations: list = field(default_factory=list)

    def to_dict(self):
        return dict(self.__dict__)


def tmain_obligations(spec: SubgroupSpec) -> Obligations:
    m, F = spec.sl_dimension(), spec.graph.max_independent_set_size()
    obl = [f"every homomorphism Lambda' -> SL_{m}(Z) has finite image"]
    obl += [f"every homomorphism Lambda' -> Out(F_{N}) has finite image" for N in range(1, F + 1)]
    obl.append("Hom(Lambda', Z) = 0")
    return Obligations(m, F, obl)


def describe_image(graph: Graph, gen: Generator, result) -> dict:
    sub, img = result
    return {
        "generator": format_generator(gen, graph),
        "name": generator_name(graph, gen),
        "image": None if img is None else format_generator(img, sub),
        "image_name": None if img is None else generator_name(sub, img),
    }
