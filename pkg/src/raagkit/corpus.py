"""Small-graph corpus: isomorphism classes by canonical adjacency bitmask, plus an invariant suite."""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations

from . import linalg
from .autos import (
    Automorphism, enumerate_torelli_generators, out0_generators, tau1_formula, tau1_magnus,
)
from .graph import Graph, preorder_analysis
from .magnus import l2_basis
from .rigidity import (
    decomposition_tree, exclude_generator_set, project_generator_set,
    restrict_generator_set, sl_dimension,
)

MAX_CORPUS_VERTICES = 6


class CorpusGuard(ValueError):
    pass


def _pairs(k):
    return [(i, j) for i in range(k) for j in range(i + 1, k)]


def canonical_mask(k: int, edges) -> int:
    """Largest edge bitmask over all relabellings; equal iff isomorphic."""
    pairs = _pairs(k)
    bit = {p: 1 << (len(pairs) - 1 - t) for t, p in enumerate(pairs)}
    best = 0
    for perm in permutations(range(k)):
        m = 0
        for u, v in edges:
            a, b = perm[u], perm[v]
            m |= bit[(a, b) if a < b else (b, a)]
        best = max(best, m)
    return best


def _edges_of(k, mask):
    pairs = _pairs(k)
    return [p for t, p in enumerate(pairs) if mask >> (len(pairs) - 1 - t) & 1]


@lru_cache(maxsize=None)
def _masks(k: int) -> tuple[int, ...]:
    if k <= 1:
        return (0,) if k == 1 else ()
    seen = set()
    for mask in _masks(k - 1):
        base = _edges_of(k - 1, mask)
        for nbrs in range(1 << (k - 1)):
            extra = [(u, k - 1) for u in range(k - 1) if nbrs >> u & 1]
            seen.add(canonical_mask(k, base + extra))
    return tuple(sorted(seen))


def graphs_on(k: int) -> list[Graph]:
    """One representative per isomorphism class of graphs with exactly k vertices."""
    if k > MAX_CORPUS_VERTICES:
        raise CorpusGuard(f"corpus enumeration is limited to {MAX_CORPUS_VERTICES} vertices")
    if k < 1:
        return []
    return [Graph.standard(k, [(u + 1, v + 1) for u, v in _edges_of(k, m)]) for m in _masks(k)]


def graphs_up_to(k: int) -> list[Graph]:
    return [g for n in range(1, k + 1) for g in graphs_on(n)]


# ---------------------------------------------------------------------------
# invariant suite


def _check_classes(graph):
    pre = preorder_analysis(graph)
    return all(graph.is_clique(c) or graph.is_independent(c) for c in pre.classes)


def _check_l2(graph):
    basis = l2_basis(graph)
    if len(basis) != graph.n * (graph.n - 1) // 2 - len(graph.edges):
        return False
    if not basis:
        return True
    monos = sorted({m for _, s in basis for m in s.part(2).terms})
    rows = [[s.terms.get(m, 0) for m in monos] for _, s in basis]
    return linalg.rank(rows) == len(basis)


def _check_tau1(graph):
    for gen in enumerate_torelli_generators(graph):
        a = Automorphism.from_generator(graph, gen)
        if not a.is_torelli() or tau1_formula(graph, gen) != tau1_magnus(a):
            return False
    return True


def _check_monotone(graph):
    gens = out0_generators(graph)
    pre = graph.preorder
    for idx in pre.maximal:
        project_generator_set(graph, pre.classes[idx], gens)
    if not graph.is_connected():
        for comp in graph.components():
            if len(comp) >= 2:
                restrict_generator_set(graph, comp, gens)
        exclude_generator_set(graph, gens)
    return True


def _check_tree(graph):
    decomposition_tree(graph)
    return sl_dimension(graph) >= 1 or graph.n == 0


SUITE = {
    "classes_clique_or_independent": _check_classes,
    "l2_basis_rank": _check_l2,
    "tau1_two_ways": _check_tau1,
    "sl_dimension_monotone": _check_monotone,
    "decomposition_tree": _check_tree,
}


def run_suite(graph: Graph) -> dict[str, bool]:
    out = {}
    for name, fn in SUITE.items():
        try:
            out[name] = bool(fn(graph))
        except AssertionError:
            out[name] = False
    return out


def corpus_report(k: int) -> dict:
    """Pass/fail matrix over the graphs with exactly k vertices."""
    graphs = graphs_on(k)
    rows = []
    for g in graphs:
        res = run_suite(g)
        rows.append({"edges": [[g.label(u), g.label(v)] for u, v in g.edges], "checks": res})
    return {
        "vertices": k,
        "graphs": len(graphs),
        "checks": list(SUITE),
        "matrix": rows,
        "all_pass": all(all(r["checks"].values()) for r in rows),
    }
