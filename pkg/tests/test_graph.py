import itertools

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from raagkit import Graph, GraphError, graph_from_dot, graph_from_json, load_graph
from raagkit.graph import closure_classes

P5 = Graph.cycle(5)
P3 = Graph.path(3)
K3 = Graph.complete(3)
D3 = Graph.discrete(3)


def vs(g, *labels):
    return frozenset(g.vertex(f"v{k}") for k in labels)


@st.composite
def graphs(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.standard(n, [(a + 1, b + 1) for (a, b), keep in zip(pairs, mask) if keep])


def test_links_and_stars():
    assert P5.link(0) == vs(P5, 2, 5)
    assert K3.link(0) == vs(K3, 2, 3)
    assert D3.link(1) == frozenset()
    assert P5.star_of_set([0]) == vs(P5, 1, 2, 5)
    assert P3.star_of_set(["v2"]) == vs(P3, 1, 2, 3)
    assert D3.link_of_set([0, 1]) == frozenset()
    assert D3.star_of_set([0, 1]) == vs(D3, 1, 2)
    with pytest.raises(ValueError):
        P5.star_of_set([])
    with pytest.raises(GraphError):
        P5.link("v9")


def test_components_minus_star():
    assert P5.components_minus_star(2) == [vs(P5, 1, 5)]
    assert D3.components_minus_star(0) == [vs(D3, 2), vs(D3, 3)]
    assert P3.components_minus_star(1) == []


def test_preorder_examples():
    pre = P5.preorder
    assert pre.classes == tuple((v,) for v in range(5))
    assert all(pre.abelian) and pre.maximal == (0, 1, 2, 3, 4)
    assert Graph.complete(4).preorder.classes == ((0, 1, 2, 3),)
    assert Graph.complete(4).preorder.abelian == (True,)
    assert Graph.discrete(4).preorder.abelian == (False,)


def test_centre_independence_automorphisms():
    assert P3.center_vertices() == vs(P3, 2)
    assert P5.center_vertices() == frozenset()
    assert K3.center_vertices() == frozenset(range(3))
    assert P5.max_independent_set_size() == 2
    assert Graph.complete(5).max_independent_set_size() == 1
    assert Graph.discrete(5).max_independent_set_size() == 5
    assert len(P5.automorphisms()) == 10
    assert len(D3.automorphisms()) == 6
    assert P3.automorphisms() == [(0, 1, 2), (2, 1, 0)]


def test_connected_decomposition():
    g = Graph.standard(6, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)])
    comps, free = g.connected_decomposition()
    assert len(comps) == 1 and comps[0].n == 5 and free == 1
    assert Graph.discrete(4).connected_decomposition()[0] == []
    assert Graph.discrete(4).connected_decomposition()[1] == 4
    comps, free = Graph.standard(4, [(1, 2), (3, 4)]).connected_decomposition()
    assert [c.n for c in comps] == [2, 2] and free == 0


def test_json_round_trip_and_errors():
    text = P5.to_json()
    assert graph_from_json(text) == P5
    assert graph_from_json(graph_from_json(text).to_json()).to_json() == text
    bad = '{\n  "vertices": ["v1", "v2"],\n  "edges": [["v1", "v9"]]\n}'
    with pytest.raises(GraphError) as err:
        graph_from_json(bad)
    assert "v9" in str(err.value) and (err.value.line, err.value.column) == (3, 20)
    with pytest.raises(GraphError) as err:
        graph_from_json('{"vertices": [')
    assert err.value.line == 1
    with pytest.raises(GraphError):
        graph_from_json('{"vertices": ["a"], "edges": [["a", "a"]]}')


def test_dot_round_trip(tmp_path):
    dot = P5.to_dot()
    assert graph_from_dot(dot) == P5
    p = tmp_path / "g.dot"
    p.write_text("graph { a -- b; b -- c; d; }")
    g = load_graph(p)
    assert g.labels == ("a", "b", "c", "d") and len(g.edges) == 2


def test_load_bundled_files(data_dir):
    assert load_graph(data_dir / "pentagon.json") == P5
    assert load_graph(data_dir / "pentagon.dot") == P5
    with pytest.raises(GraphError):
        load_graph(data_dir / "malformed.json")


def test_closure_classes_order():
    # 0 <= 1 only: the dominated class comes first
    leq = ((True, True), (False, True))
    classes, cleq = closure_classes(2, leq)
    assert classes == ((0,), (1,))
    assert cleq[0][1] and not cleq[1][0]


@given(graphs())
@settings(max_examples=150, deadline=None)
def test_preorder_invariants(g):
    pre = g.preorder
    for u in g.vertices:
        for v in g.vertices:
            assert pre.leq[u][v] == (g.link(u) <= g.star(v))
    for cls in pre.classes:
        assert g.is_clique(cls) or g.is_independent(cls)
    pos = {v: i for i, v in enumerate(pre.enumeration)}
    for u in g.vertices:
        for v in g.vertices:
            if pre.leq[u][v] and not pre.leq[v][u]:
                assert pos[u] < pos[v]
    assert sorted(pre.enumeration) == list(g.vertices)


@given(graphs())
@settings(max_examples=100, deadline=None)
def test_against_networkx(g):
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    assert g.max_independent_set_size() == max(len(c) for c in nx.find_cliques(nx.complement(h)))
    matcher = nx.algorithms.isomorphism.GraphMatcher(h, h)
    assert len(g.automorphisms()) == sum(1 for _ in matcher.isomorphisms_iter())
    assert sorted(map(sorted, g.components())) == sorted(map(sorted, nx.connected_components(h)))
    for perm in g.automorphisms():
        assert all(g.adjacent(perm[a], perm[b]) for a, b in g.edges)


def test_dot_errors_carry_position():
    with pytest.raises(GraphError) as err:
        graph_from_dot("graph {\n  a -- b;\n  b -> c;\n}")
    assert (err.value.line, err.value.column) == (3, 3)
    with pytest.raises(GraphError):
        graph_from_dot("digraph { a -> b }")
