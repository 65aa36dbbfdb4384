import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from raagkit import Graph, GroupElement, commutator
from raagkit.autos import (
    Automorphism, ConstraintViolation, ExtendedPartialConj, Inversion, Kijk, MissingWord,
    NotTorelli, PartialConj, Symmetry, abelianization_matrix, apply, compose,
    conjugate_by_symmetry, enumerate_standard_generators, enumerate_torelli_generators,
    format_generator, generator_name, inner, invert_by_word, is_torelli, johnson_level,
    make_generator, parse_automorphism, parse_generator, tau1_formula, tau1_magnus,
    torelli_h1_report,
)
from raagkit.magnus import AtLeast, l2_basis

P5 = Graph.cycle(5)
D3 = Graph.discrete(3)
P3 = Graph.path(3)


def el(g, text):
    return GroupElement.parse(g, text)


def table(a):
    return a.table()


def test_make_generator_examples():
    with pytest.raises(ConstraintViolation, match=r"lk\(v1\)"):
        make_generator(P5, "tv:1,2")
    k13 = make_generator(P5, "pc:3/{1,5}")
    assert table(k13) == {
        "v1": "v3 v1 v3^-1", "v2": "v2", "v3": "v3", "v4": "v4", "v5": "v3 v5 v3^-1",
    }
    assert make_generator(P5, "pc:1,3") == k13
    kijk = make_generator(D3, "kijk:1,2,3")
    assert kijk.apply(el(D3, "v1")) == el(D3, "v1") * commutator(el(D3, "v2"), el(D3, "v3"))
    with pytest.raises(ConstraintViolation):
        make_generator(P5, "pc:3/{1}")
    with pytest.raises(ConstraintViolation):
        make_generator(P5, "sym:(1 2)")
    with pytest.raises(ConstraintViolation):
        make_generator(P3, "kijk:1,2,3")


def test_apply_and_compose():
    k13 = make_generator(P5, "pc:3/{1,5}")
    assert str(apply(k13, el(P5, "v1"))) == "v3 v1 v3^-1"
    x = el(P5, "v2 v4^-1 v1")
    assert Automorphism.identity(P5)(x) == x
    rho = make_generator(P3, "tv:1,3")
    assert str(rho(el(P3, "v1 v2"))) == "v1 v2 v3"
    assert compose(k13, invert_by_word(k13)).is_identity()
    s1 = make_generator(P5, "inv:1")
    assert compose(s1, s1).is_identity()
    r12, r13 = make_generator(D3, "tv:1,2"), make_generator(D3, "tv:1,3")
    assert str(compose(r12, r13)(el(D3, "v1"))) == "v1 v2 v3"
    bare = Automorphism(P5, k13.images)
    with pytest.raises(MissingWord):
        invert_by_word(bare)


def test_endomorphism_check():
    # v1 -> v3 breaks the relation v1 v2 = v2 v1 in the pentagon
    images = [el(P5, "v3"), el(P5, "v2"), el(P5, "v3"), el(P5, "v4"), el(P5, "v5")]
    with pytest.raises(ConstraintViolation):
        Automorphism(P5, images)


def test_abelianization_examples():
    r12 = make_generator(D3, "tv:1,2")
    assert abelianization_matrix(r12) == ((1, 0, 0), (1, 1, 0), (0, 0, 1))
    assert abelianization_matrix(make_generator(P5, "pc:3/{1,5}")) == tuple(
        tuple(int(i == j) for j in range(5)) for i in range(5)
    )
    s1 = abelianization_matrix(make_generator(P5, "inv:1"))
    assert s1[0][0] == -1 and all(s1[i][i] == 1 for i in range(1, 5))
    assert is_torelli(make_generator(P5, "pc:3/{1,5}"))
    assert not is_torelli(r12)
    assert is_torelli(make_generator(D3, "kijk:1,2,3"))


def test_enumerations():
    def counts(g):
        out = {}
        for gen in enumerate_standard_generators(g):
            out[type(gen).__name__] = out.get(type(gen).__name__, 0) + 1
        return out

    assert counts(P5) == {"Symmetry": 10, "Inversion": 5, "PartialConj": 5}
    assert counts(Graph.discrete(2)) == {"Symmetry": 2, "Inversion": 2, "PartialConj": 2, "Transvection": 2}
    assert counts(Graph.complete(2)) == {"Symmetry": 2, "Inversion": 2, "Transvection": 2}
    gens = enumerate_torelli_generators(P5)
    assert sorted(generator_name(P5, g) for g in gens) == ["K13", "K24", "K35", "K41", "K52"]
    assert PartialConj(2, frozenset({0, 4})) in gens
    d2 = enumerate_torelli_generators(Graph.discrete(2))
    assert sorted(generator_name(Graph.discrete(2), g) for g in d2) == ["K12", "K21"]
    d3 = enumerate_torelli_generators(D3)
    assert sum(isinstance(g, PartialConj) for g in d3) == 6
    assert sorted((g.i, g.j, g.k) for g in d3 if isinstance(g, Kijk)) == [(0, 1, 2), (1, 0, 2), (2, 0, 1)]


def row(m, l, pairs, coeffs):
    basis = [p for p, _ in pairs]
    expect = [0] * len(basis)
    for p, c in coeffs.items():
        expect[basis.index(p)] = c
    return list(m[l]) == expect


def test_tau1_examples():
    b5 = l2_basis(P5)
    k13 = PartialConj(2, frozenset({0, 4}))
    m = tau1_formula(P5, k13)
    assert row(m, 0, b5, {(0, 2): -1}) and row(m, 4, b5, {(2, 4): 1})
    assert all(not any(m[l]) for l in (1, 2, 3))
    k24 = PartialConj(3, frozenset({0, 1}))
    m = tau1_formula(P5, k24)
    assert row(m, 0, b5, {(0, 3): -1}) and row(m, 1, b5, {(1, 3): -1})
    b3 = l2_basis(D3)
    m = tau1_formula(D3, Kijk(0, 1, 2))
    assert row(m, 0, b3, {(1, 2): 1}) and not any(m[1]) and not any(m[2])
    with pytest.raises(TypeError):
        tau1_formula(P5, Inversion(0))


def test_tau1_magnus_examples():
    k13 = PartialConj(2, frozenset({0, 4}))
    assert tau1_magnus(Automorphism.from_generator(P5, k13)) == tau1_formula(P5, k13)
    assert not any(map(any, tau1_magnus(Automorphism.identity(P5))))
    k = make_generator(D3, "kijk:1,2,3")
    twice = tau1_magnus(compose(k, k))
    once = tau1_formula(D3, Kijk(0, 1, 2))
    assert twice == tuple(tuple(2 * x for x in r) for r in once)
    with pytest.raises(NotTorelli):
        tau1_magnus(make_generator(D3, "tv:1,2"))


def test_johnson_level_examples():
    k13 = make_generator(P5, "pc:3/{1,5}")
    assert johnson_level(k13, 4) == 1
    assert johnson_level(Automorphism.identity(P5), 4) == AtLeast(4)
    k24 = make_generator(P5, "pc:4/{1,2}")
    comm = compose(k13, k24, invert_by_word(k13), invert_by_word(k24))
    level = johnson_level(comm, 4)
    assert isinstance(level, AtLeast) or level >= 2
    c = commutator(el(P5, "v1"), el(P5, "v3"))
    assert johnson_level(inner(c), 3) == 2
    with pytest.raises(NotTorelli):
        johnson_level(make_generator(P5, "inv:1"), 3)


def test_inner_examples():
    ad3 = inner(el(P5, "v3"))
    k13 = make_generator(P5, "pc:3/{1,5}")
    assert ad3 == k13
    assert inner(GroupElement.identity(P5)).is_identity()
    d = inner(el(D3, "v1"))
    assert d.word == ((ExtendedPartialConj(0, (frozenset({1}), frozenset({2}))), 1),)
    g = el(P5, "v1 v3^-1 v4")
    ad = inner(g)
    assert Automorphism.from_word(P5, ad.word) == ad
    assert invert_by_word(ad) == inner(g.inverse())


def test_h1_reports():
    assert torelli_h1_report(P5).as_tuple() == (5, 5, 25)
    assert torelli_h1_report(D3).as_tuple() == (9, 9, 9)
    assert torelli_h1_report(Graph.complete(3)).as_tuple() == (0, 0, 0)


def test_conjugate_by_symmetry():
    sigma, _ = parse_generator(P5, "sym:(1 2 3 4 5)")
    k13 = PartialConj(2, frozenset({0, 4}))
    img = conjugate_by_symmetry(sigma, k13)
    assert generator_name(P5, img) == "K24"
    assert conjugate_by_symmetry(sigma, Inversion(0)) == Inversion(1)
    ident = Symmetry(tuple(range(5)))
    assert conjugate_by_symmetry(ident, k13) == k13
    a = Automorphism.from_generator(P5, sigma)
    lhs = a * Automorphism.from_generator(P5, k13) * invert_by_word(a)
    assert lhs == Automorphism.from_generator(P5, img)


def test_text_syntax_round_trip():
    for g in (P5, D3, Graph.path(4), Graph.standard(4, [(1, 2)])):
        for gen in enumerate_standard_generators(g) + enumerate_torelli_generators(g):
            for graph_arg in (None, g):
                text = format_generator(gen, graph_arg)
                assert parse_generator(g, text) == (gen, 1)
            assert parse_generator(g, format_generator(gen) + "^-1") == (gen, -1)
    a = parse_automorphism(P5, "pc:3/{1,5}, inv:2")
    assert str(a(el(P5, "v2 v1"))) == "v2^-1 v3 v1 v3^-1"


GRAPHS = [P5, D3, Graph.path(4), Graph.standard(4, [(1, 2), (2, 3), (1, 3)]),
          Graph.standard(5, [(1, 2), (3, 4)])]


@given(st.sampled_from(GRAPHS), st.integers(0, 10 ** 6))
@settings(max_examples=60, deadline=None)
def test_automorphism_laws(g, seed):
    rng = random.Random(seed)
    gens = enumerate_standard_generators(g) + enumerate_torelli_generators(g)
    pick = lambda: Automorphism.from_generator(g, rng.choice(gens), rng.choice((1, -1)))
    a, b = pick(), pick()
    x = GroupElement(g, [(rng.randrange(g.n), rng.choice((1, -1))) for _ in range(6)])
    assert (a * b)(x) == a(b(x))
    assert (a * invert_by_word(a)).is_identity()
    assert (a * b).matrix == tuple(
        tuple(sum(a.matrix[i][k] * b.matrix[k][j] for k in range(g.n)) for j in range(g.n))
        for i in range(g.n)
    )
    assert Automorphism.from_word(g, (a * b).word) == a * b
    y = GroupElement(g, [(rng.randrange(g.n), 1) for _ in range(3)])
    assert a(x * y) == a(x) * a(y)


@given(st.sampled_from(GRAPHS), st.integers(0, 10 ** 6))
@settings(max_examples=40, deadline=None)
def test_symmetry_conjugation_closure(g, seed):
    rng = random.Random(seed)
    syms = [x for x in enumerate_standard_generators(g) if isinstance(x, Symmetry)]
    gens = enumerate_torelli_generators(g)
    if not gens:
        return
    sym, gen = rng.choice(syms), rng.choice(gens)
    img = conjugate_by_symmetry(sym, gen)
    a = Automorphism.from_generator(g, sym)
    lhs = a * Automorphism.from_generator(g, gen) * invert_by_word(a)
    assert lhs == Automorphism.from_generator(g, img)
