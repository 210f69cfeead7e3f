from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artin_tits import amalgam
from artin_tits.amalgam import FACTOR_X, FACTOR_Y, Leaf, Node, Syllable
from artin_tits.errors import GraphError, UnsupportedBaseCase
from artin_tits.graph import INF, induced_subgraph, is_free_of_infinity
from artin_tits.words import parse_word, support
from oracles import (
    F2,
    FC3,
    free_reduce,
    identity,
    inv,
    make,
    matmul,
    random_consequence,
    random_word,
    reflections,
    relators,
    retraction,
)

# two infinity edges, spherical leaves A2 and B2 pieces
SQUARE = make("a b c d", ("a", "b", INF), ("c", "d", INF), ("a", "c", 3), ("b", "d", 4))
# a vertex joined to everything by infinity
STAR = make("o a b", ("o", "a", INF), ("o", "b", INF), ("a", "b", 5))
AFFINE_LEAF = make("a b c d", ("a", "b", 3), ("b", "c", 3), ("a", "c", 3), ("c", "d", INF))
SUPPORTED = [F2, FC3, SQUARE, STAR]


def W(text):
    return list(parse_word(text))


def image_in_W_is_trivial(g, w):
    mats = reflections(g)
    M = identity(len(g))
    for v, _ in w:
        M = matmul(M, mats[g.index(v)])
    I = identity(len(g))
    return all(abs(M[r][c] - I[r][c]) < 1e-7 for r in range(len(g)) for c in range(len(g)))


def test_tree_examples():
    leaf_graph = make("s t", ("s", "t", 3))
    assert amalgam.decomposition_tree(leaf_graph) == Leaf(leaf_graph)
    tree = amalgam.decomposition_tree(F2)
    assert isinstance(tree, Node)
    assert (tree.edge, tree.X, tree.Y, tree.Z) == (("s", "t"), ("t",), ("s",), ())
    assert tree.left.vertices == ("t",) and tree.right.vertices == ("s",)
    tree = amalgam.decomposition_tree(FC3)
    assert (tree.X, tree.Y, tree.Z) == (("t", "u"), ("s", "u"), ("u",))
    assert isinstance(tree.left, Leaf) and isinstance(tree.right, Leaf)


@pytest.mark.parametrize("g", SUPPORTED + [AFFINE_LEAF])
def test_tree_invariants(g):
    def walk(tree):
        if isinstance(tree, Leaf):
            assert is_free_of_infinity(tree.graph)
            return
        s, t = tree.edge
        assert tree.graph.label(s, t) == INF
        assert set(tree.X) | set(tree.Y) == set(tree.vertices)
        assert set(tree.X) & set(tree.Y) == set(tree.Z)
        assert tree.left.graph == induced_subgraph(tree.graph, tree.X)
        assert tree.right.graph == induced_subgraph(tree.graph, tree.Y)
        # lexicographically first infinity edge
        assert tree.edge == tree.graph.infinity_edges()[0]
        walk(tree.left)
        walk(tree.right)

    walk(amalgam.decomposition_tree(g))


def test_tree_text():
    assert amalgam.format_tree(amalgam.decomposition_tree(FC3)) == (
        "split s-t (inf): X={t u} Y={s u} Z={u}\n  leaf {t u} [A1+A1]\n  leaf {s u} [A2]"
    )


def _solver_oracles(g):
    solver = amalgam.amalgam_solver(g)
    tree = solver.tree
    return tree, (solver.sub(tree.X), solver.sub(tree.Y))


def test_reduce_free_product_examples():
    tree, oracles = _solver_oracles(F2)
    # factor 1 is A_{t}, factor 2 is A_{s}
    a, b = "t", "s"
    form = amalgam.reduce_syllabic(tree, [Syllable(((a, 1),), FACTOR_X), Syllable(((a, -1),), FACTOR_X)], oracles)
    assert form.length == 0
    expr = [
        Syllable(((a, 1),), FACTOR_X),
        Syllable(((b, 1),), FACTOR_Y),
        Syllable(((b, -1),), FACTOR_Y),
        Syllable(((a, 1),), FACTOR_X),
    ]
    form = amalgam.reduce_syllabic(tree, expr, oracles)
    assert form.length == 1
    assert form.syllables[0].factor == FACTOR_X
    assert free_reduce(form.syllables[0].word) == [(a, 1), (a, 1)]


def test_reduce_crosses_amalgamated_syllable():
    tree, oracles = _solver_oracles(FC3)
    steps = []
    form = amalgam.reduce_syllabic(tree, [Syllable((("u", 1),), FACTOR_X), Syllable((("s", 1),), FACTOR_Y)], oracles, trace=steps.append)
    assert form.length == 1
    assert form.syllables[0] == Syllable((("u", 1), ("s", 1)), FACTOR_Y)
    assert [s["step"] for s in steps] == ["cross"]


def test_reduce_rejects_bad_syllables():
    tree, oracles = _solver_oracles(FC3)
    with pytest.raises(ValueError):
        amalgam.reduce_syllabic(tree, [Syllable((("s", 1),), FACTOR_X)], oracles)
    with pytest.raises(ValueError):
        amalgam.reduce_syllabic(tree, [], oracles, strategy="middle")


def test_word_problem_examples():
    assert not amalgam.is_trivial(F2, W("s t s^-1 t^-1"))
    assert amalgam.is_trivial(FC3, W("t u t^-1 u^-1"))
    assert not amalgam.is_trivial(FC3, W("s u s^-1 u^-1"))


def test_membership_examples():
    assert amalgam.member_rewrite(FC3, W("s u s u"), ["s", "u"]) == tuple(W("s u s u"))
    assert amalgam.member_rewrite(F2, W("s t"), ["s"]) is None
    got = amalgam.member_rewrite(FC3, W("s u s^-1"), ["s", "u"])
    assert got is not None and support(got) <= {"s", "u"}
    assert amalgam.is_trivial(FC3, W("s u s^-1") + inv(list(got)))


def test_unsupported_base_case():
    with pytest.raises(UnsupportedBaseCase) as info:
        amalgam.is_trivial(AFFINE_LEAF, W("a b"))
    assert info.value.vertices == ("a", "b", "c")
    with pytest.raises(UnsupportedBaseCase):
        amalgam.member_rewrite(AFFINE_LEAF, W("d"), ["d"])
    with pytest.raises(UnsupportedBaseCase):
        amalgam.is_trivial(make("a b c", ("a", "b", 3), ("b", "c", 3), ("a", "c", 3)), W("a"))


def test_unknown_vertices():
    with pytest.raises(GraphError):
        amalgam.is_trivial(FC3, W("x"))
    with pytest.raises(GraphError):
        amalgam.member_rewrite(FC3, W("s"), ["x"])


def _short_words(X, n):
    letters = [(v, e) for v in X for e in (1, -1)]
    for k in range(n + 1):
        for w in itertools.product(letters, repeat=k):
            if free_reduce(w) == list(w):
                yield list(w)


@pytest.mark.parametrize("g", [FC3, SQUARE])
def test_membership_against_exhaustive_search(g):
    rng = random.Random(17)
    solver = amalgam.amalgam_solver(g)
    subsets = [X for r in range(1, len(g)) for X in itertools.combinations(g.vertices, r)]
    picked = rng.sample(subsets, min(6, len(subsets)))
    if g is FC3:
        picked.append(("s", "t"))
    for X in picked:
        candidates = list(_short_words(X, 3))
        for _ in range(25):
            if rng.random() < 0.5:
                w = random_word(rng, g.vertices, rng.randint(0, 4))
            else:
                # an X-word disguised by a consequence of the relators
                w = rng.choice(candidates) + random_consequence(rng, g, 1, 1)
            got = solver.member_rewrite(w, X)
            witness = next((x for x in candidates if solver.is_trivial(w + inv(x))), None)
            if witness is not None:
                assert got is not None, (w, X)
            if got is not None:
                assert support(got) <= set(X)
                assert solver.is_trivial(w + inv(list(got)))


def test_membership_when_every_infinity_edge_is_inside():
    # V = {s, t} contains the only infinity edge; the answer comes from the retraction
    rng = random.Random(5)
    for _ in range(100):
        w = random_word(rng, FC3.vertices, rng.randint(0, 8))
        got = amalgam.member_rewrite(FC3, w, ["s", "t"])
        rho = retraction(FC3, w, ["s", "t"])
        if got is not None:
            assert free_reduce(got) == free_reduce(rho)
        else:
            assert not amalgam.is_trivial(FC3, w + inv(rho))


@given(st.sampled_from(SUPPORTED), st.data())
@settings(max_examples=200, deadline=None)
def test_word_times_inverse_is_trivial(g, data):
    w = data.draw(st.lists(st.tuples(st.sampled_from(g.vertices), st.sampled_from((1, -1))), max_size=12))
    assert amalgam.is_trivial(g, w + inv(w))


@given(st.sampled_from(SUPPORTED), st.data())
@settings(max_examples=200, deadline=None)
def test_congruence_under_one_relation(g, data):
    rels = relators(g)
    if not rels:
        return
    w = data.draw(st.lists(st.tuples(st.sampled_from(g.vertices), st.sampled_from((1, -1))), max_size=10))
    i = data.draw(st.integers(0, len(w)))
    r = data.draw(st.sampled_from(rels + [inv(x) for x in rels]))
    w2 = w[:i] + r + w[i:]
    assert amalgam.is_trivial(g, w + inv(w2))


@given(st.sampled_from(SUPPORTED), st.data())
@settings(max_examples=200, deadline=None)
def test_nontrivial_in_coxeter_group_means_nontrivial(g, data):
    w = data.draw(st.lists(st.tuples(st.sampled_from(g.vertices), st.sampled_from((1, -1))), max_size=12))
    if not image_in_W_is_trivial(g, w):
        assert not amalgam.is_trivial(g, w)


@given(st.data())
@settings(max_examples=200, deadline=None)
def test_free_product_matches_free_reduction(data):
    w = data.draw(st.lists(st.tuples(st.sampled_from(("s", "t")), st.sampled_from((1, -1))), max_size=20))
    assert amalgam.is_trivial(F2, w) == (not free_reduce(w))


@given(st.sampled_from([FC3, SQUARE, STAR]), st.data())
@settings(max_examples=150, deadline=None)
def test_reduced_form_shape_and_strategy_independence(g, data):
    w = data.draw(st.lists(st.tuples(st.sampled_from(g.vertices), st.sampled_from((1, -1))), max_size=14))
    solver = amalgam.amalgam_solver(g)
    left = solver.reduced_form(w, "left")
    right = solver.reduced_form(w, "right")
    assert left.length == right.length
    tree = solver.tree
    Z = set(tree.Z)
    for form in (left, right):
        sy = form.syllables
        if len(sy) == 1:
            assert not solver.sub(tree.factor_vertices(sy[0].factor)).is_trivial(sy[0].word)
        if len(sy) >= 2:
            assert all(a.factor != b.factor for a, b in zip(sy, sy[1:]))
            for x in sy:
                sub = solver.sub(tree.factor_vertices(x.factor))
                assert sub.member_rewrite(x.word, Z) is None


@given(st.sampled_from([SQUARE, STAR]), st.data())
@settings(max_examples=100, deadline=None)
def test_split_choice_does_not_matter(g, data):
    w = data.draw(st.lists(st.tuples(st.sampled_from(g.vertices), st.sampled_from((1, -1))), max_size=10))
    if data.draw(st.booleans()) and relators(g):
        w = w + data.draw(st.sampled_from(relators(g))) + inv(w)
    answers = {amalgam.is_trivial(g, w, edge=e) for e in g.infinity_edges()}
    assert len(answers) == 1


def test_determinism():
    w = W("s u t s^-1 u t^-1 s u")
    a = amalgam.reduced_form(FC3, w)
    b = amalgam.reduced_form(FC3, w)
    assert a == b and a.to_json() == b.to_json()
    assert amalgam.decomposition_tree(SQUARE).to_json() == amalgam.decomposition_tree(SQUARE).to_json()


def test_trace_records_each_step():
    steps = []
    amalgam.reduced_form(FC3, W("s u s u^-1 s^-1 u^-1"), trace=steps.append)
    assert steps[-1]["syllables"] == []
    assert {s["step"] for s in steps} <= {"merge", "delete", "cross"}
    assert all(isinstance(s["at"], int) for s in steps)
