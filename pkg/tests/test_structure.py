from __future__ import annotations

import copy
import itertools
import json
import random

import pytest

from artin_tits import amalgam, garside, structure
from artin_tits.errors import DerivationError
from artin_tits.graph import INF, connected_components, induced_subgraph, is_spherical
from oracles import A1, A2, A3, B2, B3, F2, FC3, G2, H3, I2, inv, make, pos

# affine A2 triangle with a pendant A3-making vertex: not FC, not 2-dimensional
ASSUMED_LEAF = make(
    "a b c d e", ("a", "b", 3), ("b", "c", 3), ("a", "c", 3), ("a", "d", 3), ("d", "e", INF)
)
# affine A2 triangle plus an infinity edge: the leaf is 2-dimensional
TWO_DIM_LEAF = make("a b c d", ("a", "b", 3), ("b", "c", 3), ("a", "c", 3), ("c", "d", INF))


def test_center_examples():
    desc = structure.center_description(A2)
    [comp] = desc.components
    assert comp.kind == "infinite_cyclic"
    assert garside.garside_structure(A2).equal(pos(comp.generator), pos("ststst"))

    desc = structure.center_description(F2)
    [comp] = desc.components
    assert comp.kind == "trivial"
    d = comp.derivation
    assert (d.X1, d.Y1, d.X2, d.Y2) == (("t",), ("s",), (), ())
    assert d.x2_in_y1 and d.y2_in_x1

    union = make("s t p q", ("s", "t", 3), ("p", "q", INF))
    desc = structure.center_description(union)
    assert [c.kind for c in desc.components] == ["infinite_cyclic", "trivial"]
    assert desc.statement() == "Z(A) = Z x 1"
    assert desc.rank == 1 and not desc.conditional


def test_rank_one_center_is_the_generator():
    [comp] = structure.center_description(A1).components
    assert comp.generator == ("s",)


def test_center_components_match_graph_components():
    g = make("a b c d e", ("a", "b", 4), ("c", "d", INF), ("d", "e", 3))
    desc = structure.center_description(g)
    assert [c.vertices for c in desc.components] == connected_components(g)
    for c in desc.components:
        if c.kind == "infinite_cyclic":
            assert is_spherical(induced_subgraph(g, c.vertices))


def test_fc_example_derivation():
    d = structure.center_derivation(FC3)
    assert d.edge == ("s", "t")
    assert (d.X1, d.X2, d.Y1, d.Y2, d.Z1) == (("t",), ("u",), ("s", "u"), (), ())
    assert structure.verify_center_derivation(FC3, d)


def test_swapped_sets_are_rejected():
    d = structure.center_derivation(FC3)
    bad = copy.deepcopy(d)
    bad.X1, bad.X2 = d.X2, d.X1
    assert not structure.verify_center_derivation(FC3, bad)
    problems = structure.check_center_derivation(FC3, bad)
    assert any("X1" in p for p in problems)


def test_tampered_edge_label_is_rejected():
    d = structure.center_derivation(FC3)
    tampered = make("s t u", ("s", "t", 3), ("s", "u", 3))
    assert not structure.verify_center_derivation(tampered, d)
    d2 = copy.deepcopy(d)
    d2.edge = ("s", "u")
    problems = structure.check_center_derivation(FC3, d2)
    assert any("not infinity" in p for p in problems)


def test_flipped_inclusion_flag_is_rejected():
    d = structure.center_derivation(FC3)
    d.x2_in_y1 = False
    assert not structure.verify_center_derivation(FC3, d)


def test_malformed_json_reports_path():
    doc = structure.center_derivation(FC3).to_json()
    del doc["X1_case"]["kind"]
    with pytest.raises(DerivationError) as info:
        structure.CenterDerivation.from_json(doc)
    assert info.value.path.startswith("$.X1_case")
    doc = structure.center_derivation(FC3).to_json()
    doc["X1"] = "t"
    with pytest.raises(DerivationError) as info:
        structure.CenterDerivation.from_json(doc)
    assert "X1" in info.value.path
    # malformed documents are errors, not a "false"
    with pytest.raises(DerivationError):
        structure.verify_center_derivation(FC3, doc)


def test_nested_derivation_round_trip():
    g = make("a b c d", ("a", "b", INF), ("b", "c", INF), ("c", "d", INF))
    d = structure.center_derivation(g)
    doc = json.loads(json.dumps(d.to_json()))
    assert structure.verify_center_derivation(g, doc)
    assert structure.CenterDerivation.from_json(doc).to_json() == d.to_json()


def test_assumption_is_carried():
    desc = structure.center_description(ASSUMED_LEAF)
    assert desc.conditional
    assert any(structure.CENTER_ASSUMPTION in a for c in desc.components for a in c.assumptions)
    cert = structure.torsion_certificate(ASSUMED_LEAF)
    assert not cert.unconditional
    # {a b c e} is the affine triangle times A1, a product of torsion-free groups;
    # {a b c d} contains the spherical triple {a b d}, so no known class covers it
    assert cert.assumptions == [f"{structure.TORSION_ASSUMPTION} ({{a b c d}})"]
    statuses = [leaf.status for leaf in cert.root.leaves()]
    assert statuses == ["known", "assumed"]


def test_known_classes_are_unconditional():
    cert = structure.torsion_certificate(TWO_DIM_LEAF)
    assert cert.unconditional
    statuses = {leaf.status for leaf in cert.root.leaves()}
    assert statuses == {"known", "spherical"}
    assert not structure.center_description(TWO_DIM_LEAF).conditional


def test_torsion_examples():
    cert = structure.torsion_certificate(A2)
    assert isinstance(cert.root, structure.TorsionLeaf)
    assert cert.root.status == "spherical" and cert.unconditional
    cert = structure.torsion_certificate(F2)
    assert isinstance(cert.root, structure.TorsionNode)
    assert [leaf.vertices for leaf in cert.root.leaves()] == [("t",), ("s",)]
    assert cert.unconditional


@pytest.mark.parametrize("g", [A2, F2, FC3, ASSUMED_LEAF, TWO_DIM_LEAF, make("a b c d", ("a", "b", INF), ("c", "d", INF), ("a", "c", 3))])
def test_torsion_leaves_match_decomposition(g):
    cert = structure.torsion_certificate(g)
    tree = amalgam.decomposition_tree(g)
    assert [leaf.vertices for leaf in cert.root.leaves()] == [leaf.vertices for leaf in tree.leaves()]
    doc = json.loads(json.dumps(cert.to_json()))
    assert structure.verify_torsion_certificate(g, doc)


def test_tampered_torsion_certificate():
    doc = structure.torsion_certificate(FC3).to_json()
    doc["tree"]["left"]["status"] = "assumed"
    assert not structure.verify_torsion_certificate(FC3, doc)
    problems = structure.check_torsion_certificate(FC3, doc)
    assert any("$.tree.left" in p for p in problems)


def _connected_graphs_with_infinity(n):
    names = "abcde"[:n]
    pairs = list(itertools.combinations(names, 2))
    rng = random.Random(n)
    out = []
    while len(out) < 15:
        labels = [rng.choice([2, 3, 4, 5, INF]) for _ in pairs]
        g = make(" ".join(names), *[(a, b, m) for (a, b), m in zip(pairs, labels) if m != 2])
        if g.infinity_edges() and len(connected_components(g)) == 1:
            out.append(g)
    return out


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_inclusions_hold_on_connected_graphs(n):
    for g in _connected_graphs_with_infinity(n):
        d = structure.center_derivation(g)
        assert set(d.X2) <= set(d.Y1) and set(d.Y2) <= set(d.X1)
        assert structure.verify_center_derivation(g, d)
        desc = structure.center_description(g)
        assert structure.verify_center_description(g, json.loads(json.dumps(desc.to_json())))


@pytest.mark.parametrize("g", [A1, A2, B2, G2, I2(5), A3, B3, H3])
def test_spherical_center_generator_properties(g):
    [comp] = structure.center_description(g).components
    z = pos(comp.generator)
    gs = garside.garside_structure(g)
    for v in g.vertices:
        assert gs.is_trivial(z + [(v, 1)] + inv(z) + [(v, -1)])
    for k in (1, 2, 3):
        for r in range(len(g)):
            for X in itertools.combinations(g.vertices, r):
                assert gs.member_rewrite(z * k, X) is None


def test_tampered_center_description():
    doc = structure.center_description(A2).to_json()
    for fake in ("s t s", "s^-1 t^-1 s^-1 t^-1 s^-1 t^-1", "s t x"):
        doc["components"][0]["generator"] = fake
        assert not structure.verify_center_description(A2, doc)
    doc["components"][0]["generator"] = "t s t s t s"
    assert structure.verify_center_description(A2, doc)
    doc = structure.center_description(make("a b c", ("a", "b", 3), ("b", "c", 3), ("a", "c", 3))).to_json()
    doc["components"][0]["kind"] = "conditional"
    assert not structure.verify_center_description(make("a b c", ("a", "b", 3), ("b", "c", 3), ("a", "c", 3)), doc)


def test_known_results_table():
    table = structure.known_results()
    assert set(table) >= {"torsion_free", "trivial_center"}
    assert structure.known_reference(FC3, "torsion_free") is not None
    tri = make("a b c", ("a", "b", 3), ("b", "c", 3), ("a", "c", 3))
    assert "two_dimensional" in structure.known_reference(tri, "trivial_center")
    assert structure.known_reference(induced_subgraph(ASSUMED_LEAF, "abcd"), "trivial_center") is None
