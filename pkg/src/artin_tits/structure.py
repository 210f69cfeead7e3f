"""Center descriptions and torsion-freeness certificates.

Both are derivation trees over the infinity-edge splitting.  A center
derivation for a connected graph with an infinity edge ``s - t`` records
the sets ``X1`` (component of ``G_X`` containing t), ``X2 = X - X1``,
``Y1`` (component of ``G_Y`` containing s), ``Y2 = Y - Y1`` and
``Z1 = X1 - {t}``, the inclusions ``X2 <= Y1`` and ``Y2 <= X1``, and one
sub-case each for ``X1`` (against ``Z1``) and ``Y1`` (against ``X2``):

* ``lemma``: the piece is spherical and the subset is proper, so the
  center of the piece meets the subset's parabolic trivially;
* ``derivation``: the piece has an infinity edge, recurse;
* ``known``: free of infinity, non-spherical, in a class with a published
  proof of trivial center;
* ``assumed``: free of infinity, non-spherical, otherwise.

Everything serializes to JSON and the verifiers accept the same JSON.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Iterator

from .amalgam import Leaf, Node, decomposition_tree, split_sets
from .errors import DerivationError, GraphError, WordParseError
from .garside import center_generator_spherical, garside_structure
from .graph import (
    INF,
    CoxeterGraph,
    classify,
    connected_components,
    induced_subgraph,
    is_free_of_infinity,
    is_spherical,
)
from .limits import Limits
from .words import format_word, parse_word, positive

CENTER_ASSUMPTION = "trivial center of connected non-spherical free-of-infinity Artin-Tits groups"
TORSION_ASSUMPTION = "free-of-infinity Artin-Tits groups are torsion free"
TORSION_STEP = "a finite-order element of A_X *_{A_Z} A_Y is conjugate into A_X or A_Y"


def known_results() -> dict:
    text = resources.files("artin_tits").joinpath("known_results.json").read_text(encoding="utf-8")
    return json.loads(text)


def known_reference(g: CoxeterGraph, prop: str) -> str | None:
    """First literature reference proving ``prop`` for a class containing ``g``."""
    report = classify(g)
    for entry in known_results()[prop]:
        if getattr(report, entry["class"]):
            return f"{entry['class']}: " + "; ".join(entry["references"])
    return None


# ---------------------------------------------------------------------------
# Center derivations


@dataclass
class SubCase:
    kind: str  # lemma | derivation | known | assumed
    vertices: tuple[str, ...]
    subset: tuple[str, ...]
    derivation: "CenterDerivation | None" = None
    reference: str | None = None
    assumption: str | None = None

    def to_json(self) -> dict:
        out: dict[str, Any] = {"kind": self.kind, "vertices": list(self.vertices), "subset": list(self.subset)}
        if self.derivation is not None:
            out["derivation"] = self.derivation.to_json()
        if self.reference is not None:
            out["reference"] = self.reference
        if self.assumption is not None:
            out["assumption"] = self.assumption
        return out

    @classmethod
    def from_json(cls, doc: Any, path: str) -> "SubCase":
        _require_dict(doc, path)
        kind = _field(doc, "kind", str, path)
        if kind not in ("lemma", "derivation", "known", "assumed"):
            raise DerivationError(f"unknown sub-case kind {kind!r}", path + ".kind")
        der = None
        if kind == "derivation":
            der = CenterDerivation.from_json(_field(doc, "derivation", dict, path), path + ".derivation")
        return cls(
            kind=kind,
            vertices=_vertex_list(doc, "vertices", path),
            subset=_vertex_list(doc, "subset", path),
            derivation=der,
            reference=doc.get("reference"),
            assumption=doc.get("assumption"),
        )


@dataclass
class CenterDerivation:
    edge: tuple[str, str]
    X: tuple[str, ...]
    Y: tuple[str, ...]
    Z: tuple[str, ...]
    X1: tuple[str, ...]
    X2: tuple[str, ...]
    Y1: tuple[str, ...]
    Y2: tuple[str, ...]
    Z1: tuple[str, ...]
    x2_in_y1: bool
    y2_in_x1: bool
    x1_case: SubCase
    y1_case: SubCase

    SETS = ("X", "Y", "Z", "X1", "X2", "Y1", "Y2", "Z1")

    def assumptions(self) -> list[str]:
        out = []
        for case in (self.x1_case, self.y1_case):
            if case.kind == "assumed":
                out.append(f"{case.assumption} ({{{' '.join(case.vertices)}}})")
            elif case.kind == "derivation" and case.derivation is not None:
                out.extend(case.derivation.assumptions())
        return out

    def to_json(self) -> dict:
        out: dict[str, Any] = {"edge": list(self.edge)}
        for name in self.SETS:
            out[name] = list(getattr(self, name))
        out["checks"] = {"X2_in_Y1": self.x2_in_y1, "Y2_in_X1": self.y2_in_x1}
        out["X1_case"] = self.x1_case.to_json()
        out["Y1_case"] = self.y1_case.to_json()
        return out

    @classmethod
    def from_json(cls, doc: Any, path: str = "$") -> "CenterDerivation":
        _require_dict(doc, path)
        edge = _vertex_list(doc, "edge", path)
        if len(edge) != 2:
            raise DerivationError("edge must list two vertices", path + ".edge")
        sets = {name: _vertex_list(doc, name, path) for name in cls.SETS}
        checks = _field(doc, "checks", dict, path)
        return cls(
            edge=(edge[0], edge[1]),
            **sets,
            x2_in_y1=_field(checks, "X2_in_Y1", bool, path + ".checks"),
            y2_in_x1=_field(checks, "Y2_in_X1", bool, path + ".checks"),
            x1_case=SubCase.from_json(_field(doc, "X1_case", dict, path), path + ".X1_case"),
            y1_case=SubCase.from_json(_field(doc, "Y1_case", dict, path), path + ".Y1_case"),
        )


def _require_dict(doc: Any, path: str) -> None:
    if not isinstance(doc, dict):
        raise DerivationError("expected an object", path)


def _field(doc: dict, key: str, typ: type, path: str):
    if key not in doc:
        raise DerivationError(f"missing field {key!r}", path)
    value = doc[key]
    if not isinstance(value, typ):
        raise DerivationError(f"field {key!r} should be {typ.__name__}", f"{path}.{key}")
    return value


def _vertex_list(doc: dict, key: str, path: str) -> tuple[str, ...]:
    value = _field(doc, key, list, path)
    if not all(isinstance(v, str) for v in value):
        raise DerivationError("expected a list of vertex names", f"{path}.{key}")
    return tuple(value)


def _component_containing(g: CoxeterGraph, v: str) -> tuple[str, ...]:
    return next(c for c in connected_components(g) if v in c)


def _sub_case(g: CoxeterGraph, piece: tuple[str, ...], subset: tuple[str, ...]) -> SubCase:
    h = induced_subgraph(g, piece)
    if is_spherical(h):
        return SubCase("lemma", piece, subset)
    if not is_free_of_infinity(h):
        return SubCase("derivation", piece, subset, derivation=center_derivation(h))
    ref = known_reference(h, "trivial_center")
    if ref is not None:
        return SubCase("known", piece, subset, reference=ref)
    return SubCase("assumed", piece, subset, assumption=CENTER_ASSUMPTION)


def _derivation_sets(g: CoxeterGraph, edge: tuple[str, str]) -> dict[str, tuple[str, ...]]:
    s, t = edge
    X, Y, Z = split_sets(g, edge)
    X1 = _component_containing(induced_subgraph(g, X), t)
    Y1 = _component_containing(induced_subgraph(g, Y), s)
    return {
        "X": X,
        "Y": Y,
        "Z": Z,
        "X1": X1,
        "X2": tuple(v for v in X if v not in X1),
        "Y1": Y1,
        "Y2": tuple(v for v in Y if v not in Y1),
        "Z1": tuple(v for v in X1 if v != t),
    }


def center_derivation(g: CoxeterGraph) -> CenterDerivation:
    """Trivial-center derivation for a connected graph with an infinity edge."""
    if len(connected_components(g)) != 1:
        raise GraphError("center derivations need a connected graph")
    edges = g.infinity_edges()
    if not edges:
        raise GraphError("center derivations need an infinity edge")
    edge = edges[0]
    sets = _derivation_sets(g, edge)
    return CenterDerivation(
        edge=edge,
        **sets,
        x2_in_y1=set(sets["X2"]) <= set(sets["Y1"]),
        y2_in_x1=set(sets["Y2"]) <= set(sets["X1"]),
        x1_case=_sub_case(g, sets["X1"], sets["Z1"]),
        y1_case=_sub_case(g, sets["Y1"], sets["X2"]),
    )


def check_center_derivation(g: CoxeterGraph, d: CenterDerivation | dict, path: str = "$") -> list[str]:
    """Independently recompute every recorded fact; return the failures."""
    if isinstance(d, dict):
        d = CenterDerivation.from_json(d, path)
    problems: list[str] = []
    s, t = d.edge
    if s not in g or t not in g or s == t:
        return [f"{path}.edge: {s}-{t} is not an edge of the graph"]
    if g.label(s, t) != INF:
        return [f"{path}.edge: m({s},{t}) = {g.label(s, t)} is not infinity"]
    if len(connected_components(g)) != 1:
        problems.append(f"{path}: graph is not connected")
    sets = _derivation_sets(g, (s, t))
    for name in CenterDerivation.SETS:
        if set(getattr(d, name)) != set(sets[name]) or len(getattr(d, name)) != len(sets[name]):
            problems.append(f"{path}.{name}: recorded {{{' '.join(getattr(d, name))}}}, expected {{{' '.join(sets[name])}}}")
    if not (set(sets["X2"]) <= set(sets["Y1"])) or not d.x2_in_y1:
        problems.append(f"{path}.checks.X2_in_Y1 fails")
    if not (set(sets["Y2"]) <= set(sets["X1"])) or not d.y2_in_x1:
        problems.append(f"{path}.checks.Y2_in_X1 fails")
    problems += _check_sub_case(g, d.x1_case, sets["X1"], sets["Z1"], path + ".X1_case")
    problems += _check_sub_case(g, d.y1_case, sets["Y1"], sets["X2"], path + ".Y1_case")
    return problems


def _check_sub_case(g: CoxeterGraph, case: SubCase, piece, subset, path: str) -> list[str]:
    if set(case.vertices) != set(piece) or set(case.subset) != set(subset):
        return [f"{path}: recorded sets do not match the graph"]
    h = induced_subgraph(g, piece)
    if case.kind == "lemma":
        out = []
        if not is_spherical(h):
            out.append(f"{path}: piece is not spherical")
        if not set(subset) < set(piece):
            out.append(f"{path}: subset is not proper")
        return out
    if is_spherical(h):
        return [f"{path}: spherical piece must use kind 'lemma'"]
    if case.kind == "derivation":
        if case.derivation is None:
            return [f"{path}: missing derivation"]
        return check_center_derivation(h, case.derivation, path + ".derivation")
    if not is_free_of_infinity(h):
        return [f"{path}: piece has an infinity edge and needs a derivation"]
    ref = known_reference(h, "trivial_center")
    if case.kind == "known":
        return [] if ref is not None and case.reference == ref else [f"{path}: reference does not match the known-results table"]
    # assumed
    if ref is not None:
        return [f"{path}: piece has a known result; it should not be assumed"]
    return [] if case.assumption == CENTER_ASSUMPTION else [f"{path}: unexpected assumption label"]


def verify_center_derivation(g: CoxeterGraph, d: CenterDerivation | dict) -> bool:
    return not check_center_derivation(g, d)


# ---------------------------------------------------------------------------
# Center descriptions


@dataclass
class ComponentCenter:
    vertices: tuple[str, ...]
    kind: str  # infinite_cyclic | trivial | conditional
    generator: tuple[str, ...] | None = None
    derivation: CenterDerivation | None = None
    reference: str | None = None
    assumptions: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out: dict[str, Any] = {"vertices": list(self.vertices), "kind": self.kind}
        if self.generator is not None:
            out["generator"] = format_word(positive(self.generator))
        if self.derivation is not None:
            out["derivation"] = self.derivation.to_json()
        if self.reference is not None:
            out["reference"] = self.reference
        if self.assumptions:
            out["assumptions"] = list(self.assumptions)
        return out


@dataclass
class CenterDescription:
    components: list[ComponentCenter]

    @property
    def rank(self) -> int:
        return sum(c.kind == "infinite_cyclic" for c in self.components)

    @property
    def conditional(self) -> bool:
        return any(c.kind == "conditional" for c in self.components)

    def statement(self) -> str:
        factors = ["Z" if c.kind == "infinite_cyclic" else "1" if c.kind == "trivial" else "1?" for c in self.components]
        text = "Z(A) = " + (" x ".join(factors) if factors else "1")
        if self.conditional:
            text += " (conditional; '1?' is trivial under the recorded assumptions)"
        return text

    def to_json(self) -> dict:
        return {
            "components": [c.to_json() for c in self.components],
            "rank": self.rank,
            "conditional": self.conditional,
            "statement": self.statement(),
        }


def center_description(g: CoxeterGraph, limits: Limits | None = None) -> CenterDescription:
    out = []
    for comp in connected_components(g):
        h = induced_subgraph(g, comp)
        if is_spherical(h):
            out.append(ComponentCenter(comp, "infinite_cyclic", generator=center_generator_spherical(h, limits)))
        elif is_free_of_infinity(h):
            ref = known_reference(h, "trivial_center")
            if ref is not None:
                out.append(ComponentCenter(comp, "trivial", reference=ref))
            else:
                out.append(ComponentCenter(comp, "conditional", assumptions=[f"{CENTER_ASSUMPTION} ({{{' '.join(comp)}}})"]))
        else:
            d = center_derivation(h)
            assumed = d.assumptions()
            out.append(ComponentCenter(comp, "conditional" if assumed else "trivial", derivation=d, assumptions=assumed))
    return CenterDescription(out)


def verify_center_description(g: CoxeterGraph, doc: CenterDescription | dict) -> bool:
    """Structural re-check of a center description (or its JSON)."""
    if isinstance(doc, CenterDescription):
        doc = doc.to_json()
    comps = doc.get("components") if isinstance(doc, dict) else None
    if not isinstance(comps, list):
        raise DerivationError("missing components list")
    expected = connected_components(g)
    if [tuple(c.get("vertices", ())) for c in comps] != expected:
        return False
    for i, (c, vs) in enumerate(zip(comps, expected)):
        h = induced_subgraph(g, vs)
        kind = c.get("kind")
        if is_spherical(h):
            if kind != "infinite_cyclic" or not isinstance(c.get("generator"), str):
                return False
            try:
                gen = parse_word(c["generator"], h.vertices)
            except WordParseError:
                return False
            # the positive generator of an infinite cyclic group is unique
            if any(e < 0 for _, e in gen):
                return False
            gs = garside_structure(h)
            if not gs.equal(gen, positive(center_generator_spherical(h))):
                return False
        elif "derivation" in c:
            der = CenterDerivation.from_json(c["derivation"], f"$.components[{i}].derivation")
            if check_center_derivation(h, der):
                return False
            if kind != ("conditional" if der.assumptions() else "trivial"):
                return False
        elif not is_free_of_infinity(h):
            return False
        elif kind != ("trivial" if known_reference(h, "trivial_center") else "conditional"):
            return False
    return True


# ---------------------------------------------------------------------------
# Torsion certificates


@dataclass
class TorsionLeaf:
    vertices: tuple[str, ...]
    status: str  # spherical | known | assumed
    reference: str | None = None
    assumption: str | None = None

    def leaves(self) -> Iterator["TorsionLeaf"]:
        yield self

    def to_json(self) -> dict:
        out: dict[str, Any] = {"vertices": list(self.vertices), "leaf": True, "status": self.status}
        if self.reference is not None:
            out["reference"] = self.reference
        if self.assumption is not None:
            out["assumption"] = self.assumption
        return out


@dataclass
class TorsionNode:
    vertices: tuple[str, ...]
    edge: tuple[str, str]
    X: tuple[str, ...]
    Y: tuple[str, ...]
    Z: tuple[str, ...]
    left: "TorsionLeaf | TorsionNode"
    right: "TorsionLeaf | TorsionNode"
    step: str = TORSION_STEP

    def leaves(self) -> Iterator[TorsionLeaf]:
        yield from self.left.leaves()
        yield from self.right.leaves()

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "leaf": False,
            "edge": list(self.edge),
            "X": list(self.X),
            "Y": list(self.Y),
            "Z": list(self.Z),
            "step": self.step,
            "left": self.left.to_json(),
            "right": self.right.to_json(),
        }


@dataclass
class TorsionCertificate:
    root: TorsionLeaf | TorsionNode

    @property
    def assumptions(self) -> list[str]:
        return [f"{leaf.assumption} ({{{' '.join(leaf.vertices)}}})" for leaf in self.root.leaves() if leaf.status == "assumed"]

    @property
    def unconditional(self) -> bool:
        return not self.assumptions

    def to_json(self) -> dict:
        return {"unconditional": self.unconditional, "assumptions": self.assumptions, "tree": self.root.to_json()}


def _torsion_tree(tree) -> TorsionLeaf | TorsionNode:
    if isinstance(tree, Leaf):
        h = tree.graph
        if is_spherical(h):
            return TorsionLeaf(tree.vertices, "spherical", reference=known_reference(h, "torsion_free"))
        # a direct product of torsion-free groups is torsion free
        refs = [known_reference(induced_subgraph(h, c), "torsion_free") for c in connected_components(h)]
        if all(r is not None for r in refs):
            return TorsionLeaf(tree.vertices, "known", reference=" + ".join(dict.fromkeys(refs)))
        return TorsionLeaf(tree.vertices, "assumed", assumption=TORSION_ASSUMPTION)
    assert isinstance(tree, Node)
    return TorsionNode(tree.vertices, tree.edge, tree.X, tree.Y, tree.Z, _torsion_tree(tree.left), _torsion_tree(tree.right))


def torsion_certificate(g: CoxeterGraph) -> TorsionCertificate:
    return TorsionCertificate(_torsion_tree(decomposition_tree(g)))


def check_torsion_certificate(g: CoxeterGraph, cert: TorsionCertificate | dict) -> list[str]:
    """Compare a certificate (or its JSON) against a fresh one for ``g``."""
    doc = cert.to_json() if isinstance(cert, TorsionCertificate) else cert
    _require_dict(doc, "$")
    tree = _field(doc, "tree", dict, "$")
    expected = torsion_certificate(g).to_json()
    problems = _diff(tree, expected["tree"], "$.tree")
    if doc.get("unconditional") != expected["unconditional"]:
        problems.append("$.unconditional does not match the leaves")
    return problems


def _diff(got: Any, want: Any, path: str) -> list[str]:
    if isinstance(want, dict):
        if not isinstance(got, dict):
            raise DerivationError("expected an object", path)
        out = []
        for key in want:
            if key not in got:
                raise DerivationError(f"missing field {key!r}", path)
            out += _diff(got[key], want[key], f"{path}.{key}")
        return out
    return [] if got == want else [f"{path}: recorded {got!r}, expected {want!r}"]


def verify_torsion_certificate(g: CoxeterGraph, cert: TorsionCertificate | dict) -> bool:
    return not check_torsion_certificate(g, cert)
