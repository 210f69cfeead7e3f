"""Coxeter graphs: data model, text format, induced subgraphs and classification.

Labels are stored on unordered vertex pairs.  A missing pair means the
label 2 (commuting generators); ``INF`` marks an edge labelled infinity.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import GraphError, GraphParseError

INF = math.inf

_FORBIDDEN_ID_CHARS = set("^:#")


def _check_vertex_id(v: str) -> None:
    if not isinstance(v, str) or not v or any(c.isspace() for c in v):
        raise GraphError(f"invalid vertex identifier {v!r}")
    if _FORBIDDEN_ID_CHARS & set(v):
        raise GraphError(f"vertex identifier {v!r} contains one of '^', ':', '#'")


def _check_label(m) -> None:
    if m == INF:
        return
    if isinstance(m, bool) or not isinstance(m, int) or m < 2:
        raise GraphError(f"label must be an integer >= 2 or infinity, got {m!r}")


class CoxeterGraph:
    """An immutable Coxeter graph.

    ``vertices`` keeps declaration order, which fixes every tie-break in
    the toolkit (ShortLex words, edge order, generator order in products).
    """

    __slots__ = ("_vertices", "_index", "_labels", "_hash")

    def __init__(self, vertices: Iterable[str], labels: Mapping | Iterable = ()):
        vs = tuple(vertices)
        for v in vs:
            _check_vertex_id(v)
        if len(set(vs)) != len(vs):
            raise GraphError("duplicate vertex identifier")
        index = {v: i for i, v in enumerate(vs)}
        items = labels.items() if isinstance(labels, Mapping) else labels
        stored: dict[frozenset, int | float] = {}
        for pair, m in items:
            ends = tuple(pair)
            if len(ends) == 1:
                raise GraphError(f"self-loop on {ends[0]!r}")
            a, b = ends
            if a not in index or b not in index:
                raise GraphError(f"edge endpoint not a vertex: {a!r}, {b!r}")
            if a == b:
                raise GraphError(f"self-loop on {a!r}")
            _check_label(m)
            key = frozenset((a, b))
            if key in stored:
                raise GraphError(f"duplicate edge {a!r} {b!r}")
            if m != 2:
                stored[key] = m
        self._vertices = vs
        self._index = index
        self._labels = MappingProxyType(stored)
        self._hash = hash((vs, frozenset(stored.items())))

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def labels(self) -> Mapping[frozenset, int | float]:
        """Stored labels (only pairs whose label is not 2)."""
        return self._labels

    def index(self, v: str) -> int:
        return self._index[v]

    def __contains__(self, v) -> bool:
        return v in self._index

    def __len__(self) -> int:
        return len(self._vertices)

    def label(self, a: str, b: str):
        if a == b:
            raise GraphError("diagonal entries are not labels")
        if a not in self._index or b not in self._index:
            raise GraphError(f"unknown vertex in pair ({a!r}, {b!r})")
        return self._labels.get(frozenset((a, b)), 2)

    def edges(self) -> list[tuple[str, str, int | float]]:
        """Stored edges ``(a, b, m)`` with ``a`` declared before ``b``, in lexicographic order."""
        out = []
        for key, m in self._labels.items():
            a, b = sorted(key, key=self._index.__getitem__)
            out.append((a, b, m))
        out.sort(key=lambda e: (self._index[e[0]], self._index[e[1]]))
        return out

    def infinity_edges(self) -> list[tuple[str, str]]:
        return [(a, b) for a, b, m in self.edges() if m == INF]

    def neighbors(self, v: str) -> list[str]:
        """Vertices joined to ``v`` by an edge (label >= 3, including infinity)."""
        return [u for u in self._vertices if u != v and self.label(u, v) >= 3]

    def sort_vertices(self, vs: Iterable[str]) -> tuple[str, ...]:
        return tuple(sorted(vs, key=self._index.__getitem__))

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoxeterGraph):
            return NotImplemented
        return self._vertices == other._vertices and dict(self._labels) == dict(other._labels)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        edges = ", ".join(f"{a}-{b}:{_fmt_label(m)}" for a, b, m in self.edges())
        return f"CoxeterGraph([{' '.join(self._vertices)}]; {edges})"


def _fmt_label(m) -> str:
    return "inf" if m == INF else str(m)


# ---------------------------------------------------------------------------
# Text format


def parse_graph(text: str, source: str = "<graph>") -> CoxeterGraph:
    """Parse the ``vertices:`` / ``edge:`` text format."""
    vertices: list[str] | None = None
    labels: dict[frozenset, int | float] = {}
    seen_edges: set[frozenset] = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        stripped = line.lstrip()
        if not stripped or stripped.startswith("#"):
            continue
        indent = len(line) - len(stripped)
        key, sep, rest = stripped.partition(":")
        if not sep:
            raise GraphParseError("expected 'vertices:' or 'edge:'", lineno, indent + 1, source)
        key = key.strip()
        tokens = list(_tokens(rest, indent + len(key) + 2))
        if key == "vertices":
            if vertices is not None:
                raise GraphParseError("second 'vertices:' line", lineno, indent + 1, source)
            vertices = []
            for tok, col in tokens:
                if tok in vertices:
                    raise GraphParseError(f"duplicate vertex {tok!r}", lineno, col, source)
                if _FORBIDDEN_ID_CHARS & set(tok):
                    raise GraphParseError(f"invalid vertex identifier {tok!r}", lineno, col, source)
                vertices.append(tok)
        elif key == "edge":
            if len(tokens) != 3:
                col = tokens[3][1] if len(tokens) > 3 else len(line) + 1
                raise GraphParseError("expected 'edge: <vertex> <vertex> <label>'", lineno, col, source)
            (a, ca), (b, cb), (lab, cl) = tokens
            declared = vertices or []
            if a not in declared:
                raise GraphParseError(f"edge endpoint {a!r} not declared", lineno, ca, source)
            if b not in declared:
                raise GraphParseError(f"edge endpoint {b!r} not declared", lineno, cb, source)
            if a == b:
                raise GraphParseError(f"self-loop on {a!r}", lineno, cb, source)
            if lab == "inf":
                m: int | float = INF
            else:
                try:
                    m = int(lab)
                except ValueError:
                    raise GraphParseError(f"bad label {lab!r}", lineno, cl, source) from None
                if m < 2:
                    raise GraphParseError(f"label must be >= 2, got {m}", lineno, cl, source)
            pair = frozenset((a, b))
            if pair in seen_edges:
                raise GraphParseError(f"duplicate edge {a} {b}", lineno, ca, source)
            seen_edges.add(pair)
            labels[pair] = m
        else:
            raise GraphParseError(f"unknown directive {key!r}", lineno, indent + 1, source)

    if vertices is None:
        raise GraphParseError("missing 'vertices:' line", 1, 1, source)
    return CoxeterGraph(vertices, labels)


def _tokens(text: str, offset: int) -> Iterator[tuple[str, int]]:
    col = 0
    for tok in text.split():
        col = text.index(tok, col)
        yield tok, offset + col
        col += len(tok)


def serialize_graph(g: CoxeterGraph) -> str:
    lines = ["vertices: " + " ".join(g.vertices)]
    lines += [f"edge: {a} {b} {_fmt_label(m)}" for a, b, m in g.edges()]
    return "\n".join(lines) + "\n"


def load_graph(path) -> CoxeterGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read(), source=str(path))


# ---------------------------------------------------------------------------
# Subgraphs and components


def induced_subgraph(g: CoxeterGraph, subset: Iterable[str]) -> CoxeterGraph:
    sub = set(subset)
    unknown = sub - set(g.vertices)
    if unknown:
        raise GraphError("unknown vertices: " + ", ".join(sorted(unknown)))
    vs = [v for v in g.vertices if v in sub]
    labels = {k: m for k, m in g.labels.items() if k <= sub}
    return CoxeterGraph(vs, labels)


def connected_components(g: CoxeterGraph) -> list[tuple[str, ...]]:
    """Components under the relation ``m >= 3``, each in declaration order.

    Components are listed by their first vertex.
    """
    seen: set[str] = set()
    out = []
    for v in g.vertices:
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in g.neighbors(x):
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        out.append(g.sort_vertices(comp))
    return out


def is_free_of_infinity(g: CoxeterGraph) -> bool:
    return all(m != INF for m in g.labels.values())


# ---------------------------------------------------------------------------
# Finite-type catalog


def _catalog(n: int, labels_present: Sequence) -> list[tuple[str, dict[tuple[int, int], int]]]:
    """Connected spherical Coxeter graphs on vertices ``0..n-1``."""
    path = {(i, i + 1): 3 for i in range(n - 1)}
    out: list[tuple[str, dict]] = []
    if n == 1:
        return [("A1", {})]
    if n == 2:
        return [
            (("A2" if m == 3 else "B2" if m == 4 else f"I2({m})"), {(0, 1): m})
            for m in sorted(set(labels_present))
            if m != INF and m >= 3
        ]
    out.append((f"A{n}", dict(path)))
    out.append((f"B{n}", {**path, (n - 2, n - 1): 4}))
    if n >= 4:
        d = {(i, i + 1): 3 for i in range(n - 2)}
        d[(n - 3, n - 1)] = 3
        out.append((f"D{n}", d))
    if n in (6, 7, 8):
        e = {(i, i + 1): 3 for i in range(n - 2)}
        e[(2, n - 1)] = 3
        out.append((f"E{n}", e))
    if n == 4:
        out.append(("F4", {(0, 1): 3, (1, 2): 4, (2, 3): 3}))
    if n in (3, 4):
        out.append((f"H{n}", {**path, (n - 2, n - 1): 5}))
    return out


def _isomorphic(vs: Sequence[str], label, pattern: dict[tuple[int, int], int]) -> bool:
    n = len(vs)
    plab = {}
    for (i, j), m in pattern.items():
        plab[(i, j)] = plab[(j, i)] = m

    def pl(i, j):
        return plab.get((i, j), 2)

    if sorted(m for m in pattern.values()) != sorted(
        label(a, b) for a, b in itertools.combinations(vs, 2) if label(a, b) != 2
    ):
        return False
    deg_g = {v: sum(1 for u in vs if u != v and label(u, v) != 2) for v in vs}
    deg_p = [sum(1 for j in range(n) if j != i and pl(i, j) != 2) for i in range(n)]

    order = list(vs)
    assign: dict[str, int] = {}
    used = [False] * n

    def extend(k: int) -> bool:
        if k == n:
            return True
        v = order[k]
        for j in range(n):
            if used[j] or deg_p[j] != deg_g[v]:
                continue
            if all(label(v, u) == pl(j, ju) for u, ju in assign.items()):
                assign[v] = j
                used[j] = True
                if extend(k + 1):
                    return True
                del assign[v]
                used[j] = False
        return False

    return extend(0)


def spherical_type_name(g: CoxeterGraph) -> str | None:
    """Catalog name (e.g. ``"B3"``) of a connected graph, or None if not spherical."""
    vs = g.vertices
    if not vs:
        return None
    if len(connected_components(g)) != 1:
        raise GraphError("spherical_type_name expects a connected graph")
    if not is_free_of_infinity(g):
        return None
    present = list(g.labels.values())
    for name, pattern in _catalog(len(vs), present):
        if _isomorphic(vs, g.label, pattern):
            return name
    return None


def spherical_types(g: CoxeterGraph) -> list[str | None]:
    return [spherical_type_name(induced_subgraph(g, c)) for c in connected_components(g)]


def is_spherical(g: CoxeterGraph) -> bool:
    """True iff every component matches the finite-type catalog (the empty graph is spherical)."""
    return all(name is not None for name in spherical_types(g))


# ---------------------------------------------------------------------------
# Classification


@dataclass(frozen=True)
class ClassificationReport:
    spherical: bool
    free_of_infinity: bool
    fc_type: bool
    large: bool
    extra_large: bool
    two_dimensional: bool
    connected: bool
    components: list[tuple[str, ...]]
    component_types: list[str | None] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "spherical": self.spherical,
            "free_of_infinity": self.free_of_infinity,
            "fc_type": self.fc_type,
            "large": self.large,
            "extra_large": self.extra_large,
            "two_dimensional": self.two_dimensional,
            "connected": self.connected,
            "components": [list(c) for c in self.components],
            "component_types": list(self.component_types),
        }


def _subsets(vs: Sequence[str], min_size: int = 0) -> Iterator[tuple[str, ...]]:
    for k in range(min_size, len(vs) + 1):
        yield from itertools.combinations(vs, k)


def is_fc_type(g: CoxeterGraph) -> bool:
    """Every free-of-infinity full subgraph is spherical (checked over all subsets)."""
    for sub in _subsets(g.vertices):
        h = induced_subgraph(g, sub)
        if is_free_of_infinity(h) and not is_spherical(h):
            return False
    return True


def is_two_dimensional(g: CoxeterGraph) -> bool:
    # Full subgraphs of spherical graphs are spherical, so 3-subsets suffice.
    return not any(is_spherical(induced_subgraph(g, sub)) for sub in itertools.combinations(g.vertices, 3))


def classify(g: CoxeterGraph) -> ClassificationReport:
    comps = connected_components(g)
    pairs = list(itertools.combinations(g.vertices, 2))
    types = spherical_types(g)
    return ClassificationReport(
        spherical=all(t is not None for t in types),
        free_of_infinity=is_free_of_infinity(g),
        fc_type=is_fc_type(g),
        large=all(g.label(a, b) >= 3 for a, b in pairs),
        extra_large=all(g.label(a, b) >= 4 for a, b in pairs),
        two_dimensional=is_two_dimensional(g),
        connected=len(comps) <= 1,
        components=comps,
        component_types=types,
    )
