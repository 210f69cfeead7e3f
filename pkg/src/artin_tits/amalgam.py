"""Amalgamated-product decomposition along infinity edges.

For an edge ``s - t`` labelled infinity, with ``X = S - {s}``,
``Y = S - {t}`` and ``Z = S - {s, t}``, the group splits as
``A_X *_{A_Z} A_Y``.  Splitting recursively ends in free-of-infinity
leaves.  Words are solved by reducing syllabic expressions: delete trivial
syllables, merge neighbours from the same factor, and move a syllable
lying in ``A_Z`` across to its neighbour's factor.  An element is trivial
iff its reduced expression is empty.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Protocol, Sequence, Union

from .coxeter import coxeter_group
from .errors import GraphError, UnsupportedBaseCase
from .garside import garside_structure
from .graph import INF, CoxeterGraph, induced_subgraph, is_free_of_infinity, is_spherical, spherical_types
from .limits import DEFAULT_LIMITS, Limits
from .words import GroupWord, format_word, inverse, support

FACTOR_X = 1
FACTOR_Y = 2


# ---------------------------------------------------------------------------
# Decomposition tree


@dataclass(frozen=True)
class Leaf:
    graph: CoxeterGraph

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.graph.vertices

    def leaves(self) -> Iterator["Leaf"]:
        yield self

    def to_json(self) -> dict:
        types = spherical_types(self.graph)
        spherical = all(t is not None for t in types)
        return {
            "vertices": list(self.vertices),
            "leaf": True,
            "spherical": spherical,
            "types": types if spherical else None,
        }


@dataclass(frozen=True)
class Node:
    graph: CoxeterGraph
    edge: tuple[str, str]
    X: tuple[str, ...]
    Y: tuple[str, ...]
    Z: tuple[str, ...]
    left: "Tree"
    right: "Tree"

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.graph.vertices

    def leaves(self) -> Iterator[Leaf]:
        yield from self.left.leaves()
        yield from self.right.leaves()

    def factor_vertices(self, factor: int) -> tuple[str, ...]:
        return self.X if factor == FACTOR_X else self.Y

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "leaf": False,
            "edge": list(self.edge),
            "X": list(self.X),
            "Y": list(self.Y),
            "Z": list(self.Z),
            "left": self.left.to_json(),
            "right": self.right.to_json(),
        }


Tree = Union[Leaf, Node]


def split_sets(g: CoxeterGraph, edge: tuple[str, str]):
    s, t = edge
    if g.label(s, t) != INF:
        raise GraphError(f"edge {s} {t} is not labelled infinity")
    X = tuple(v for v in g.vertices if v != s)
    Y = tuple(v for v in g.vertices if v != t)
    Z = tuple(v for v in g.vertices if v not in (s, t))
    return X, Y, Z


@functools.lru_cache(maxsize=1024)
def decomposition_tree(g: CoxeterGraph, edge: tuple[str, str] | None = None) -> Tree:
    """Split along the lexicographically first infinity edge, recursively.

    ``edge`` forces the split at the root only.
    """
    if edge is None:
        if is_free_of_infinity(g):
            return Leaf(g)
        edge = g.infinity_edges()[0]
    else:
        edge = tuple(edge)
    X, Y, Z = split_sets(g, edge)
    return Node(
        g,
        edge,
        X,
        Y,
        Z,
        decomposition_tree(induced_subgraph(g, X)),
        decomposition_tree(induced_subgraph(g, Y)),
    )


def format_tree(tree: Tree, indent: str = "") -> str:
    if isinstance(tree, Leaf):
        types = spherical_types(tree.graph)
        kind = "+".join(types) if all(types) else "non-spherical"
        if not tree.vertices:
            kind = "trivial"
        return f"{indent}leaf {{{' '.join(tree.vertices)}}} [{kind}]"
    s, t = tree.edge
    lines = [
        f"{indent}split {s}-{t} (inf): X={{{' '.join(tree.X)}}} Y={{{' '.join(tree.Y)}}} Z={{{' '.join(tree.Z)}}}",
        format_tree(tree.left, indent + "  "),
        format_tree(tree.right, indent + "  "),
    ]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Syllabic expressions


@dataclass(frozen=True)
class Syllable:
    word: GroupWord
    factor: int

    def to_json(self) -> dict:
        return {"factor": self.factor, "word": format_word(self.word)}


@dataclass(frozen=True)
class ReducedForm:
    syllables: tuple[Syllable, ...]
    reduced: bool = True

    @property
    def length(self) -> int:
        return len(self.syllables)

    def to_json(self) -> dict:
        return {"length": self.length, "reduced": self.reduced, "syllables": [s.to_json() for s in self.syllables]}


class FactorOracle(Protocol):
    def is_trivial(self, word: GroupWord) -> bool: ...

    def member_rewrite(self, word: GroupWord, subset: Iterable[str]) -> GroupWord | None: ...


def _show(syl: Sequence[Syllable]) -> list[dict]:
    return [s.to_json() for s in syl]


def reduce_syllabic(
    node: Node,
    syllables: Sequence[Syllable],
    oracles: tuple[FactorOracle, FactorOracle],
    strategy: str = "left",
    trace: Callable[[dict], None] | None = None,
) -> ReducedForm:
    """Apply elementary reductions until none is left.

    ``oracles`` solve the word problem in ``A_X`` and ``A_Y`` and rewrite
    their elements of ``A_Z`` over ``Z``.  ``strategy`` picks the scan
    direction (``"left"`` or ``"right"``); the reduced length does not
    depend on it.
    """
    if strategy not in ("left", "right"):
        raise ValueError("strategy must be 'left' or 'right'")
    Z = frozenset(node.Z)
    factor_sets = {FACTOR_X: frozenset(node.X), FACTOR_Y: frozenset(node.Y)}
    for sy in syllables:
        if sy.factor not in factor_sets:
            raise ValueError(f"bad factor tag {sy.factor!r}")
        if not support(sy.word) <= factor_sets[sy.factor]:
            raise ValueError(f"syllable {format_word(sy.word)} uses generators outside factor {sy.factor}")

    trivial_memo: dict[Syllable, bool] = {}
    k_memo: dict[Syllable, GroupWord | None] = {}

    def trivial(sy: Syllable) -> bool:
        if sy not in trivial_memo:
            trivial_memo[sy] = not sy.word or oracles[sy.factor - 1].is_trivial(sy.word)
        return trivial_memo[sy]

    def in_k(sy: Syllable) -> GroupWord | None:
        if sy not in k_memo:
            if support(sy.word) <= Z:
                k_memo[sy] = sy.word
            else:
                k_memo[sy] = oracles[sy.factor - 1].member_rewrite(sy.word, Z)
        return k_memo[sy]

    def emit(step: str, **info) -> None:
        if trace is not None:
            trace({"step": step, **info, "syllables": _show(syl)})

    syl = list(syllables)
    forward = strategy == "left"
    while True:
        n = len(syl)
        pairs = range(n - 1) if forward else range(n - 2, -1, -1)
        singles = range(n) if forward else range(n - 1, -1, -1)

        i = next((i for i in pairs if syl[i].factor == syl[i + 1].factor), None)
        if i is not None:
            syl[i : i + 2] = [Syllable(syl[i].word + syl[i + 1].word, syl[i].factor)]
            emit("merge", at=i)
            continue

        i = next((i for i in singles if trivial(syl[i])), None)
        if i is not None:
            del syl[i]
            emit("delete", at=i)
            continue

        if n >= 2:
            i = next((i for i in singles if in_k(syl[i]) is not None), None)
            if i is not None:
                z = in_k(syl[i])
                if forward:
                    j = i + 1 if i + 1 < n else i - 1
                else:
                    j = i - 1 if i > 0 else i + 1
                other = syl[j]
                word = z + other.word if j > i else other.word + z
                lo = min(i, j)
                syl[lo : lo + 2] = [Syllable(word, other.factor)]
                emit("cross", at=i, into=j)
                continue
        break
    return ReducedForm(tuple(syl))


# ---------------------------------------------------------------------------
# Parabolic retraction


def parabolic_retraction(g: CoxeterGraph, word: Sequence, subset: Iterable[str], limits: Limits | None = None) -> GroupWord:
    """Image of ``word`` under the set retraction of A onto the parabolic A_V.

    Tracks the minimal representative ``r`` of the coset ``W_V u`` for the
    image ``u`` in W of each prefix.  A letter ``s^e`` contributes
    ``t^e`` exactly when ``r s r^-1`` is a generator ``t`` in V.  The map
    depends only on the group element and fixes A_V pointwise.
    """
    limits = limits or DEFAULT_LIMITS
    cg = coxeter_group(g, limits.max_words)
    V = sorted(g.index(v) for v in subset)
    r: tuple[int, ...] = ()
    out = []
    for v, e in word:
        s = g.index(v)
        rs = cg.reduce(r + (s,))
        if len(rs) < len(r):
            r = rs
            continue
        t = next((x for x in V if cg.left_descent(x, rs)), None)
        if t is None:
            r = rs
        else:
            out.append((g.vertices[t], e))
    return tuple(out)


# ---------------------------------------------------------------------------
# Solver


class AmalgamSolver:
    """Word problem and parabolic membership for one graph.

    Sub-solvers for induced subgraphs are shared through ``registry`` so
    every subgraph is solved by one instance.
    """

    def __init__(
        self,
        graph: CoxeterGraph,
        limits: Limits = DEFAULT_LIMITS,
        root_edge: tuple[str, str] | None = None,
        registry: dict | None = None,
    ):
        self.graph = graph
        self.limits = limits
        self.tree = decomposition_tree(graph, tuple(root_edge) if root_edge else None)
        self.registry = {} if registry is None else registry
        if root_edge is None:
            self.registry.setdefault(frozenset(graph.vertices), self)
        self._alt: dict[tuple[str, str], AmalgamSolver] = {}
        self._trivial: dict[GroupWord, bool] = {}
        self._member: dict[tuple[GroupWord, frozenset], GroupWord | None] = {}

    def sub(self, vertices: Iterable[str]) -> "AmalgamSolver":
        key = frozenset(vertices)
        hit = self.registry.get(key)
        if hit is None:
            hit = AmalgamSolver(induced_subgraph(self.graph, key), self.limits, None, self.registry)
        return hit

    def split_at(self, edge: tuple[str, str]) -> "AmalgamSolver":
        if isinstance(self.tree, Node) and self.tree.edge == edge:
            return self
        if edge not in self._alt:
            self._alt[edge] = AmalgamSolver(self.graph, self.limits, edge, self.registry)
        return self._alt[edge]

    def check_supported(self) -> None:
        for leaf in self.tree.leaves():
            if not is_spherical(leaf.graph):
                raise UnsupportedBaseCase(leaf.vertices)

    def _check_word(self, word: Sequence) -> GroupWord:
        w = tuple((v, e) for v, e in word)
        for v, _ in w:
            if v not in self.graph:
                raise GraphError(f"unknown vertex {v!r}")
        return w

    # -- word problem
    def syllabify(self, word: GroupWord) -> list[Syllable]:
        node = self.tree
        assert isinstance(node, Node)
        X = set(node.X)
        return [Syllable(((v, e),), FACTOR_X if v in X else FACTOR_Y) for v, e in word]

    def reduced_form(self, word: Sequence, strategy: str = "left", trace=None) -> ReducedForm:
        node = self.tree
        if not isinstance(node, Node):
            raise GraphError("reduced forms exist only at a split node")
        w = self._check_word(word)
        oracles = (self.sub(node.X), self.sub(node.Y))
        return reduce_syllabic(node, self.syllabify(w), oracles, strategy, trace)

    def is_trivial(self, word: Sequence) -> bool:
        w = self._check_word(word)
        hit = self._trivial.get(w)
        if hit is not None:
            return hit
        if not w:
            result = True
        elif isinstance(self.tree, Leaf):
            if not is_spherical(self.graph):
                raise UnsupportedBaseCase(self.graph.vertices)
            result = garside_structure(self.graph, self.limits).is_trivial(w)
        else:
            result = self.reduced_form(w).length == 0
        self._trivial[w] = result
        return result

    # -- parabolic membership
    def member_rewrite(self, word: Sequence, subset: Iterable[str]) -> GroupWord | None:
        w = self._check_word(word)
        V = frozenset(subset)
        unknown = V - set(self.graph.vertices)
        if unknown:
            raise GraphError("unknown vertices: " + ", ".join(sorted(unknown)))
        key = (w, V)
        if key in self._member:
            return self._member[key]
        result = self._member_uncached(w, V)
        if result is not None:
            if not support(result) <= V or not self.is_trivial(w + inverse(result)):
                raise AssertionError(f"membership rewrite of {format_word(w)} failed verification")
        self._member[key] = result
        return result

    def _member_uncached(self, w: GroupWord, V: frozenset) -> GroupWord | None:
        if support(w) <= V:
            return w
        if not V:
            return () if self.is_trivial(w) else None
        if isinstance(self.tree, Leaf):
            if not is_spherical(self.graph):
                raise UnsupportedBaseCase(self.graph.vertices)
            return garside_structure(self.graph, self.limits).member_rewrite(w, V)

        candidates = [self.tree.edge] + [e for e in self.graph.infinity_edges() if e != self.tree.edge]
        edge = next((e for e in candidates if e[0] not in V or e[1] not in V), None)
        if edge is None:
            # every infinity edge lies inside V: fall back on the retraction
            rho = parabolic_retraction(self.graph, w, V, self.limits)
            return rho if self.is_trivial(w + inverse(rho)) else None

        # V misses an endpoint, so A_V lies inside one factor
        solver = self.split_at(edge)
        form = solver.reduced_form(w)
        if form.length == 0:
            return ()
        if form.length >= 2:
            return None
        syl = form.syllables[0]
        factor = solver.tree.factor_vertices(syl.factor)
        return self.sub(factor).member_rewrite(syl.word, V & frozenset(factor))


@functools.lru_cache(maxsize=64)
def amalgam_solver(g: CoxeterGraph, limits: Limits = DEFAULT_LIMITS) -> AmalgamSolver:
    return AmalgamSolver(g, limits)


def is_trivial(
    g: CoxeterGraph,
    w: Sequence,
    limits: Limits | None = None,
    edge: tuple[str, str] | None = None,
) -> bool:
    """Decide ``w == 1`` in A_G for graphs whose decomposition leaves are spherical.

    Raises UnsupportedBaseCase otherwise.  ``edge`` forces the root split.
    """
    limits = limits or DEFAULT_LIMITS
    limits.check_length(w)
    solver = amalgam_solver(g, limits)
    solver.check_supported()
    if edge is not None:
        solver = solver.split_at(tuple(edge))
    return solver.is_trivial(w)


def member_rewrite(g: CoxeterGraph, w: Sequence, subset: Iterable[str], limits: Limits | None = None) -> GroupWord | None:
    """A word over ``subset`` representing ``w``, or None if ``w`` is not in A_subset."""
    limits = limits or DEFAULT_LIMITS
    limits.check_length(w)
    solver = amalgam_solver(g, limits)
    solver.check_supported()
    return solver.member_rewrite(w, subset)


def reduced_form(
    g: CoxeterGraph,
    w: Sequence,
    limits: Limits | None = None,
    strategy: str = "left",
    trace=None,
    edge: tuple[str, str] | None = None,
) -> ReducedForm:
    """Reduced syllabic expression of ``w`` at the root split of ``g``."""
    limits = limits or DEFAULT_LIMITS
    limits.check_length(w)
    solver = amalgam_solver(g, limits)
    solver.check_supported()
    if edge is not None:
        solver = solver.split_at(tuple(edge))
    return solver.reduced_form(w, strategy, trace)
