"""Exact arithmetic in Coxeter groups by word rewriting.

Words are reduced with Tits' solution to the word problem: a word is
non-reduced iff some sequence of braid moves exposes two equal adjacent
letters, which are then deleted.  Finite groups can additionally be tabulated
(``FiniteCoxeterTable``) so that products and descents become lookups.
"""

from __future__ import annotations

import functools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import GraphError, NotSphericalError, ResourceLimitError
from .graph import INF, CoxeterGraph, connected_components, is_spherical

DEFAULT_MAX_ELEMENTS = 200_000
DEFAULT_MAX_WORDS = 1_000_000

COMPLETE = "complete"
OVERFLOW = "overflow"


def pi_word(a, b, m: int) -> tuple:
    """Alternating word ``a b a b ...`` of length ``m``."""
    if m == INF:
        raise ValueError("pi_word needs a finite m")
    if isinstance(m, bool) or not isinstance(m, int) or m < 2:
        raise ValueError(f"pi_word needs an integer m >= 2, got {m!r}")
    if a == b:
        raise ValueError("pi_word needs two distinct letters")
    return tuple(a if k % 2 == 0 else b for k in range(m))


def _cancel_pairs(w: Sequence[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in w:
        if out and out[-1] == x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def _adjacent_repeat(w: Sequence[int]) -> int | None:
    for j in range(len(w) - 1):
        if w[j] == w[j + 1]:
            return j
    return None


class CoxeterGroup:
    """Word arithmetic in W for one graph; letters are vertex indices internally."""

    def __init__(self, graph: CoxeterGraph, max_words: int = DEFAULT_MAX_WORDS):
        self.graph = graph
        self.max_words = max_words
        n = len(graph)
        self.rank = n
        self._alt: dict[tuple[int, int], tuple[tuple[int, ...], tuple[int, ...]]] = {}
        vs = graph.vertices
        for i in range(n):
            for j in range(n):
                if i != j:
                    m = graph.label(vs[i], vs[j])
                    if m != INF:
                        self._alt[(i, j)] = (pi_word(i, j, m), pi_word(j, i, m))
        self._reduce_cache: dict[tuple[int, ...], tuple[int, ...]] = {}

    # -- conversions
    def encode(self, word: Iterable[str]) -> tuple[int, ...]:
        try:
            return tuple(self.graph.index(v) for v in word)
        except KeyError as exc:
            raise GraphError(f"unknown vertex {exc.args[0]!r}") from None

    def decode(self, word: Iterable[int]) -> tuple[str, ...]:
        vs = self.graph.vertices
        return tuple(vs[i] for i in word)

    # -- braid moves
    def braid_neighbors(self, w: tuple[int, ...]):
        for i in range(len(w) - 1):
            pair = self._alt.get((w[i], w[i + 1]))
            if pair is None:
                continue
            src, dst = pair
            m = len(src)
            if w[i : i + m] == src:
                yield w[:i] + dst + w[i + m :]

    def braid_class(self, w: tuple[int, ...]) -> set[tuple[int, ...]]:
        """All words reachable from ``w`` by braid moves (no deletions)."""
        seen = {w}
        queue = deque([w])
        while queue:
            x = queue.popleft()
            for y in self.braid_neighbors(x):
                if y not in seen:
                    seen.add(y)
                    if len(seen) > self.max_words:
                        raise ResourceLimitError(f"braid class exceeds {self.max_words} words")
                    queue.append(y)
        return seen

    def _find_deletion(self, w: tuple[int, ...]) -> tuple[int, ...] | None:
        seen = {w}
        queue = deque([w])
        while queue:
            x = queue.popleft()
            for y in self.braid_neighbors(x):
                if y in seen:
                    continue
                j = _adjacent_repeat(y)
                if j is not None:
                    return y[:j] + y[j + 2 :]
                seen.add(y)
                if len(seen) > self.max_words:
                    raise ResourceLimitError(f"word-set cap {self.max_words} exceeded")
                queue.append(y)
        return None

    def reduce(self, w: Sequence[int]) -> tuple[int, ...]:
        """A reduced word for the element represented by ``w``."""
        start = _cancel_pairs(w)
        cached = self._reduce_cache.get(start)
        if cached is not None:
            return cached
        cur = start
        while True:
            shorter = self._find_deletion(cur)
            if shorter is None:
                break
            cur = _cancel_pairs(shorter)
        self._reduce_cache[start] = cur
        return cur

    def length(self, w: Sequence[int]) -> int:
        return len(self.reduce(w))

    def is_identity(self, w: Sequence[int]) -> bool:
        return not self.reduce(w)

    def canonical(self, w: Sequence[int]) -> tuple[int, ...]:
        """ShortLex-least reduced word (letters ordered by declaration)."""
        return min(self.braid_class(self.reduce(w)))

    def left_descent(self, s: int, w: Sequence[int]) -> bool:
        """True iff ``l(s w) < l(w)``."""
        return self.length((s, *w)) < self.length(w)


@functools.lru_cache(maxsize=256)
def coxeter_group(g: CoxeterGraph, max_words: int = DEFAULT_MAX_WORDS) -> CoxeterGroup:
    return CoxeterGroup(g, max_words)


def is_identity_in_W(g: CoxeterGraph, w: Iterable[str], max_words: int = DEFAULT_MAX_WORDS) -> bool:
    cg = coxeter_group(g, max_words)
    return cg.is_identity(cg.encode(w))


def reduced_word(g: CoxeterGraph, w: Iterable[str], max_words: int = DEFAULT_MAX_WORDS) -> tuple[str, ...]:
    cg = coxeter_group(g, max_words)
    return cg.decode(cg.reduce(cg.encode(w)))


def canonical_word(g: CoxeterGraph, w: Iterable[str], max_words: int = DEFAULT_MAX_WORDS) -> tuple[str, ...]:
    cg = coxeter_group(g, max_words)
    return cg.decode(cg.canonical(cg.encode(w)))


# ---------------------------------------------------------------------------
# Enumeration


class FiniteCoxeterTable:
    """Multiplication tables of a finite Coxeter group by its generators.

    Element ``e`` has canonical word ``words[e]``; ``right[e][i]`` is
    ``e s_i`` and ``left[e][i]`` is ``s_i e``.  Element 0 is the identity.
    """

    def __init__(self, graph: CoxeterGraph, words, right, inv):
        self.graph = graph
        self.rank = len(graph)
        self.words: list[tuple[int, ...]] = words
        self.right: list[list[int]] = right
        self.inv: list[int] = inv
        self.left = [[inv[right[inv[e]][i]] for i in range(self.rank)] for e in range(len(words))]
        self.length = [len(w) for w in words]
        self.longest = max(range(len(words)), key=self.length.__getitem__)
        self.right_descents = [
            frozenset(i for i in range(self.rank) if self.length[right[e][i]] < self.length[e]) for e in range(len(words))
        ]
        self.left_descents = [
            frozenset(i for i in range(self.rank) if self.length[self.left[e][i]] < self.length[e])
            for e in range(len(words))
        ]
        self._index = {w: e for e, w in enumerate(words)}

    def __len__(self) -> int:
        return len(self.words)

    def element(self, word: Iterable[int]) -> int:
        e = 0
        for i in word:
            e = self.right[e][i]
        return e

    def mul(self, a: int, b: int) -> int:
        for i in self.words[b]:
            a = self.right[a][i]
        return a

    def generator(self, i: int) -> int:
        return self.right[0][i]

    def canonical_names(self, e: int) -> tuple[str, ...]:
        vs = self.graph.vertices
        return tuple(vs[i] for i in self.words[e])

    def element_of_canonical(self, word: tuple[int, ...]) -> int:
        return self._index[word]


@dataclass(frozen=True)
class EnumerationResult:
    status: str
    cap: int
    elements: frozenset | None = None
    order: int | None = None
    table: FiniteCoxeterTable | None = field(default=None, repr=False, compare=False)

    @property
    def complete(self) -> bool:
        return self.status == COMPLETE


def _build_table(g: CoxeterGraph, cap: int, max_words: int) -> FiniteCoxeterTable | None:
    cg = CoxeterGroup(g, max_words)
    n = len(g)
    index: dict[tuple[int, ...], int] = {(): 0}
    canon: list[tuple[int, ...]] = [()]
    classes: dict[int, set] = {0: {()}}
    right: list[list[int]] = [[-1] * n]
    queue = deque([0])
    while queue:
        e = queue.popleft()
        cls = classes.pop(e)
        ends = {}
        for w in cls:
            if w:
                ends.setdefault(w[-1], w)
        for i in range(n):
            if i in ends:
                right[e][i] = index[ends[i][:-1]]
                continue
            cand = canon[e] + (i,)
            f = index.get(cand)
            if f is None:
                if len(canon) >= cap:
                    return None
                new_cls = cg.braid_class(cand)
                f = len(canon)
                for w in new_cls:
                    index[w] = f
                if len(index) > max_words:
                    raise ResourceLimitError(f"enumeration stores more than {max_words} reduced words")
                canon.append(min(new_cls))
                classes[f] = new_cls
                right.append([-1] * n)
                queue.append(f)
            right[e][i] = f
    inv = [index[tuple(reversed(w))] for w in canon]
    return FiniteCoxeterTable(g, canon, right, inv)


@functools.lru_cache(maxsize=64)
def _cached_enumeration(g: CoxeterGraph, cap: int, max_words: int) -> EnumerationResult:
    table = _build_table(g, cap, max_words)
    if table is None:
        return EnumerationResult(status=OVERFLOW, cap=cap)
    elements = frozenset(table.canonical_names(e) for e in range(len(table)))
    return EnumerationResult(status=COMPLETE, cap=cap, elements=elements, order=len(table), table=table)


def enumerate_W(g: CoxeterGraph, cap: int = DEFAULT_MAX_ELEMENTS, max_words: int = DEFAULT_MAX_WORDS) -> EnumerationResult:
    """Breadth-first closure of the identity under right multiplication by generators."""
    if cap < 1:
        raise ValueError("cap must be positive")
    return _cached_enumeration(g, cap, max_words)


def order_in_W(g: CoxeterGraph, w: Sequence[str], cap: int = 1000, max_words: int = DEFAULT_MAX_WORDS) -> int | None:
    """Least ``k >= 1`` with ``w^k = 1``, or None if none is found up to ``cap``."""
    cg = coxeter_group(g, max_words)
    step = cg.encode(w)
    cur: tuple[int, ...] = ()
    for k in range(1, cap + 1):
        cur = cg.reduce(cur + step)
        if not cur:
            return k
    return None


def coxeter_number(g: CoxeterGraph, order: Sequence[str] | None = None, max_words: int = DEFAULT_MAX_WORDS) -> int:
    """Order of the Coxeter element ``s_1 ... s_n`` (declaration order by default)."""
    if len(g) == 0 or len(connected_components(g)) != 1:
        raise GraphError("coxeter_number needs a connected, nonempty graph")
    if not is_spherical(g):
        raise NotSphericalError("coxeter_number needs a spherical graph")
    seq = tuple(order) if order is not None else g.vertices
    if sorted(seq) != sorted(g.vertices):
        raise GraphError("ordering must list every vertex exactly once")
    h = order_in_W(g, seq, cap=10_000, max_words=max_words)
    assert h is not None  # finite group: the Coxeter element has finite order
    return h
