"""Spherical-type Artin-Tits groups through their Garside structure.

Simple elements are the elements of the finite Coxeter group W, held as
indices into a ``FiniteCoxeterTable`` and shown as ShortLex-least reduced
words.  The Garside element Delta lifts the longest element of W.

An element is stored as ``Delta^p x_1 ... x_k`` (left normal form): no
``x_i`` is trivial or Delta, and every pair ``(x_i, x_{i+1})`` is
left-weighted, i.e. every generator that left-divides ``x_{i+1}`` is
already a right descent of ``x_i``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .coxeter import coxeter_number, enumerate_W
from .errors import GraphError, NotSphericalError, ResourceLimitError
from .graph import CoxeterGraph, connected_components, is_spherical
from .limits import DEFAULT_LIMITS, Limits
from .words import GroupWord, PositiveWord, commutator, inverse, positive, support

__all__ = [
    "NormalForm",
    "NpPair",
    "GarsideStructure",
    "garside_structure",
    "support",
    "normal_form",
    "is_trivial_spherical",
    "garside_delta",
    "center_generator_spherical",
    "np_decompose",
    "member_rewrite_spherical",
]


@dataclass(frozen=True)
class NormalForm:
    infimum: int
    factors: tuple[tuple[str, ...], ...]

    @property
    def is_identity(self) -> bool:
        return self.infimum == 0 and not self.factors

    def __str__(self) -> str:
        parts = [f"D^{self.infimum}"] if self.infimum else []
        parts += ["(" + " ".join(f) + ")" for f in self.factors]
        return " ".join(parts) or "1"


@dataclass(frozen=True)
class NpPair:
    """The element ``negative^-1 * positive`` with a left-coprime pair."""

    negative: PositiveWord
    positive: PositiveWord

    def word(self) -> GroupWord:
        return inverse(positive(self.negative)) + positive(self.positive)


class GarsideStructure:
    """Normal forms and divisibility for one spherical graph."""

    def __init__(self, graph: CoxeterGraph, limits: Limits = DEFAULT_LIMITS):
        if not is_spherical(graph):
            raise NotSphericalError(f"graph on {{{', '.join(graph.vertices)}}} is not spherical")
        res = enumerate_W(graph, limits.max_elements, limits.max_words)
        if not res.complete:
            raise ResourceLimitError(f"|W| exceeds the element cap {limits.max_elements}")
        t = res.table
        self.graph = graph
        self.table = t
        self.delta = t.longest
        self.gens = [t.generator(i) for i in range(t.rank)]
        # tau(x) = w0 x w0: conjugation by Delta on simple elements
        self.tau = [t.mul(t.mul(self.delta, e), self.delta) for e in range(len(t))]
        # x * rcomp[x] = Delta
        self.rcomp = [t.mul(t.inv[e], self.delta) for e in range(len(t))]
        self._lw: dict[tuple[int, int], tuple[int, int]] = {}

    # -- low level
    def _letters(self, word: Iterable) -> list[tuple[int, int]]:
        out = []
        for v, e in word:
            if v not in self.graph:
                raise GraphError(f"unknown vertex {v!r}")
            out.append((self.graph.index(v), e))
        return out

    def _left_weight(self, a: int, b: int) -> tuple[int, int]:
        key = (a, b)
        hit = self._lw.get(key)
        if hit is not None:
            return hit
        t = self.table
        x, y = a, b
        while True:
            movable = t.left_descents[y] - t.right_descents[x]
            if not movable:
                break
            s = min(movable)
            x = t.right[x][s]
            y = t.left[y][s]
        self._lw[key] = (x, y)
        return x, y

    def _normalize(self, inf: int, factors: list[int]) -> tuple[int, tuple[int, ...]]:
        fs = list(factors)
        changed = True
        while changed:
            changed = False
            for i in range(len(fs) - 1):
                pair = self._left_weight(fs[i], fs[i + 1])
                if pair != (fs[i], fs[i + 1]):
                    fs[i], fs[i + 1] = pair
                    changed = True
        k = 0
        while k < len(fs) and fs[k] == self.delta:
            k += 1
        return inf + k, tuple(f for f in fs[k:] if f != 0)

    def raw_normal_form(self, word: Iterable) -> tuple[int, tuple[int, ...]]:
        inf = 0
        fs: list[int] = []
        for i, e in self._letters(word):
            if e > 0:
                fs.append(self.gens[i])
            else:
                # X s^-1 = X rcomp(s) Delta^-1 = Delta^-1 tau(X rcomp(s))
                fs.append(self.rcomp[self.gens[i]])
                fs = [self.tau[f] for f in fs]
                inf -= 1
        return self._normalize(inf, fs)

    def _names(self, e: int) -> tuple[str, ...]:
        return self.table.canonical_names(e)

    def _positive_letters(self, inf: int, fs: Sequence[int]) -> PositiveWord:
        if inf < 0:
            raise ValueError("not a positive element")
        out: list[str] = list(self._names(self.delta)) * inf
        for f in fs:
            out.extend(self._names(f))
        return tuple(out)

    def _left_divisors(self, inf: int, fs: Sequence[int]) -> frozenset[int]:
        """Generators left-dividing a positive element."""
        if inf > 0:
            return frozenset(range(self.table.rank))
        if not fs:
            return frozenset()
        return self.table.left_descents[fs[0]]

    # -- public
    def normal_form(self, word: Iterable) -> NormalForm:
        inf, fs = self.raw_normal_form(word)
        return NormalForm(inf, tuple(self._names(f) for f in fs))

    def is_trivial(self, word: Iterable) -> bool:
        inf, fs = self.raw_normal_form(word)
        return inf == 0 and not fs

    def equal(self, u: Iterable, v: Iterable) -> bool:
        return self.raw_normal_form(u) == self.raw_normal_form(v)

    def delta_word(self) -> PositiveWord:
        return self._names(self.delta)

    def np_decompose(self, word: Iterable) -> NpPair:
        inf, fs = self.raw_normal_form(word)
        if inf >= 0:
            return NpPair((), self._positive_letters(inf, fs))
        neg = (-inf, ())
        pos = (0, fs)
        while True:
            common = self._left_divisors(*neg) & self._left_divisors(*pos)
            if not common:
                break
            s = self.graph.vertices[min(common)]
            neg = self.raw_normal_form(((s, -1),) + positive(self._positive_letters(*neg)))
            pos = self.raw_normal_form(((s, -1),) + positive(self._positive_letters(*pos)))
        return NpPair(self._positive_letters(*neg), self._positive_letters(*pos))

    def member_rewrite(self, word: Sequence, subset: Iterable[str]) -> GroupWord | None:
        X = set(subset)
        unknown = X - set(self.graph.vertices)
        if unknown:
            raise GraphError("unknown vertices: " + ", ".join(sorted(unknown)))
        pair = self.np_decompose(word)
        if not (support(pair.negative) <= X and support(pair.positive) <= X):
            return None
        result = pair.word()
        if not self.is_trivial(tuple(word) + inverse(result)):
            raise AssertionError("membership rewrite failed verification")
        return result


@functools.lru_cache(maxsize=128)
def garside_structure(g: CoxeterGraph, limits: Limits = DEFAULT_LIMITS) -> GarsideStructure:
    return GarsideStructure(g, limits)


def _structure(g: CoxeterGraph, limits: Limits | None) -> GarsideStructure:
    return garside_structure(g, limits or DEFAULT_LIMITS)


def normal_form(g: CoxeterGraph, w: Sequence, limits: Limits | None = None) -> NormalForm:
    (limits or DEFAULT_LIMITS).check_length(w)
    return _structure(g, limits).normal_form(w)


def is_trivial_spherical(g: CoxeterGraph, w: Sequence, limits: Limits | None = None) -> bool:
    (limits or DEFAULT_LIMITS).check_length(w)
    return _structure(g, limits).is_trivial(w)


def _require_connected_spherical(g: CoxeterGraph) -> None:
    if len(g) == 0 or len(connected_components(g)) != 1:
        raise GraphError("expected a connected, nonempty graph")
    if not is_spherical(g):
        raise NotSphericalError("expected a spherical graph")


def garside_delta(g: CoxeterGraph, limits: Limits | None = None) -> PositiveWord:
    """Delta as the ShortLex-least reduced word of the longest element."""
    _require_connected_spherical(g)
    return _structure(g, limits).delta_word()


def center_generator_spherical(g: CoxeterGraph, limits: Limits | None = None) -> PositiveWord:
    """Generator of the (infinite cyclic) center of a connected spherical group.

    Delta itself when it commutes with every generator, otherwise
    ``(s_1 ... s_n)^h`` with h the Coxeter number (which equals Delta^2).
    """
    _require_connected_spherical(g)
    gs = _structure(g, limits)
    delta = gs.delta_word()
    if _is_central(gs, delta):
        return delta
    h = coxeter_number(g)
    z = tuple(g.vertices) * h
    if not _is_central(gs, z):
        raise AssertionError("(s_1...s_n)^h failed the commutation test")
    return z


def _is_central(gs: GarsideStructure, z: PositiveWord) -> bool:
    zw = positive(z)
    return all(gs.is_trivial(commutator(zw, ((v, 1),))) for v in gs.graph.vertices)


def np_decompose(g: CoxeterGraph, w: Sequence, limits: Limits | None = None) -> NpPair:
    (limits or DEFAULT_LIMITS).check_length(w)
    return _structure(g, limits).np_decompose(w)


def member_rewrite_spherical(
    g: CoxeterGraph, w: Sequence, subset: Iterable[str], limits: Limits | None = None
) -> GroupWord | None:
    """A word over ``subset`` equal to ``w``, or None when ``w`` is not in that parabolic."""
    (limits or DEFAULT_LIMITS).check_length(w)
    return _structure(g, limits).member_rewrite(w, subset)
