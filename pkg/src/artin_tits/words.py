"""Group words over the Artin generators.

A group word is a tuple of ``(vertex, sign)`` letters with ``sign`` in
``{+1, -1}``; ``("s", -1)`` is the letter written ``s^-1``.  Positive words
and Coxeter words are plain tuples of vertex identifiers.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import WordParseError

Letter = tuple[str, int]
GroupWord = tuple[Letter, ...]
PositiveWord = tuple[str, ...]


def parse_word(text: str, vertices: Iterable[str] | None = None, source: str = "<word>") -> GroupWord:
    """Parse whitespace-separated tokens ``s`` / ``s^-1``.

    The single token ``1`` denotes the empty word unless ``1`` is a vertex.
    """
    known = None if vertices is None else set(vertices)
    tokens = text.split()
    if tokens == ["1"] and (known is None or "1" not in known):
        return ()
    out = []
    for pos, tok in enumerate(tokens, start=1):
        if tok.endswith("^-1"):
            name, sign = tok[:-3], -1
        elif tok.endswith("^1"):
            name, sign = tok[:-2], 1
        else:
            name, sign = tok, 1
        if not name or "^" in name:
            raise WordParseError(f"bad token {tok!r}", pos, source)
        if known is not None and name not in known:
            raise WordParseError(f"unknown vertex {name!r}", pos, source)
        out.append((name, sign))
    return tuple(out)


def format_word(w: Sequence[Letter]) -> str:
    if not w:
        return "1"
    return " ".join(v if e > 0 else f"{v}^-1" for v, e in w)


def parse_coxeter_word(text: str, vertices: Iterable[str] | None = None) -> tuple[str, ...]:
    word = parse_word(text, vertices)
    if any(e < 0 for _, e in word):
        raise WordParseError("Coxeter words have no inverse letters", 1)
    return tuple(v for v, _ in word)


def positive(letters: Iterable[str]) -> GroupWord:
    return tuple((v, 1) for v in letters)


def inverse(w: Sequence[Letter]) -> GroupWord:
    return tuple((v, -e) for v, e in reversed(w))


def support(w: Iterable) -> frozenset:
    """Distinct vertices in a word (positive or signed)."""
    return frozenset(x if isinstance(x, str) else x[0] for x in w)


def free_reduce(w: Sequence[Letter]) -> GroupWord:
    out: list[Letter] = []
    for v, e in w:
        if out and out[-1] == (v, -e):
            out.pop()
        else:
            out.append((v, e))
    return tuple(out)


def power(w: Sequence[Letter], k: int) -> GroupWord:
    if k < 0:
        return tuple(inverse(w)) * (-k)
    return tuple(w) * k


def commutator(a: Sequence[Letter], b: Sequence[Letter]) -> GroupWord:
    """``a b a^-1 b^-1``."""
    return tuple(a) + tuple(b) + inverse(a) + inverse(b)
