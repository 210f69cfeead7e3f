"""Resource caps shared by the solvers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sized

from .coxeter import DEFAULT_MAX_ELEMENTS, DEFAULT_MAX_WORDS
from .errors import ResourceLimitError


@dataclass(frozen=True)
class Limits:
    max_elements: int = DEFAULT_MAX_ELEMENTS  # enumeration of a finite W
    max_words: int = DEFAULT_MAX_WORDS  # visited words in one rewriting search
    max_word_length: int = 64  # letters in a user-supplied word

    def check_length(self, word: Sized) -> None:
        if len(word) > self.max_word_length:
            raise ResourceLimitError(
                f"word has {len(word)} letters; the cap is {self.max_word_length}"
            )


DEFAULT_LIMITS = Limits()
