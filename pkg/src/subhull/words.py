"""Finite words over a token alphabet, and periodic (cyclic) words.

A word is a plain tuple of letter tokens, so words compare and hash
structurally and sets of words behave as expected.  Letters are arbitrary
non-empty strings without whitespace; nothing assumes single characters.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ParseError
from . import kernels

Word = tuple[str, ...]

# below this many letter reads the pure-Python window scan wins; above it
# the array kernel is used
_KERNEL_CUTOFF = 1 << 16


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of letter tokens; the order fixes matrix indices."""

    letters: tuple[str, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.letters:
            raise ValueError("alphabet must contain at least one letter")
        for a in self.letters:
            if not isinstance(a, str) or not a or any(c.isspace() for c in a):
                raise ValueError(f"bad letter token {a!r}")
        if len(set(self.letters)) != len(self.letters):
            raise ValueError("alphabet letters must be distinct")
        object.__setattr__(self, "_index", {a: i for i, a in enumerate(self.letters)})

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __contains__(self, letter: str) -> bool:
        return letter in self._index

    def index(self, letter: str) -> int:
        try:
            return self._index[letter]
        except KeyError:
            raise ValueError(f"letter {letter!r} is not in the alphabet") from None

    @property
    def single_char(self) -> bool:
        return all(len(a) == 1 for a in self.letters)

    def validate_word(self, word: Word) -> Word:
        if not word:
            raise ValueError("the empty word is not allowed")
        for a in word:
            if a not in self._index:
                raise ValueError(f"letter {a!r} is not in the alphabet")
        return word

    def parse_word(self, text: str) -> Word:
        """Parse a word literal.

        Whitespace-separated tokens are taken as letters; a token that is
        not itself a letter is split into characters when every alphabet
        letter is a single character.
        """
        letters: list[str] = []
        tokens = text.split()
        if not tokens:
            raise ParseError("empty word literal")
        for tok in tokens:
            if tok in self._index:
                letters.append(tok)
            elif self.single_char:
                for c in tok:
                    if c not in self._index:
                        raise ParseError(f"unknown letter {c!r} in word literal {text!r}")
                    letters.append(c)
            else:
                raise ParseError(f"unknown letter {tok!r} in word literal {text!r}")
        return tuple(letters)

    def format_word(self, word: Word) -> str:
        sep = "" if self.single_char else " "
        return sep.join(word)

    def encode(self, word: Word) -> np.ndarray:
        return np.array([self._index[a] for a in word], dtype=np.int64)

    def decode(self, codes) -> Word:
        return tuple(self.letters[int(i)] for i in codes)


@dataclass(frozen=True)
class CyclicWord:
    """Bi-infinite periodic configuration, stored by one period.

    Rotations give equal hulls but are deliberately *not* identified:
    two CyclicWords are equal only if their stored periods are equal.
    """

    period: Word

    def __post_init__(self):
        if not self.period:
            raise ValueError("period must be non-empty")

    def __len__(self) -> int:
        return len(self.period)

    def rotations(self) -> set[Word]:
        p = self.period
        return {p[i:] + p[:i] for i in range(len(p))}


def subwords(word: Word, ell: int) -> set[Word]:
    """All length-ell factors of a finite word (empty set if ell > |word|)."""
    if ell < 1:
        raise ValueError("subword length must be >= 1")
    return {word[i : i + ell] for i in range(len(word) - ell + 1)}


def cyclic_subwords(cyclic: CyclicWord, ell: int) -> set[Word]:
    """All length-ell factors of the periodic configuration.

    Equivalent to the factors of the period repeated enough times, but only
    |period| starting positions are ever distinct.  Large instances go
    through the array kernel (see `subhull.kernels`).
    """
    if ell < 1:
        raise ValueError("subword length must be >= 1")
    period = cyclic.period
    p = len(period)
    if p * ell <= _KERNEL_CUTOFF:
        ext = period * ((p + ell - 1) // p + 1)
        return {ext[i : i + ell] for i in range(p)}

    local = tuple(sorted(set(period)))
    idx = {a: i for i, a in enumerate(local)}
    codes = np.array([idx[a] for a in period], dtype=np.int64)
    rows = kernels.unique_cyclic_windows(codes, ell)
    return {tuple(local[c] for c in row) for row in rows.tolist()}


def cyclic_subword_count(cyclic: CyclicWord, ell: int) -> int:
    """Number of distinct length-ell factors (never exceeds the period)."""
    return len(cyclic_subwords(cyclic, ell))
