"""Reduced words in a free group of fixed rank.

A word is stored as a tuple of nonzero integers: ``+i`` is the i-th basis
letter and ``-i`` its inverse (1-based).  Text uses ``a..z`` for generators
and ``A..Z`` for their inverses.
"""

from __future__ import annotations

import string
from dataclasses import dataclass

from .errors import DomainError, InputError, ParseError

_LOWER = string.ascii_lowercase


@dataclass(frozen=True)
class Letter:
    index: int
    sign: int = 1

    def inverse(self) -> "Letter":
        return Letter(self.index, -self.sign)

    def as_int(self) -> int:
        return self.index * self.sign


def _reduce(letters):
    out = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class Word:
    letters: tuple
    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise InputError(f"rank must be >= 1, got {self.rank}")
        for x in self.letters:
            if x == 0 or abs(x) > self.rank:
                raise InputError(f"letter {x} outside rank {self.rank}")
        object.__setattr__(self, "letters", _reduce(tuple(self.letters)))

    @classmethod
    def identity(cls, rank: int) -> "Word":
        return cls((), rank)

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters, max(self.rank, other.rank))

    def __pow__(self, k: int) -> "Word":
        if k < 0:
            return self.inverse() ** (-k)
        return Word(self.letters * k, self.rank)

    def inverse(self) -> "Word":
        return Word(tuple(-x for x in reversed(self.letters)), self.rank)

    def is_identity(self) -> bool:
        return not self.letters

    def is_cyclically_reduced(self) -> bool:
        return len(self.letters) < 2 or self.letters[0] != -self.letters[-1]

    def __str__(self):
        if not self.letters:
            return "1"
        return "".join(_LOWER[x - 1] if x > 0 else _LOWER[-x - 1].upper() for x in self.letters)

    def with_rank(self, rank: int) -> "Word":
        return Word(self.letters, rank)


@dataclass(frozen=True)
class PowerDecomposition:
    root: Word
    exponent: int
    conjugator: Word


def parse_word(text: str, rank: int) -> Word:
    text = text.strip()
    if text == "1":
        return Word.identity(rank)
    letters = []
    for ch in text:
        if ch in string.ascii_lowercase:
            letters.append(ord(ch) - ord("a") + 1)
        elif ch in string.ascii_uppercase:
            letters.append(-(ord(ch) - ord("A") + 1))
        else:
            raise ParseError(f"illegal character {ch!r} in word {text!r}")
    for x in letters:
        if abs(x) > rank:
            raise InputError(f"letter {_LOWER[abs(x) - 1]!r} outside rank {rank}")
    return Word(tuple(letters), rank)


def parse_words(text: str, rank: int) -> list:
    """Comma-separated multiset of words."""
    parts = [p for p in (s.strip() for s in text.split(",")) if p]
    if not parts:
        raise ParseError("empty word list")
    return [parse_word(p, rank) for p in parts]


def infer_rank(text: str) -> int:
    """Smallest rank containing every letter in ``text`` (at least 1)."""
    idx = [ord(c.lower()) - ord("a") + 1 for c in text if c.isalpha()]
    return max(idx, default=1)


def cyclic_reduce(w: Word):
    """Return ``(core, conjugator)`` with ``conjugator * core * conjugator^-1 == w``."""
    xs = w.letters
    i, j = 0, len(xs) - 1
    while i < j and xs[i] == -xs[j]:
        i += 1
        j -= 1
    core = Word(xs[i:j + 1], w.rank)
    return core, Word(xs[:i], w.rank)


def power_decomposition(w: Word) -> PowerDecomposition:
    if w.is_identity():
        raise DomainError("the identity has no power decomposition")
    core, conj = cyclic_reduce(w)
    xs = core.letters
    n = len(xs)
    for p in range(1, n + 1):
        if n % p == 0 and xs[p:] + xs[:p] == xs:
            return PowerDecomposition(Word(xs[:p], w.rank), n // p, conj)
    raise AssertionError("unreachable")


def is_proper_power(w: Word) -> bool:
    return power_decomposition(w).exponent > 1
