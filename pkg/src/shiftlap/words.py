"""Symbols, vertex words, cylinder sets and the Bernoulli measure.

The state space is the set of one-sided infinite sequences over ``N``
symbols.  The only points this package ever materialises are the eventually
constant ones: a word of length ``m + 1`` stands for the sequence that runs
through the word and then repeats its final symbol forever.  Those points form
the nested vertex sets ``vertex_set(alphabet, 0), vertex_set(alphabet, 1),
...`` of sizes ``N**(m+1)`` on which all difference operators live.

Symbols are 1-based in literals (``"1211"``) and 0-based in the internal
tuples; conversion happens only at the I/O boundary.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import inf

from .errors import (
    AlphabetMismatchError,
    LevelTooSmallError,
    ResourceLimitError,
)

#: Hard default on the number of enumerated points (N ** (m+1)).
DEFAULT_POINT_CAP = 1 << 20


@dataclass(frozen=True)
class Alphabet:
    """The finite symbol set {1, ..., size}."""

    size: int

    def __post_init__(self):
        if not isinstance(self.size, int) or self.size < 2:
            raise ValueError(f"alphabet needs at least two symbols, got {self.size!r}")

    @property
    def symbols(self) -> range:
        """Internal 0-based symbols."""
        return range(self.size)

    def point(self, literal: str) -> "VertexWord":
        return VertexWord.from_literal(literal, self)

    def parse_symbol(self, token) -> int:
        """1-based symbol (int or single digit string) -> internal 0-based."""
        value = int(token)
        if not 1 <= value <= self.size:
            raise ValueError(f"symbol {token!r} outside 1..{self.size}")
        return value - 1

    def format_symbol(self, symbol: int) -> str:
        return str(symbol + 1)


def _check_same_alphabet(a: Alphabet, b: Alphabet):
    if a != b:
        raise AlphabetMismatchError(f"alphabets differ: {a.size} vs {b.size} symbols")


def min_level_of(symbols) -> int:
    """Smallest m such that the word's point lies in vertex_set(m).

    Equals the last 1-based position ``i`` with ``symbols[i-1] != symbols[i]``,
    or 0 for a constant word; padding a word with its tail symbol never
    changes the result.
    """
    for i in range(len(symbols) - 1, 0, -1):
        if symbols[i] != symbols[i - 1]:
            return i
    return 0


@dataclass(frozen=True, eq=False)
class VertexWord:
    """An eventually constant point, written as a finite word.

    Two words are equal iff they name the same sequence, i.e. iff their
    canonical (tail-stripped) forms coincide.
    """

    alphabet: Alphabet
    symbols: tuple[int, ...]

    def __post_init__(self):
        if not self.symbols:
            raise ValueError("a vertex word needs at least one symbol")
        if any(not 0 <= s < self.alphabet.size for s in self.symbols):
            raise ValueError(f"word {self.symbols!r} has symbols outside the alphabet")

    @classmethod
    def from_literal(cls, literal: str, alphabet: Alphabet) -> "VertexWord":
        if alphabet.size > 9:
            raise ValueError("digit-string literals are only defined for alphabets up to 9 symbols")
        if not literal or not literal.isdigit():
            raise ValueError(f"bad word literal {literal!r}")
        return cls(alphabet, tuple(alphabet.parse_symbol(ch) for ch in literal))

    @property
    def literal(self) -> str:
        return "".join(self.alphabet.format_symbol(s) for s in self.symbols)

    @property
    def level(self) -> int:
        """Level of the written form: a word of length m+1 lives in vertex_set(m)."""
        return len(self.symbols) - 1

    @property
    def min_level(self) -> int:
        return min_level_of(self.symbols)

    @property
    def tail_symbol(self) -> int:
        return self.symbols[-1]

    def sequence_symbol(self, i: int) -> int:
        """The i-th (1-based) symbol of the infinite sequence."""
        if i < 1:
            raise ValueError("sequence positions are 1-based")
        return self.symbols[i - 1] if i <= len(self.symbols) else self.symbols[-1]

    def prefix(self, length: int) -> tuple[int, ...]:
        """First ``length`` symbols of the infinite sequence."""
        pad = length - len(self.symbols)
        if pad <= 0:
            return self.symbols[:length]
        return self.symbols + (self.symbols[-1],) * pad

    def canonical(self) -> "VertexWord":
        return VertexWord(self.alphabet, self.symbols[: self.min_level + 1])

    def embed(self, m: int) -> "VertexWord":
        """The same point written at level m (word of length m+1)."""
        if m < self.min_level:
            raise LevelTooSmallError(
                f"point {self.literal} first appears at level {self.min_level}, not {m}"
            )
        return VertexWord(self.alphabet, self.prefix(m + 1))

    def neighbors(self, j: int) -> tuple["VertexWord", ...]:
        """The N-1 points of vertex_set(j) sharing this point's first j symbols.

        For j = 0 these are the other constant sequences.
        """
        if j < self.min_level:
            raise LevelTooSmallError(
                f"point {self.literal} is not in vertex_set({j}); "
                f"it first appears at level {self.min_level}"
            )
        head = self.prefix(j)
        own = self.sequence_symbol(j + 1)
        return tuple(
            VertexWord(self.alphabet, head + (l,))
            for l in self.alphabet.symbols
            if l != own
        )

    def index(self) -> int:
        """Lexicographic position among all words of the same length."""
        n = self.alphabet.size
        value = 0
        for s in self.symbols:
            value = value * n + s
        return value

    def __eq__(self, other):
        if not isinstance(other, VertexWord):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.symbols[: self.min_level + 1] == other.symbols[: other.min_level + 1]
        )

    def __hash__(self):
        return hash((self.alphabet, self.symbols[: self.min_level + 1]))

    def __repr__(self):
        return f"VertexWord({self.literal!r}, N={self.alphabet.size})"


def first_disagreement(x: VertexWord, y: VertexWord):
    """First 1-based position where the two sequences differ; inf for equal points.

    The metric on the space is 2 ** -first_disagreement, derivable by callers.
    """
    _check_same_alphabet(x.alphabet, y.alphabet)
    bound = max(len(x.symbols), len(y.symbols))
    for i in range(1, bound + 1):
        if x.sequence_symbol(i) != y.sequence_symbol(i):
            return i
    return inf


def check_point_cap(alphabet: Alphabet, m: int, cap=None):
    limit = DEFAULT_POINT_CAP if cap is None else cap
    count = alphabet.size ** (m + 1)
    if count > limit:
        raise ResourceLimitError(
            f"vertex_set({m}) over {alphabet.size} symbols holds {count} points, cap is {limit}"
        )
    return count


def vertex_words(alphabet: Alphabet, m: int, cap=None):
    """All symbol tuples of length m+1 in lexicographic order (no VertexWord wrapping)."""
    if m < 0:
        raise ValueError("levels are nonnegative")
    check_point_cap(alphabet, m, cap)
    return itertools.product(alphabet.symbols, repeat=m + 1)


def vertex_set(alphabet: Alphabet, m: int, cap=None) -> list[VertexWord]:
    """The level-m vertex set, ordered so that ``point.index()`` is its position."""
    return [VertexWord(alphabet, w) for w in vertex_words(alphabet, m, cap)]


def new_vertex_words(alphabet: Alphabet, m: int, cap=None):
    """Words of the points that first appear at level m (all of level 0 when m = 0)."""
    if m == 0:
        yield from vertex_words(alphabet, 0, cap)
        return
    for w in vertex_words(alphabet, m, cap):
        if w[-1] != w[-2]:
            yield w


@dataclass(frozen=True)
class CylinderSet:
    """All sequences starting with a fixed prefix; the empty prefix is the whole space."""

    alphabet: Alphabet
    prefix: tuple[int, ...]

    def __post_init__(self):
        if any(not 0 <= s < self.alphabet.size for s in self.prefix):
            raise ValueError(f"prefix {self.prefix!r} has symbols outside the alphabet")

    @classmethod
    def from_literal(cls, literal: str, alphabet: Alphabet) -> "CylinderSet":
        if literal == "":
            return cls(alphabet, ())
        word = VertexWord.from_literal(literal, alphabet)
        return cls(alphabet, word.symbols)

    @property
    def length(self) -> int:
        return len(self.prefix)

    def measure(self) -> Fraction:
        """Bernoulli measure: exactly 1 / N**length."""
        return Fraction(1, self.alphabet.size**self.length)

    def contains(self, point: VertexWord) -> bool:
        _check_same_alphabet(self.alphabet, point.alphabet)
        return point.prefix(self.length) == self.prefix
