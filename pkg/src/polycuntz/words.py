"""Finite words over the alphabet {1, ..., n} and their prefix order.

Words are plain tuples of ints. The empty tuple is the empty word.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

from .errors import CuntzError, EmptyWordError

Word = tuple[int, ...]
WordLike = Union[Word, Sequence[int], str]

EMPTY: Word = ()


@dataclass(frozen=True)
class Alphabet:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise CuntzError(f"alphabet size must be an integer >= 2, got {self.n!r}")

    @property
    def letters(self) -> range:
        return range(1, self.n + 1)

    def words(self, k: int) -> Iterator[Word]:
        """All words of length k in lexicographic order."""
        return itertools.product(self.letters, repeat=k)

    def contains(self, w: Word) -> bool:
        return all(1 <= a <= self.n for a in w)


def as_word(w: WordLike) -> Word:
    """Coerce a tuple, list or digit string ("121", "e" for empty) to a word."""
    if isinstance(w, str):
        if w in ("", "e"):
            return EMPTY
        return tuple(int(c) for c in w)
    if type(w) is tuple:
        return w
    return tuple(int(a) for a in w)


def word_str(w: Word) -> str:
    if not w:
        return "e"
    if all(a <= 9 for a in w):
        return "".join(map(str, w))
    return "[" + ",".join(map(str, w)) + "]"


class Rel(enum.Enum):
    EQUAL = "equal"
    PREFIX_OF_SECOND = "prefix_of_second"
    EXTENDS_SECOND = "extends_second"
    ORTHOGONAL = "orthogonal"


@dataclass(frozen=True)
class Relation:
    kind: Rel
    residual: Word = EMPTY


def is_prefix(a: Word, b: Word) -> bool:
    """True when a is an initial subword of b (a == b included)."""
    return len(a) <= len(b) and b[: len(a)] == a


def orthogonal(a: Word, b: Word) -> bool:
    return not (is_prefix(a, b) or is_prefix(b, a))


def compare(a: Word, b: Word) -> Relation:
    if a == b:
        return Relation(Rel.EQUAL)
    if is_prefix(a, b):
        return Relation(Rel.PREFIX_OF_SECOND, b[len(a):])
    if is_prefix(b, a):
        return Relation(Rel.EXTENDS_SECOND, a[len(b):])
    return Relation(Rel.ORTHOGONAL)


def split_head(a: Word) -> tuple[int, Word]:
    if not a:
        raise EmptyWordError("cannot split the empty word")
    return a[0], a[1:]


def concatenate(*parts: Word) -> Word:
    return tuple(itertools.chain.from_iterable(parts))


def common_prefix_length(a: Sequence[int], b: Sequence[int]) -> int:
    k = 0
    for x, y in zip(a, b):
        if x != y:
            break
        k += 1
    return k


def extensions(w: Word, n: int, k: int) -> Iterator[Word]:
    """All words of length k that extend w (k >= len(w))."""
    for tail in itertools.product(range(1, n + 1), repeat=k - len(w)):
        yield w + tail


def find_prefix_in(word: Word, code: Iterable[Word] | set, lengths: Iterable[int]) -> Word | None:
    """Return the member of ``code`` (a set) that is a prefix of ``word``, if any."""
    for m in lengths:
        if m > len(word):
            break
        if word[:m] in code:
            return word[:m]
    return None
