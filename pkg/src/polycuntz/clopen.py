"""Clopen subsets of the Cantor set X_n, stored as reduced antichains of words.

A word w stands for the cylinder [w] of infinite words starting with w, i.e.
the standard projection P_w. A finite union of cylinders has a unique reduced
form: the set of maximal cylinders it contains. ``normalize`` computes it by
absorbing words that extend other members and merging full sibling families
{g1, ..., gn} into g until neither rule applies.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import CuntzError, LevelTooSmallError, NotAPartitionError
from .words import EMPTY, Word, WordLike, as_word, extensions, is_prefix, word_str


def kraft_sum(words: Iterable[Word], n: int) -> Fraction:
    return sum((Fraction(1, n ** len(w)) for w in words), Fraction(0))


def _absorb(words: set[Word]) -> set[Word]:
    out = set()
    for w in words:
        if not any(w[:j] in words for j in range(len(w))):
            out.add(w)
    return out


def _merge_siblings(words: set[Word], n: int) -> set[Word]:
    ws = set(words)
    pending = {w[:-1] for w in ws if w}
    while pending:
        parent = pending.pop()
        children = [parent + (a,) for a in range(1, n + 1)]
        if all(c in ws for c in children):
            ws.difference_update(children)
            ws.add(parent)
            if parent:
                pending.add(parent[:-1])
    return ws


def reduce_words(raw: Iterable[Word], n: int) -> tuple[Word, ...]:
    return tuple(sorted(_merge_siblings(_absorb(set(raw)), n)))


@dataclass(frozen=True)
class CylinderUnion:
    """A clopen set of X_n. Build with :func:`normalize` or :meth:`of`."""

    n: int
    words: tuple[Word, ...]

    @classmethod
    def of(cls, n: int, words: Iterable[WordLike]) -> CylinderUnion:
        return normalize((as_word(w) for w in words), n)

    @classmethod
    def empty(cls, n: int) -> CylinderUnion:
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> CylinderUnion:
        return cls(n, (EMPTY,))

    def __iter__(self):
        return iter(self.words)

    def __len__(self):
        return len(self.words)

    def __contains__(self, w) -> bool:
        return as_word(w) in self.words

    def __bool__(self):
        return bool(self.words)

    def __or__(self, other: CylinderUnion) -> CylinderUnion:
        return join(self, other)

    def __and__(self, other: CylinderUnion) -> CylinderUnion:
        return meet(self, other)

    def __invert__(self) -> CylinderUnion:
        return complement(self)

    def __repr__(self):
        return f"CylinderUnion(n={self.n}, {{{', '.join(map(word_str, self.words))}}})"

    @property
    def max_length(self) -> int:
        return max((len(w) for w in self.words), default=0)

    def kraft(self) -> Fraction:
        return kraft_sum(self.words, self.n)

    def contains_point(self, prefix: Word) -> bool:
        """Whether every infinite word starting with ``prefix`` lies in the set
        (``prefix`` must be at least ``max_length`` long to decide membership)."""
        return any(is_prefix(w, prefix) for w in self.words)

    def intersects(self, w: Word) -> bool:
        return any(is_prefix(w, v) or is_prefix(v, w) for v in self.words)


def normalize(raw: Iterable[Word], n: int) -> CylinderUnion:
    return CylinderUnion(n, reduce_words(raw, n))


def _complement_words(members: set[Word], n: int, prefix: Word, out: list[Word]) -> None:
    if prefix in members:
        return
    if not any(is_prefix(prefix, w) for w in members):
        out.append(prefix)
        return
    for a in range(1, n + 1):
        _complement_words(members, n, prefix + (a,), out)


def complement(c: CylinderUnion) -> CylinderUnion:
    out: list[Word] = []
    _complement_words(set(c.words), c.n, EMPTY, out)
    return normalize(out, c.n)


def _check_same(c1: CylinderUnion, c2: CylinderUnion) -> None:
    if c1.n != c2.n:
        raise CuntzError(f"alphabet mismatch: {c1.n} vs {c2.n}")


def meet(c1: CylinderUnion, c2: CylinderUnion) -> CylinderUnion:
    _check_same(c1, c2)
    out = []
    for a in c1.words:
        for b in c2.words:
            if is_prefix(a, b):
                out.append(b)
            elif is_prefix(b, a):
                out.append(a)
    return normalize(out, c1.n)


def join(c1: CylinderUnion, c2: CylinderUnion) -> CylinderUnion:
    _check_same(c1, c2)
    return normalize(c1.words + c2.words, c1.n)


def refine_to_level(c: CylinderUnion, k: int) -> list[Word]:
    if k < c.max_length:
        raise LevelTooSmallError(f"level {k} is below the longest member ({c.max_length})")
    return sorted(v for w in c.words for v in extensions(w, c.n, k))


@dataclass(frozen=True)
class PartitionCode:
    """A complete prefix code: an antichain whose cylinders partition X_n.

    Unlike a :class:`CylinderUnion` it keeps the words as given (a complete
    code always normalizes to the single empty word).
    """

    n: int
    words: tuple[Word, ...]

    def __post_init__(self):
        validate_partition(self.words, self.n)

    def __iter__(self):
        return iter(self.words)

    def __len__(self):
        return len(self.words)

    def kraft(self) -> Fraction:
        return kraft_sum(self.words, self.n)


def validate_partition(words: Iterable[Word], n: int, side: str = "code") -> None:
    """Raise NotAPartitionError unless ``words`` is a complete prefix code."""
    ws = list(words)
    seen: set[Word] = set()
    for w in ws:
        if w in seen:
            raise NotAPartitionError(side, w, "duplicated word")
        seen.add(w)
    for w in sorted(seen):
        for j in range(len(w)):
            if w[:j] in seen:
                raise NotAPartitionError(side, w, f"extends member {word_str(w[:j])}")
    if kraft_sum(seen, n) != 1:
        gap = complement(CylinderUnion(n, reduce_words(seen, n)))
        raise NotAPartitionError(side, gap.words[0], "does not cover X_n")
