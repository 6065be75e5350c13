"""Finite sums of Cuntz words S_a S_b^* and the unitaries among them.

A term (a, b) with coefficient c stands for c * S_a S_b^*. Products use the
Cuntz relations S_i^* S_j = delta_ij, which reduce S_b^* S_m to S_{m-b},
S_{b-m}^* or zero depending on how b and m compare in the prefix order.
"""

from __future__ import annotations

from collections import defaultdict
from functools import cached_property
from typing import Iterable, Mapping

from .clopen import CylinderUnion, PartitionCode, normalize, validate_partition
from .errors import CoefficientError, CuntzError
from .words import EMPTY, Word, WordLike, as_word, find_prefix_in, word_str

Pair = tuple[Word, Word]


class PolyMap:
    """An element sum c_ab S_a S_b^* of the Cuntz algebra with integer coefficients."""

    __slots__ = ("n", "_terms", "__dict__")

    def __init__(self, n: int, terms: Mapping[Pair, int] | Iterable[Pair] = ()):
        if n < 2:
            raise CuntzError(f"alphabet size must be >= 2, got {n}")
        self.n = n
        acc: dict[Pair, int] = defaultdict(int)
        items = terms.items() if isinstance(terms, Mapping) else ((t, 1) for t in terms)
        for (a, b), c in items:
            a, b = as_word(a), as_word(b)
            if any(not 1 <= x <= n for x in a + b):
                raise CuntzError(f"letter outside 1..{n} in {word_str(a)}:{word_str(b)}")
            acc[(a, b)] += c
        self._terms = {p: c for p, c in sorted(acc.items()) if c != 0}

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[WordLike, WordLike]]) -> PolyMap:
        return cls(n, [(as_word(a), as_word(b)) for a, b in pairs])

    @classmethod
    def identity(cls, n: int) -> PolyMap:
        return cls(n, [(EMPTY, EMPTY)])

    @classmethod
    def projection(cls, c: CylinderUnion) -> PolyMap:
        return cls(c.n, [(w, w) for w in c.words])

    @property
    def terms(self) -> dict[Pair, int]:
        return dict(self._terms)

    def pairs(self) -> list[Pair]:
        return list(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, PolyMap):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    def __mul__(self, other: PolyMap) -> PolyMap:
        return multiply(self, other)

    def __repr__(self):
        body = " + ".join(
            (f"{c}*" if c != 1 else "") + f"{word_str(a)}:{word_str(b)}" for (a, b), c in self._terms.items()
        )
        return f"{type(self).__name__}(n={self.n}, {body or '0'})"

    def is_diagonal(self) -> bool:
        return all(a == b and c == 1 for (a, b), c in self._terms.items())

    def to_cylinders(self) -> CylinderUnion:
        """Read a sum of distinct projections back as a clopen set."""
        if not self.is_diagonal():
            raise CuntzError("not a sum of standard projections")
        ws = [a for a, _ in self._terms]
        if _overlapping(ws):
            raise CuntzError("projections are not mutually orthogonal")
        return normalize(ws, self.n)


def _overlapping(ws: list[Word]) -> bool:
    s = set(ws)
    return any(w[:j] in s for w in ws for j in range(len(w)))


class PolyUnitary(PolyMap):
    """A validated unitary of S_n: a bijection between two complete prefix codes.

    Use :func:`check_unitary` to build one.
    """

    @cached_property
    def left_code(self) -> PartitionCode:
        return PartitionCode(self.n, tuple(a for a, _ in self._terms))

    @cached_property
    def right_code(self) -> PartitionCode:
        return PartitionCode(self.n, tuple(sorted(b for _, b in self._terms)))

    @cached_property
    def ell(self) -> int:
        return max(len(a) for a, _ in self._terms)

    @cached_property
    def ell_prime(self) -> int:
        return max(max(len(a), len(b)) for a, b in self._terms)

    @cached_property
    def beta_of(self) -> dict[Word, Word]:
        return {a: b for a, b in self._terms}

    @cached_property
    def alpha_of(self) -> dict[Word, Word]:
        return {b: a for a, b in self._terms}

    @cached_property
    def _left_lengths(self) -> list[int]:
        return sorted({len(a) for a, _ in self._terms})

    @cached_property
    def _right_lengths(self) -> list[int]:
        return sorted({len(b) for _, b in self._terms})

    def alpha_prefix(self, w: Word) -> Word | None:
        """The member of the left code that is a prefix of w, if any."""
        return find_prefix_in(w, self.beta_of, self._left_lengths)

    def beta_prefix(self, w: Word) -> Word | None:
        return find_prefix_in(w, self.alpha_of, self._right_lengths)


def check_unitary(p: PolyMap) -> PolyUnitary:
    for (a, b), c in p.items():
        if c != 1:
            raise CoefficientError(f"coefficient {c} on {word_str(a)}:{word_str(b)}")
    if not p:
        raise CuntzError("the zero element is not unitary")
    validate_partition([a for a, _ in p.pairs()], p.n, "left")
    validate_partition([b for _, b in p.pairs()], p.n, "right")
    if isinstance(p, PolyUnitary):
        return p
    return PolyUnitary(p.n, p.pairs())


def identity(n: int) -> PolyUnitary:
    return PolyUnitary(n, [(EMPTY, EMPTY)])


def _term_product(a: Word, b: Word, m: Word, v: Word) -> Pair | None:
    """(S_a S_b^*)(S_m S_v^*) as a single word, or None when it vanishes."""
    if len(b) <= len(m):
        if m[: len(b)] == b:
            return a + m[len(b):], v
        return None
    if b[: len(m)] == m:
        return a, v + b[len(m):]
    return None


def multiply(p: PolyMap, q: PolyMap) -> PolyMap:
    if p.n != q.n:
        raise CuntzError(f"alphabet mismatch: {p.n} vs {q.n}")
    acc: dict[Pair, int] = defaultdict(int)
    for (a, b), c1 in p.items():
        for (m, v), c2 in q.items():
            t = _term_product(a, b, m, v)
            if t is not None:
                acc[t] += c1 * c2
    out = PolyMap(p.n, acc)
    if isinstance(p, PolyUnitary) and isinstance(q, PolyUnitary):
        bad = [t for t, c in out.items() if c != 1]
        if bad:
            raise CoefficientError(f"product of unitaries produced coefficient != 1 at {bad[0]}")
    return out


def adjoint(p: PolyMap) -> PolyMap:
    terms = {(b, a): c for (a, b), c in p.items()}
    if isinstance(p, PolyUnitary):
        return PolyUnitary(p.n, terms)
    return PolyMap(p.n, terms)


def shift_phi(p: PolyMap) -> PolyMap:
    """phi(x) = sum_i S_i x S_i^*, i.e. (a, b) -> {(ia, ib)}."""
    terms = {((i,) + a, (i,) + b): c for (a, b), c in p.items() for i in range(1, p.n + 1)}
    if isinstance(p, PolyUnitary):
        return PolyUnitary(p.n, terms)
    return PolyMap(p.n, terms)


def shift_power(p: PolyMap, k: int) -> PolyMap:
    for _ in range(k):
        p = shift_phi(p)
    return p


def u_tower(u: PolyUnitary, k: int) -> PolyUnitary:
    """u_k = u phi(u) ... phi^{k-1}(u); u_0 is the identity."""
    if k < 0:
        raise CuntzError("tower index must be >= 0")
    acc: PolyMap = identity(u.n)
    shifted: PolyMap = u
    for _ in range(k):
        acc = multiply(acc, shifted)
        shifted = shift_phi(shifted)
    return check_unitary(acc)


class _Towers:
    def __init__(self, u: PolyUnitary):
        self.u = u
        self._cache: dict[int, PolyUnitary] = {0: identity(u.n)}
        self._shift: PolyMap = u
        self._top = 0

    def __getitem__(self, k: int) -> PolyUnitary:
        while self._top < k:
            self._cache[self._top + 1] = PolyUnitary(self.u.n, multiply(self._cache[self._top], self._shift).terms)
            self._shift = shift_phi(self._shift)
            self._top += 1
        return self._cache[k]


def _towers_of(u: PolyUnitary) -> _Towers:
    # the towers of u are reused by every later apply_lambda call on u
    t = u.__dict__.get("_towers")
    if t is None:
        t = u.__dict__["_towers"] = _Towers(u)
    return t


def apply_lambda(u: PolyUnitary, p: PolyMap) -> PolyMap:
    """lambda_u(S_a S_b^*) = u_{|a|} S_a S_b^* u_{|b|}^*, extended linearly."""
    towers = _towers_of(u)
    acc: dict[Pair, int] = defaultdict(int)
    for (a, b), c in p.items():
        left = multiply(towers[len(a)], PolyMap(u.n, {(a, b): c}))
        for t, c2 in multiply(left, adjoint(towers[len(b)])).items():
            acc[t] += c2
    out = PolyMap(u.n, acc)
    if isinstance(p, PolyUnitary):
        return check_unitary(out)
    return out


def compose(u: PolyUnitary, w: PolyUnitary) -> PolyUnitary:
    """The unitary of lambda_u o lambda_w, namely lambda_u(w) u."""
    if u.n != w.n:
        raise CuntzError(f"alphabet mismatch: {u.n} vs {w.n}")
    return check_unitary(multiply(apply_lambda(u, w), u))


def canonical_form(p: PolyMap) -> PolyMap:
    """Merge {(gj, dj) : j = 1..n} with equal coefficients into (g, d) until stuck."""
    n = p.n
    terms = dict(p.items())
    pending = {(a[:-1], b[:-1]) for a, b in terms if a and b and a[-1] == b[-1]}
    while pending:
        g, d = pending.pop()
        family = [(g + (j,), d + (j,)) for j in range(1, n + 1)]
        coeffs = {terms.get(t) for t in family}
        if len(coeffs) != 1 or None in coeffs:
            continue
        (c,) = coeffs
        for t in family:
            del terms[t]
        terms[(g, d)] = terms.get((g, d), 0) + c
        if g and d and g[-1] == d[-1]:
            pending.add((g[:-1], d[:-1]))
    out = PolyMap(n, terms)
    if isinstance(p, PolyUnitary):
        return check_unitary(out)
    return out


def equivalent(p: PolyMap, q: PolyMap) -> bool:
    return canonical_form(p) == canonical_form(q)


def is_identity(p: PolyMap) -> bool:
    return canonical_form(p) == PolyMap.identity(p.n)


def gauge_component(p: PolyMap, m: int) -> PolyMap:
    return PolyMap(p.n, {(a, b): c for (a, b), c in p.items() if len(a) - len(b) == m})


def expectation(p: PolyMap) -> PolyMap:
    return gauge_component(p, 0)


def _ad_word(u: PolyUnitary, w: Word, out: list[Word]) -> None:
    b = u.beta_prefix(w)
    if b is not None:
        out.append(u.alpha_of[b] + w[len(b):])
        return
    for i in range(1, u.n + 1):
        _ad_word(u, w + (i,), out)


def ad_action(u: PolyUnitary, c: CylinderUnion) -> CylinderUnion:
    """Ad(u)(P_C) = u P_C u^*, computed by rewriting b.m -> a.m."""
    out: list[Word] = []
    for w in c.words:
        _ad_word(u, w, out)
    return normalize(out, c.n)


def ad_shifted_action(u: PolyUnitary, m: int, c: CylinderUnion) -> CylinderUnion:
    """Ad(phi^m(u))(P_C) without expanding phi^m(u).

    phi^m(u) acts on the tail after the first m letters; cylinders of depth
    <= m are left alone.
    """
    if m < 0:
        raise CuntzError("shift depth must be >= 0")
    out: list[Word] = []
    for w in c.words:
        if len(w) <= m:
            out.append(w)
            continue
        head = w[:m]
        tails: list[Word] = []
        _ad_word(u, w[m:], tails)
        out.extend(head + t for t in tails)
    return normalize(out, c.n)


def lambda_on_cylinders(u: PolyUnitary, c: CylinderUnion) -> CylinderUnion:
    """lambda_u(P_C) = Ad(u_M)(P_C) for any M >= the longest word of C.

    Ad(u_M) = Ad(u) Ad(phi(u)) ... Ad(phi^{M-1}(u)), applied innermost first.
    """
    out = c
    for m in reversed(range(c.max_length)):
        out = ad_shifted_action(u, m, out)
    return out
