"""Dynamics induced on the Cantor set X_n.

Points are eventually periodic infinite words sigma tau tau tau ...; on those
the action of Ad(u) is computed exactly. For general lambda_u only finite
approximations F_d of the fixed set are available.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .clopen import CylinderUnion, join, meet, normalize
from .errors import CuntzError, NotDiagonalAutomorphismError
from .gamma import Automorphism, decide_diagonal
from .poly import PolyUnitary, ad_action, lambda_on_cylinders
from .words import Alphabet, Word, WordLike, as_word, is_prefix, word_str


def _primitive_root(t: Word) -> Word:
    m = len(t)
    for d in range(1, m + 1):
        if m % d == 0 and t[:d] * (m // d) == t:
            return t[:d]
    return t


@dataclass(frozen=True)
class EpPoint:
    """The infinite word preperiod . period^infinity, kept canonical."""

    preperiod: Word
    period: Word

    def __post_init__(self):
        if not self.period:
            raise CuntzError("period must be nonempty")
        s, t = tuple(self.preperiod), _primitive_root(tuple(self.period))
        while s and s[-1] == t[-1]:
            s, t = s[:-1], (t[-1],) + t[:-1]
        object.__setattr__(self, "preperiod", s)
        object.__setattr__(self, "period", t)

    @classmethod
    def of(cls, preperiod: WordLike, period: WordLike) -> EpPoint:
        return cls(as_word(preperiod), as_word(period))

    def prefix(self, k: int) -> Word:
        s, t = self.preperiod, self.period
        if k <= len(s):
            return s[:k]
        reps = (k - len(s)) // len(t) + 1
        return (s + t * reps)[:k]

    def drop(self, k: int) -> EpPoint:
        s, t = self.preperiod, self.period
        if k <= len(s):
            return EpPoint(s[k:], t)
        r = (k - len(s)) % len(t)
        return EpPoint((), t[r:] + t[:r])

    def prepend(self, w: Word) -> EpPoint:
        return EpPoint(w + self.preperiod, self.period)

    def __str__(self):
        return f"{word_str(self.preperiod)}({word_str(self.period)})^inf"


def common_prefix(x: EpPoint, y: EpPoint) -> float:
    """Length of the longest common prefix, inf when x == y."""
    if x == y:
        return float("inf")
    bound = max(len(x.preperiod), len(y.preperiod)) + 2 * len(x.period) * len(y.period) + 1
    a, b = x.prefix(bound), y.prefix(bound)
    k = 0
    while k < bound and a[k] == b[k]:
        k += 1
    return k


def ad_point_map(u: PolyUnitary, x: EpPoint) -> EpPoint:
    """Ad(u)_* sends b.w to a.w for each pair (a, b) of u."""
    head = x.prefix(max(len(b) for _, b in u.pairs()))
    b = u.beta_prefix(head)
    if b is None:
        raise CuntzError("right code does not cover the point")
    return x.drop(len(b)).prepend(u.alpha_of[b])


@dataclass(frozen=True)
class FixedPointReport:
    clopen_part: CylinderUnion
    isolated: tuple[tuple[EpPoint, str], ...] = field(default=())

    @property
    def attractors(self) -> list[EpPoint]:
        return [p for p, kind in self.isolated if kind == "attractor"]

    @property
    def repellers(self) -> list[EpPoint]:
        return [p for p, kind in self.isolated if kind == "repeller"]


def classify_ad_fixed(u: PolyUnitary) -> FixedPointReport:
    diag = []
    isolated: dict[EpPoint, str] = {}
    for a, b in u.pairs():
        if a == b:
            diag.append(b)
        elif is_prefix(b, a):
            isolated.setdefault(EpPoint(b, a[len(b):]), "attractor")
        elif is_prefix(a, b):
            isolated.setdefault(EpPoint(a, b[len(a):]), "repeller")
    items = tuple(sorted(isolated.items(), key=lambda kv: (kv[1], kv[0].preperiod, kv[0].period)))
    return FixedPointReport(normalize(diag, u.n), items)


def _require_diagonal_automorphism(u: PolyUnitary) -> None:
    if not isinstance(decide_diagonal(u), Automorphism):
        raise NotDiagonalAutomorphismError("lambda_u does not restrict to an automorphism of the diagonal")


def fixed_set_approx(u: PolyUnitary, d: int) -> CylinderUnion:
    """F_d: the points x whose depth-d cylinder [w] meets lambda_u(P_w) at x."""
    _require_diagonal_automorphism(u)
    out = CylinderUnion.empty(u.n)
    for w in Alphabet(u.n).words(d):
        cyl = CylinderUnion(u.n, (w,))
        out = join(out, meet(cyl, lambda_on_cylinders(u, cyl)))
    return out


def corner_dimension(u: PolyUnitary, gamma: WordLike, k: int) -> int:
    """dim lambda_u(D_n^k) P_gamma: the level-k words whose image meets [gamma]."""
    g = as_word(gamma)
    count = 0
    for w in Alphabet(u.n).words(k):
        img = lambda_on_cylinders(u, CylinderUnion(u.n, (w,)))
        if img.intersects(g):
            count += 1
    return count


@dataclass
class AdCharReport:
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_adchar(u: PolyUnitary, depth: int) -> AdCharReport:
    """Check Ad(u)(P_b phi^{|b|}(P_d)) = P_a phi^{|a|}(P_d) for every pair and every
    word d of length <= depth, that Ad(u)(P_g) is standard for |g| in
    {ell', ell' + 1}, and the shift identity
    Ad(u)(phi^k(P_d)) = sum_(a,b) phi^{k+|a|-|b|}(P_d) P_a at k = ell' + 1."""
    n = u.n
    alph = Alphabet(n)
    rep = AdCharReport()
    for a, b in u.pairs():
        for m in range(depth + 1):
            for dw in alph.words(m):
                rep.checked += 1
                got = ad_action(u, CylinderUnion(n, (b + dw,)))
                if got != CylinderUnion(n, (a + dw,)):
                    rep.violations.append(("pair", word_str(a), word_str(b), word_str(dw)))
    for m in (u.ell_prime, u.ell_prime + 1):
        for g in alph.words(m):
            rep.checked += 1
            if len(ad_action(u, CylinderUnion(n, (g,)))) != 1:
                rep.violations.append(("standard", word_str(g)))
    k = u.ell_prime + 1
    for m in range(min(depth, 2) + 1):
        for dw in alph.words(m):
            rep.checked += 1
            lhs = ad_action(u, normalize((v + dw for v in alph.words(k)), n))
            rhs = normalize(
                (a + v + dw for a, b in u.pairs() for v in alph.words(k - len(b))),
                n,
            )
            if lhs != rhs:
                rep.violations.append(("shift", word_str(dw)))
    return rep
