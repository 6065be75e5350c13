"""Brute-force stabilization oracle for the sequences Ad(u_k^*)(P_g).

C_0 = {g} and C_{m+1} = Ad(phi^m(u^*))(C_m). Once every word of C_m has
length <= m the later conjugations only touch letters past position m, so the
sequence is constant from there on. That length certificate makes
stabilization a decidable positive event; only its failure is budgeted.

C_m is kept factored: C_m is the union of p.T_p over the words p of length m,
and each tail set T_p evolves by T -> a^{-1} Ad(u^*)(T) independently of p.
Tracking only the distinct tails of each layer keeps the oracle exact while
C_m itself may have exponentially many words.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .clopen import CylinderUnion, join, normalize
from .errors import BudgetExceededError, CuntzError, NotDiagonalAutomorphismError
from .gamma import Automorphism, decide_diagonal
from .poly import PolyUnitary, ad_action, ad_shifted_action, adjoint
from .words import Alphabet, Word, WordLike, as_word

DEFAULT_K_MAX = 50


class TailDynamics:
    """Memoized tail step T -> (a^{-1} Ad(u^*)(T))_a for a fixed unitary."""

    def __init__(self, u: PolyUnitary):
        self.n = u.n
        self._ustar = adjoint(u)
        self._step: dict[CylinderUnion, tuple[CylinderUnion, ...]] = {}
        self._expand: dict[tuple[CylinderUnion, int], CylinderUnion] = {}

    def children(self, t: CylinderUnion) -> tuple[CylinderUnion, ...]:
        got = self._step.get(t)
        if got is None:
            img = ad_action(self._ustar, t)
            if () in img.words:
                got = (img,) * self.n
            else:
                got = tuple(
                    CylinderUnion(self.n, tuple(w[1:] for w in img.words if w[0] == a))
                    for a in range(1, self.n + 1)
                )
            self._step[t] = got
        return got

    def expand(self, t: CylinderUnion, depth: int) -> CylinderUnion:
        """The part of C_{m+depth} below a prefix whose tail at step m is t."""
        if depth == 0 or not t or () in t.words:
            return t
        key = (t, depth)
        got = self._expand.get(key)
        if got is None:
            words = []
            for a, child in enumerate(self.children(t), 1):
                words.extend((a,) + w for w in self.expand(child, depth - 1).words)
            got = normalize(words, self.n)
            self._expand[key] = got
        return got


@dataclass(frozen=True)
class StabilizedAt:
    k: int
    limit: CylinderUnion

    stabilized = True


@dataclass(frozen=True)
class BudgetExceeded:
    k_max: int
    max_word_length_trace: tuple[int, ...]
    # (i, j) with the live tails of C_j equal to those of C_i: a proof that the
    # sequence never stabilizes, independent of the budget
    recurrence: tuple[int, int] | None
    _start: CylinderUnion = field(repr=False, compare=False)
    _dyn: TailDynamics = field(repr=False, compare=False)

    stabilized = False

    @cached_property
    def last(self) -> CylinderUnion:
        """C_{k_max}; materializing it can be expensive."""
        return self._dyn.expand(self._start, self.k_max)


StabilizationResult = StabilizedAt | BudgetExceeded


def conjugation_sequence(u: PolyUnitary, c: CylinderUnion, steps: int):
    """Yield C_0, C_1, ..., C_steps with C_m = Ad(u_m^*)(P_C), fully expanded."""
    ustar = adjoint(u)
    cur = c
    yield cur
    for m in range(steps):
        cur = ad_shifted_action(ustar, m, cur)
        yield cur


def _trivial(t: CylinderUnion) -> bool:
    return not t or t.words == ((),)


def stabilize_cylinders(
    u: PolyUnitary,
    c: CylinderUnion,
    k_max: int = DEFAULT_K_MAX,
    dynamics: TailDynamics | None = None,
) -> StabilizationResult:
    if k_max < 1:
        raise CuntzError("k_max must be >= 1")
    dyn = dynamics or TailDynamics(u)
    layer = {c}
    trace = []
    seen: dict[frozenset, int] = {}
    recurrence = None
    for k in range(k_max + 1):
        live = frozenset(t for t in layer if not _trivial(t))
        if not live:
            return StabilizedAt(k, dyn.expand(c, k))
        trace.append(k + max(t.max_length for t in live))
        if recurrence is None:
            if live in seen:
                recurrence = (seen[live], k)
            else:
                seen[live] = k
        if k == k_max:
            break
        # trivial tails stay trivial, so only live ones move on
        layer = {ch for t in live for ch in dyn.children(t)}
    return BudgetExceeded(k_max, tuple(trace), recurrence, c, dyn)


def stabilize_projection(
    u: PolyUnitary, gamma: WordLike, k_max: int = DEFAULT_K_MAX, dynamics: TailDynamics | None = None
) -> StabilizationResult:
    return stabilize_cylinders(u, CylinderUnion(u.n, (as_word(gamma),)), k_max, dynamics)


@dataclass(frozen=True)
class AllStabilized:
    max_k: int
    results: dict

    ok = True


@dataclass(frozen=True)
class Failures:
    words: tuple[Word, ...]
    results: dict

    ok = False


def check_all_level(u: PolyUnitary, k_max: int = DEFAULT_K_MAX) -> AllStabilized | Failures:
    """Run the oracle on every word of length ell'(u)."""
    dyn = TailDynamics(u)
    results = {g: stabilize_projection(u, g, k_max, dyn) for g in Alphabet(u.n).words(u.ell_prime)}
    bad = tuple(g for g, r in results.items() if not r.stabilized)
    if bad:
        return Failures(bad, results)
    return AllStabilized(max(r.k for r in results.values()), results)


def inverse_on_diagonal(u: PolyUnitary, c: CylinderUnion, k_max: int = DEFAULT_K_MAX) -> CylinderUnion:
    """The clopen set L with lambda_u(P_L) = P_C."""
    if not isinstance(decide_diagonal(u), Automorphism):
        raise NotDiagonalAutomorphismError("lambda_u does not restrict to an automorphism of the diagonal")
    out = CylinderUnion.empty(u.n)
    for w in c.words:
        r = stabilize_projection(u, w, k_max)
        if not r.stabilized:
            raise BudgetExceededError(f"no stabilization certificate for {w} within k_max={k_max}")
        out = join(out, r.limit)
    return out
