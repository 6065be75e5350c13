"""Invertibility of lambda_u on the whole Cuntz algebra.

The pipeline:

1. the diagonal gate (Gamma_u acyclic), without which lambda_u is not onto;
2. a gauge fix w = v u phi(v^*) with E(w) != 0, which changes lambda_u only by
   the inner automorphism Ad(v);
3. for unitaries whose pairs satisfy |a| - |b| in {-1, 0, 1}: a degree-one
   word in Z_u and, for every ordered pair of distinct level-k words, a family
   of balanced path pairs in Delta_u whose total labels partition X_n.

Anything the search cannot settle within budget is reported as Inconclusive.
"""

from __future__ import annotations

import itertools
from collections import defaultdict, deque
from dataclasses import dataclass, field

from .clopen import PartitionCode, complement, kraft_sum, normalize
from .errors import CuntzError, NotInRestrictedClassError
from .gamma import Automorphism, decide_diagonal
from .poly import (
    PolyMap,
    PolyUnitary,
    _term_product,
    adjoint,
    canonical_form,
    check_unitary,
    expectation,
    identity,
    multiply,
    shift_phi,
)
from .words import Alphabet, Word, is_prefix, orthogonal, word_str

Path = tuple[Word, ...]

DEFAULT_DEPTH = 12
DEFAULT_BFS_CAP = 10**6
DEFAULT_K_MAX = 50


def refine_left(u: PolyUnitary, k: int) -> list[tuple[Word, Word]]:
    """Refine every pair (a, b) to {(a m, b m) : |a m| = k}; requires k >= ell."""
    if k < u.ell:
        raise CuntzError(f"level {k} is below ell = {u.ell}")
    out = []
    for a, b in u.pairs():
        for m in Alphabet(u.n).words(k - len(a)):
            out.append((a + m, b + m))
    return sorted(out)


def uniform_presentation(u: PolyUnitary) -> tuple[int, list[tuple[Word, Word]]]:
    c = canonical_form(u)
    for a, b in c.pairs():
        if abs(len(a) - len(b)) > 1:
            raise NotInRestrictedClassError((a, b))
    k = max(len(a) for a, _ in c.pairs())
    return k, refine_left(c, k)


@dataclass(frozen=True)
class DeltaGraph:
    n: int
    k: int
    vertices: tuple[Word, ...]
    beta_tilde: dict
    degree: dict

    def successors(self, v: Word) -> list[tuple[Word, Word]]:
        """(target, label) for every edge out of v."""
        bt = self.beta_tilde[v]
        d = self.degree[v]
        return [(bt + lab, lab) for lab in Alphabet(self.n).words(d)]

    def edges(self) -> list[tuple[Word, Word, int, Word]]:
        return [(v, t, self.degree[v], lab) for v in self.vertices for t, lab in self.successors(v)]

    def label(self, path: Path) -> Word:
        out: Word = ()
        for src, dst in zip(path, path[1:]):
            d = self.degree[src]
            if not is_prefix(self.beta_tilde[src], dst):
                raise CuntzError(f"{word_str(src)} -> {word_str(dst)} is not an edge")
            out += dst[len(dst) - d:] if d else ()
        return out

    def path_degree(self, path: Path) -> int:
        return sum(self.degree[v] for v in path[:-1])


def build_delta(u: PolyUnitary) -> DeltaGraph:
    k, pres = uniform_presentation(u)
    bt = {a: b[1:] for a, b in pres}
    deg = {a: k - len(b[1:]) for a, b in pres}
    return DeltaGraph(u.n, k, tuple(a for a, _ in pres), bt, deg)


def _paths_from(delta: DeltaGraph, start: Word, max_edges: int) -> list[tuple[Path, Word]]:
    out = [((start,), ())]
    frontier = [((start,), ())]
    for _ in range(max_edges):
        nxt = []
        for path, lab in frontier:
            for t, l in delta.successors(path[-1]):
                nxt.append((path + (t,), lab + l))
        out.extend(nxt)
        frontier = nxt
    return out


@dataclass(frozen=True)
class OmegaPair:
    x: Path
    y: Path
    gamma: Word


def _close(delta: DeltaGraph, x1: Path, y1: Path, gamma: Word) -> OmegaPair:
    b1, b2 = delta.beta_tilde[x1[-1]], delta.beta_tilde[y1[-1]]
    longer = b1 if len(b1) >= len(b2) else b2
    end = longer + (1,) * (delta.k - len(longer))
    return OmegaPair(x1 + (end,), y1 + (end,), gamma)


def enumerate_omega(delta: DeltaGraph, alpha: Word, alpha_prime: Word, depth: int) -> list[OmegaPair]:
    """All balanced pairs (x, y) with x from alpha, y from alpha_prime, both of
    at most ``depth`` edges. The closing edge goes to the smallest common
    extension of the two last beta-tildes."""
    if alpha == alpha_prime:
        raise CuntzError("balanced pairs need distinct start vertices")
    if depth <= 0:
        return []
    xs = _paths_from(delta, alpha, depth - 1)
    ys = _paths_from(delta, alpha_prime, depth - 1)
    bt = delta.beta_tilde
    xs_by_label: dict[Word, list[Path]] = defaultdict(list)
    ys_by_label: dict[Word, list[Path]] = defaultdict(list)
    for p, lab in xs:
        xs_by_label[lab].append(p)
    for p, lab in ys:
        ys_by_label[lab].append(p)
    out = []
    # beta~_1 = beta~_2 mu and L(x') = L(y') mu; total label L(x')
    for xp, lx in xs:
        b1 = bt[xp[-1]]
        for j in range(len(lx) + 1):
            mu = lx[j:]
            for yp in ys_by_label.get(lx[:j], ()):
                if b1 == bt[yp[-1]] + mu:
                    out.append(_close(delta, xp, yp, lx))
    # beta~_2 = beta~_1 mu with mu nonempty and L(x') mu = L(y'); total label L(y')
    for yp, ly in ys:
        b2 = bt[yp[-1]]
        for j in range(len(ly)):
            mu = ly[j:]
            for xp in xs_by_label.get(ly[:j], ()):
                if b2 == bt[xp[-1]] + mu:
                    out.append(_close(delta, xp, yp, ly))
    out.sort(key=lambda p: (len(p.gamma), p.gamma, len(p.x) + len(p.y), p.x, p.y))
    return out


def is_balanced_pair(delta: DeltaGraph, pair: OmegaPair) -> bool:
    """Re-check the three membership conditions and the total label from scratch."""
    x, y = pair.x, pair.y
    if len(x) < 2 or len(y) < 2:
        return False
    if x[-1] != y[-1] or x[0] == y[0]:
        return False
    try:
        if delta.path_degree(x) != delta.path_degree(y):
            return False
        lx, ly = delta.label(x[:-1]), delta.label(y[:-1])
        delta.label(x[-2:]), delta.label(y[-2:])
    except CuntzError:
        return False
    b1, b2 = delta.beta_tilde[x[-2]], delta.beta_tilde[y[-2]]
    if is_prefix(b2, b1):
        mu = b1[len(b2):]
        return lx == ly + mu and pair.gamma == lx
    if is_prefix(b1, b2):
        mu = b2[len(b1):]
        return lx + mu == ly and pair.gamma == ly
    return False


def z_product(delta: DeltaGraph, path: Path) -> PolyMap:
    """The product of generators S_a S_{b~}^* along the vertices of ``path``."""
    acc = PolyMap.identity(delta.n)
    for v in path:
        acc = multiply(acc, PolyMap(delta.n, [(v, delta.beta_tilde[v])]))
    return acc


def witness_product(delta: DeltaGraph, pair: OmegaPair) -> PolyMap:
    """x'-product times the adjoint of the y'-product; equals S_a P_gamma S_a'^*."""
    return multiply(z_product(delta, pair.x[:-1]), adjoint(z_product(delta, pair.y[:-1])))


@dataclass(frozen=True)
class OmegaCertificate:
    alpha: Word
    alpha_prime: Word
    pairs: tuple[OmegaPair, ...]
    cover: PartitionCode


def verify_certificate(delta: DeltaGraph, cert: OmegaCertificate) -> bool:
    if sorted(p.gamma for p in cert.pairs) != sorted(cert.cover.words):
        return False
    if kraft_sum(cert.cover.words, delta.n) != 1:
        return False
    for p in cert.pairs:
        if p.x[0] != cert.alpha or p.y[0] != cert.alpha_prime:
            return False
        if not is_balanced_pair(delta, p):
            return False
        expected = PolyMap(delta.n, [(cert.alpha + p.gamma, cert.alpha_prime + p.gamma)])
        if witness_product(delta, p) != expected:
            return False
    return True


def disjoint_subcover(pairs: list[OmegaPair]) -> list[OmegaPair]:
    """Shortest-first greedy choice of pairs with mutually orthogonal labels."""
    kept: list[OmegaPair] = []
    seen: set[Word] = set()
    for p in sorted(pairs, key=lambda p: (len(p.gamma), p.gamma)):
        if p.gamma in seen:
            continue
        seen.add(p.gamma)
        if all(orthogonal(p.gamma, q.gamma) for q in kept):
            kept.append(p)
    return kept


@dataclass(frozen=True)
class Yes:
    certificate: OmegaCertificate
    depth: int


@dataclass(frozen=True)
class Unknown:
    depth: int


def matrix_unit_in_range(
    delta: DeltaGraph, alpha: Word, alpha_prime: Word, depth: int = DEFAULT_DEPTH
) -> Yes | Unknown:
    """Search for a partition of X_n by total labels, deepening one edge at a time."""
    for d in range(1, depth + 1):
        kept = disjoint_subcover(enumerate_omega(delta, alpha, alpha_prime, d))
        if kraft_sum((p.gamma for p in kept), delta.n) == 1:
            cover = PartitionCode(delta.n, tuple(sorted(p.gamma for p in kept)))
            return Yes(OmegaCertificate(alpha, alpha_prime, tuple(kept), cover), d)
    return Unknown(depth)


def _complete(domain: list[Word], rng: list[Word], n: int) -> list[tuple[Word, Word]]:
    """Extend the partial bijection domain[i] -> rng[i] to a unitary's pair list."""
    dom_rest = list(complement(normalize(domain, n)).words)
    rng_rest = list(complement(normalize(rng, n)).words)

    def split_first(ws: list[Word]) -> list[Word]:
        w = ws[0]
        return sorted(ws[1:] + [w + (i,) for i in range(1, n + 1)])

    while len(dom_rest) != len(rng_rest):
        if not dom_rest or not rng_rest:
            raise CuntzError("cannot complete the partial map to a unitary")
        if len(dom_rest) < len(rng_rest):
            dom_rest = split_first(dom_rest)
        else:
            rng_rest = split_first(rng_rest)
    pairs = list(zip(rng, domain)) + list(zip(sorted(rng_rest), sorted(dom_rest)))
    return pairs


def gauge_fix(u: PolyUnitary) -> tuple[PolyUnitary, PolyUnitary]:
    """Return (v, w) with w = v u phi(v^*) and E(w) != 0."""
    n = u.n
    if expectation(u):
        return identity(n), u
    a, b = next((a, b) for a, b in u.pairs() if len(a) > len(b))
    bt = b[1:]
    if orthogonal(a, bt):
        domain, rng = [a, bt], [(1, 1), (2,)]
    else:
        mu = a[len(bt):]
        nu = next(w for w in Alphabet(n).words(len(mu)) if w != mu)
        domain, rng = [a, bt + nu], [(1,), (2,) * len(mu)]
    v = check_unitary(PolyMap(n, _complete(domain, rng, n)))
    w = check_unitary(multiply(multiply(v, u), shift_phi(adjoint(v))))
    if not expectation(w):
        raise CuntzError("gauge fix failed to produce a degree-zero term")
    return v, w


def find_degree_one_word(u: PolyUnitary, k: int, budget: int = DEFAULT_BFS_CAP) -> PolyMap | None:
    """A single-term product z = S_m S_v^* of generators S_a S_{b~}^* and their
    adjoints with |m| = k and |v| = k - 1."""
    if budget <= 0:
        return None
    gens = [(a, b[1:]) for a, b in refine_left(canonical_form(u), k)]
    gens += [(b, a) for a, b in gens]
    seen = set()
    queue = deque()
    for g in gens:
        if g not in seen:
            seen.add(g)
            queue.append(g)
    visited = 0
    while queue and visited < budget:
        m, v = queue.popleft()
        visited += 1
        if len(m) == k and len(v) == k - 1:
            return PolyMap(u.n, [(m, v)])
        for a, b in gens:
            t = _term_product(m, v, a, b)
            if t is not None and t not in seen:
                seen.add(t)
                queue.append(t)
    return None


@dataclass(frozen=True)
class Invertible:
    evidence: dict = field(compare=False)

    verdict = "invertible"


@dataclass(frozen=True)
class NotInvertible:
    reason: str
    detail: object = field(default=None, compare=False)

    verdict = "not_invertible"


@dataclass(frozen=True)
class Inconclusive:
    stage: str
    detail: object = field(default=None, compare=False)

    verdict = "inconclusive"


InvertibilityVerdict = Invertible | NotInvertible | Inconclusive


def _off_diagonal(u: PolyUnitary):
    c = canonical_form(u)
    off = [(a, b) for a, b in c.pairs() if a != b]
    diag = [a for a, b in c.pairs() if a == b]
    return off, diag


def _rest_is_identity(diag: list[Word], moved: list[Word], n: int) -> bool:
    return normalize(diag, n) == complement(normalize(moved, n))


def match_swap_template(u: PolyUnitary) -> dict | None:
    """u = S_nu S_mu^* + S_mu S_nu^* + 1 - P_nu - P_mu with nu~ = j_1..j_r mu~,
    every j outside {mu_1, nu_1}. Invertible once the diagonal gate passes."""
    off, diag = _off_diagonal(u)
    if len(off) != 2:
        return None
    (a1, b1), (a2, b2) = off
    if (a1, b1) != (b2, a2) or not a1 or not b1:
        return None
    if not _rest_is_identity(diag, [a1, b1], u.n):
        return None
    for nu, mu in ((a1, b1), (b1, a1)):
        nt, mt = nu[1:], mu[1:]
        r = len(nt) - len(mt)
        if r >= 0 and nt[r:] == mt and all(j not in (mu[0], nu[0]) for j in nt[:r]):
            return {"template": "swap", "nu": word_str(nu), "mu": word_str(mu)}
    return None


def match_three_cycle_template(u: PolyUnitary) -> dict | None:
    """u = S_a1 S_a2^* + S_a2 S_a3^* + S_a3 S_a1^* + 1 - P_a1 - P_a2 - P_a3 with all
    a_j starting with one letter i and a_j~ = g_j m, no g_j containing i."""
    off, diag = _off_diagonal(u)
    if len(off) != 3:
        return None
    nxt = dict(off)
    a1 = off[0][0]
    cyc = [a1, nxt.get(a1)]
    if cyc[1] is None or nxt.get(cyc[1]) is None:
        return None
    cyc.append(nxt[cyc[1]])
    if nxt.get(cyc[2]) != a1 or len(set(cyc)) != 3 or set(nxt) != set(cyc):
        return None
    if not all(orthogonal(x, y) for x, y in itertools.combinations(cyc, 2)):
        return None
    if not _rest_is_identity(diag, cyc, u.n):
        return None
    i = cyc[0][0] if cyc[0] else None
    if i is None or any(not a or a[0] != i for a in cyc):
        return None
    tails = [a[1:] for a in cyc]
    for m_len in range(min(len(t) for t in tails), -1, -1):
        ends = {t[len(t) - m_len:] for t in tails}
        if len(ends) == 1 and all(i not in t[: len(t) - m_len] for t in tails):
            return {"template": "three_cycle", "words": [word_str(a) for a in cyc], "letter": i}
    return None


def decide_invertible(
    u: PolyUnitary,
    depth: int = DEFAULT_DEPTH,
    k_max: int = DEFAULT_K_MAX,
    bfs: int = DEFAULT_BFS_CAP,
) -> InvertibilityVerdict:
    diag = decide_diagonal(u)
    if not isinstance(diag, Automorphism):
        return NotInvertible("diagonal", diag.cycle)
    v, w = gauge_fix(u)
    evidence: dict = {"gauge": v, "fixed": w, "k_max": k_max, "depth": depth}
    try:
        delta = build_delta(w)
    except NotInRestrictedClassError as exc:
        return _template_or(u, evidence, Inconclusive("restricted_class", exc.pair))
    evidence["delta"] = delta
    if len(delta.vertices) == 1:
        # level 0: w is the identity
        evidence["certificates"] = {}
        return Invertible(evidence)
    z = find_degree_one_word(w, delta.k, bfs)
    if z is None:
        return _template_or(u, evidence, Inconclusive("degree_one_word"))
    evidence["z"] = z
    certs = {}
    for a, a2 in itertools.permutations(delta.vertices, 2):
        res = matrix_unit_in_range(delta, a, a2, depth)
        if isinstance(res, Unknown):
            return _template_or(u, evidence, Inconclusive("matrix_units", (a, a2)))
        certs[(a, a2)] = res
    evidence["certificates"] = certs
    return Invertible(evidence)


def _template_or(u: PolyUnitary, evidence: dict, fallback: Inconclusive) -> InvertibilityVerdict:
    for matcher in (match_swap_template, match_three_cycle_template):
        hit = matcher(u)
        if hit is not None:
            evidence["template"] = hit
            evidence["skipped"] = fallback.stage
            return Invertible(evidence)
    return fallback
