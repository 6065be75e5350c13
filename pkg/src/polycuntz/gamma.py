"""The labeled graph Gamma_u whose acyclicity decides lambda_u(D_n) = D_n.

Vertices are subsets of the left code J_1 (frozensets of words) plus the
empty set, the unique sink. Each singleton {a} gets one edge labeled by the
first letter of its partner b; multi-element vertices are closed under the
union rule until no new vertex appears.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .poly import PolyUnitary, check_unitary, shift_phi
from .words import Word, is_prefix, word_str

Vertex = frozenset

SINK: Vertex = frozenset()


def vertex_key(v: Vertex) -> tuple:
    return (len(v) == 0, len(v), tuple(sorted(v)))


def vertex_str(v: Vertex) -> str:
    if not v:
        return "∅"
    return ",".join(word_str(w) for w in sorted(v))


@dataclass(frozen=True)
class GammaGraph:
    n: int
    code: frozenset
    vertices: tuple[Vertex, ...]
    edges: tuple[tuple[Vertex, int, Vertex], ...]
    _out: dict = field(default=None, compare=False, repr=False)

    def successors(self, v: Vertex) -> list[tuple[int, Vertex]]:
        return self._out.get(v, [])

    def edge_count(self) -> int:
        return len(self.edges)


def _presentation(u: PolyUnitary) -> PolyUnitary:
    # the single pair (e, e) has no first letter to read; use phi-level pairs (i, i)
    if u.pairs() == [((), ())]:
        return check_unitary(shift_phi(u))
    return u


def _singleton_edge(u: PolyUnitary, alpha: Word) -> tuple[int, Vertex]:
    beta = u.beta_of[alpha]
    i, rest = beta[0], beta[1:]
    if not rest:
        return i, SINK
    a = u.alpha_prefix(rest)
    if a is not None:
        return i, frozenset([a])
    return i, frozenset(x for x in u.beta_of if is_prefix(rest, x))


def build_gamma(u: PolyUnitary) -> GammaGraph:
    u = _presentation(u)
    code = frozenset(u.beta_of)
    out: dict[Vertex, list[tuple[int, Vertex]]] = {SINK: []}
    single: dict[Word, tuple[int, Vertex]] = {}
    queue: deque[Vertex] = deque()
    for alpha in sorted(code):
        lab, tgt = _singleton_edge(u, alpha)
        single[alpha] = (lab, tgt)
        out[frozenset([alpha])] = [(lab, tgt)]
    for alpha in sorted(code):
        tgt = single[alpha][1]
        if tgt not in out:
            out[tgt] = []
            queue.append(tgt)
    while queue:
        a_set = queue.popleft()
        edges = []
        for j in range(1, u.n + 1):
            targets = [single[a][1] for a in sorted(a_set) if single[a][0] == j]
            if not targets:
                continue
            if SINK in targets:
                assert len(targets) == 1, "a sink edge must be the only contributor for its letter"
                edges.append((j, SINK))
                continue
            union = frozenset().union(*targets)
            tgt = SINK if union == code else union
            edges.append((j, tgt))
            if tgt not in out:
                out[tgt] = []
                queue.append(tgt)
        out[a_set] = edges
    vertices = tuple(sorted(out, key=vertex_key))
    edge_list = tuple((v, lab, t) for v in vertices for lab, t in out[v])
    return GammaGraph(u.n, code, vertices, edge_list, out)


@dataclass(frozen=True)
class Cycle:
    vertices: tuple[Vertex, ...]
    labels: tuple[int, ...]

    def __len__(self):
        return len(self.labels)

    def as_json(self) -> list:
        out: list = []
        for v, lab in zip(self.vertices, self.labels):
            out.append([word_str(w) for w in sorted(v)])
            out.append(str(lab))
        out.append([word_str(w) for w in sorted(self.vertices[0])])
        return out


def find_cycle(g: GammaGraph) -> Cycle | None:
    """Shortest closed directed path, started at its smallest vertex; None if acyclic."""
    best: Cycle | None = None
    for start in g.vertices:
        # BFS back to start
        parent: dict[Vertex, tuple[Vertex, int]] = {}
        queue = deque([start])
        seen = {start}
        found = None
        while queue and found is None:
            v = queue.popleft()
            for lab, t in g.successors(v):
                if t == start:
                    found = (v, lab)
                    break
                if t not in seen:
                    seen.add(t)
                    parent[t] = (v, lab)
                    queue.append(t)
        if found is None:
            continue
        verts, labs = [found[0]], [found[1]]
        while verts[-1] != start:
            p, lab = parent[verts[-1]]
            verts.append(p)
            labs.append(lab)
        verts.reverse()
        labs.reverse()
        if best is None or len(labs) < len(best):
            best = Cycle(tuple(verts), tuple(labs))
    return best


@dataclass(frozen=True)
class Automorphism:
    graph: GammaGraph

    verdict = "automorphism"


@dataclass(frozen=True)
class NotAutomorphism:
    graph: GammaGraph
    cycle: Cycle

    verdict = "not_automorphism"

    @property
    def witness_vertex(self) -> Vertex:
        return self.cycle.vertices[0]


DiagonalVerdict = Automorphism | NotAutomorphism


def decide_diagonal(u: PolyUnitary) -> DiagonalVerdict:
    g = build_gamma(u)
    cyc = find_cycle(g)
    if cyc is None:
        return Automorphism(g)
    return NotAutomorphism(g, cyc)


def to_dot(g: GammaGraph, name: str = "Gamma") -> str:
    lines = [f"digraph {name} {{"]
    for v in g.vertices:
        lines.append(f'  "{vertex_str(v)}";')
    for v, lab, t in g.edges:
        lines.append(f'  "{vertex_str(v)}" -> "{vertex_str(t)}" [label="({lab})"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
