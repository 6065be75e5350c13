from hypothesis import given, settings

from polycuntz.gamma import SINK, Automorphism, NotAutomorphism, build_gamma, decide_diagonal, find_cycle, to_dot, vertex_str

from corpus import ACYCLIC6, ID2, LOOP5, NONSURJ_A, NONSURJ_B, SUPER, unitaries


def edge_set(g):
    return {(vertex_str(s), lab, vertex_str(t)) for s, lab, t in g.edges}


def test_loop_graph_edges():
    g = build_gamma(LOOP5)
    assert len(g.vertices) == 5
    assert edge_set(g) == {
        ("21", 2, "1"),
        ("1", 2, "21,22"),
        ("22", 1, "∅"),
        ("21,22", 2, "1"),
        ("21,22", 1, "∅"),
    }


def test_loop_graph_cycle():
    cyc = find_cycle(build_gamma(LOOP5))
    assert cyc.as_json() == [["1"], "2", ["21", "22"], "2", ["1"]]
    v = decide_diagonal(LOOP5)
    assert isinstance(v, NotAutomorphism) and v.witness_vertex == frozenset([(1,)])


def test_acyclic_six_pair_graph():
    g = build_gamma(ACYCLIC6)
    assert (len(g.vertices), g.edge_count()) == (10, 9)
    assert find_cycle(g) is None
    assert isinstance(decide_diagonal(ACYCLIC6), Automorphism)


def test_identity_graph():
    g = build_gamma(ID2)
    assert edge_set(g) == {("1", 1, "∅"), ("2", 2, "∅")}
    assert len(g.vertices) == 3
    assert find_cycle(g) is None


def test_self_loop():
    assert find_cycle(build_gamma(NONSURJ_A)).as_json() == [["2"], "2", ["2"]]


def test_involutive_unitary_graph():
    g = build_gamma(SUPER)
    assert edge_set(g) == {
        ("11", 1, "2"),
        ("121", 1, "11,121,122"),
        ("122", 1, "2"),
        ("2", 2, "∅"),
        ("11,121,122", 1, "∅"),
    }
    assert len(g.vertices) == 6
    assert decide_diagonal(SUPER).verdict == "automorphism"


def test_swapped_pair_cycle():
    assert decide_diagonal(NONSURJ_B).cycle.as_json() == [["1"], "2", ["21", "22"], "2", ["1"]]


def test_dot_export():
    dot = to_dot(build_gamma(LOOP5))
    assert '"1" -> "21,22" [label="(2)"];' in dot
    id_dot = to_dot(build_gamma(ID2))
    assert id_dot.count("->") == 2 and '"∅";' in id_dot


@settings(max_examples=80)
@given(unitaries())
def test_graph_invariants(u):
    g = build_gamma(u)
    assert g.successors(SINK) == []
    assert len(g.vertices) <= 2 ** len(g.code) + 1
    for v in g.vertices:
        labels = [lab for lab, _ in g.successors(v)]
        assert len(labels) == len(set(labels)) <= u.n
        if len(v) == 1:
            (a,) = v
            assert len(labels) == 1
            if a in u.beta_of:
                assert labels == [u.beta_of[a][0]]
    assert build_gamma(u) == g
    cyc = find_cycle(g)
    if cyc is not None:
        for s, lab, t in zip(cyc.vertices, cyc.labels, cyc.vertices[1:] + cyc.vertices[:1]):
            assert (lab, t) in g.successors(s)
