import itertools

import pytest
from hypothesis import given, settings

from polycuntz.errors import CuntzError, NotInRestrictedClassError
from polycuntz.invertibility import (
    Inconclusive,
    Invertible,
    NotInvertible,
    Unknown,
    Yes,
    build_delta,
    decide_invertible,
    enumerate_omega,
    find_degree_one_word,
    gauge_fix,
    is_balanced_pair,
    match_swap_template,
    match_three_cycle_template,
    matrix_unit_in_range,
    uniform_presentation,
    verify_certificate,
    witness_product,
)
from polycuntz.poly import PolyMap, adjoint, expectation, gauge_component, identity, multiply, shift_phi
from polycuntz.words import Alphabet

from corpus import ID2, NONSURJ_A, NONSURJ_B, NONSURJ_C, SUPER, THREE_CYCLE, ZERO_E, unitaries, unitary

SWAP3 = unitary(3, [("23", "1"), ("1", "23"), ("21", "21"), ("22", "22"), ("3", "3")])


def test_uniform_presentation():
    k, pres = uniform_presentation(SUPER)
    assert k == 3 and len(pres) == 8
    assert [a for a, _ in pres] == list(Alphabet(2).words(3))
    assert uniform_presentation(ID2) == (0, [((), ())])
    with pytest.raises(NotInRestrictedClassError) as e:
        uniform_presentation(unitary(2, [("111", "1"), ("112", "21"), ("12", "221"), ("2", "222")]))
    assert e.value.pair == ((1, 1, 1), (1,))


def test_delta_graph_shape():
    d = build_delta(SUPER)
    assert d.k == 3 and len(d.vertices) == 8
    for v in d.vertices:
        assert d.degree[v] == d.k - len(d.beta_tilde[v])
        succ = d.successors(v)
        assert len(succ) == 2 ** d.degree[v]
        for t, lab in succ:
            assert t[: len(d.beta_tilde[v])] == d.beta_tilde[v]
            assert lab == t[len(t) - d.degree[v]:] if d.degree[v] else lab == ()
    for w in ((2, 1, 1), (2, 1, 2), (2, 2, 1), (2, 2, 2)):
        assert d.degree[w] == 1


def test_three_cycle_is_outside_restricted_class():
    # the pair (1221, 11) changes length by 2
    with pytest.raises(NotInRestrictedClassError):
        build_delta(THREE_CYCLE)


def test_enumerate_omega():
    d = build_delta(SUPER)
    with pytest.raises(CuntzError):
        enumerate_omega(d, (1, 1, 1), (1, 1, 1), 4)
    assert enumerate_omega(d, (1, 1, 1), (1, 2, 1), 0) == []
    pairs = enumerate_omega(d, (1, 1, 1), (1, 2, 1), 8)
    assert pairs and all(is_balanced_pair(d, p) for p in pairs)


def test_all_matrix_units_of_involution():
    d = build_delta(SUPER)
    for a, a2 in itertools.permutations(d.vertices, 2):
        res = matrix_unit_in_range(d, a, a2, 12)
        assert isinstance(res, Yes) and res.depth <= 12
        cert = res.certificate
        assert verify_certificate(d, cert)
        assert cert.cover.kraft() == 1
        for p in cert.pairs:
            assert witness_product(d, p) == PolyMap(2, [(a + p.gamma, a2 + p.gamma)])


def test_matrix_unit_budget():
    d = build_delta(SUPER)
    assert isinstance(matrix_unit_in_range(d, (1, 1, 1), (1, 1, 2), 1), Unknown)


def test_gauge_fix_identity_when_expectation_nonzero():
    v, w = gauge_fix(SUPER)
    assert v == identity(2) and w == SUPER


def test_gauge_fix_zero_expectation():
    assert not expectation(ZERO_E)
    v, w = gauge_fix(ZERO_E)
    assert w == multiply(multiply(v, ZERO_E), shift_phi(adjoint(v)))
    assert gauge_component(w, 0)


def test_gauge_fix_orthogonal_case():
    # first long pair (111, 12): the tail 2 of its partner is orthogonal to 111
    u = unitary(2, [("111", "12"), ("112", "2"), ("12", "111"), ("2", "112")])
    assert not expectation(u)
    v, w = gauge_fix(u)
    assert w == multiply(multiply(v, u), shift_phi(adjoint(v)))
    assert gauge_component(w, 0)


def test_find_degree_one_word():
    z = find_degree_one_word(SUPER, 3)
    ((m, v),) = z.pairs()
    assert (len(m), len(v)) == (3, 2)
    ((m, v),) = find_degree_one_word(ID2, 1).pairs()
    assert (len(m), len(v)) == (1, 0)
    assert find_degree_one_word(SUPER, 3, budget=0) is None


def test_decide_invertible_verdicts():
    for u in (NONSURJ_A, NONSURJ_B, NONSURJ_C):
        r = decide_invertible(u)
        assert isinstance(r, NotInvertible) and r.reason == "diagonal"
    r = decide_invertible(SUPER)
    assert isinstance(r, Invertible) and "template" not in r.evidence
    assert len(r.evidence["certificates"]) == 56
    r = decide_invertible(THREE_CYCLE)
    assert isinstance(r, Invertible) and r.evidence["template"]["template"] == "three_cycle"
    assert isinstance(decide_invertible(ID2), Invertible)


def test_templates():
    assert match_three_cycle_template(THREE_CYCLE)["words"] == ["11", "121", "1221"]
    assert match_swap_template(SWAP3) is not None
    assert match_swap_template(SUPER) is not None
    assert match_swap_template(NONSURJ_A) is None
    assert isinstance(decide_invertible(SWAP3), Invertible)


def test_not_invertible_is_final():
    for depth in (1, 4, 12):
        assert decide_invertible(NONSURJ_A, depth=depth).verdict == "not_invertible"


@settings(max_examples=25, deadline=None)
@given(unitaries(max_size=5, max_len=3))
def test_verdicts_are_checkable(u):
    r = decide_invertible(u, depth=6)
    if isinstance(r, NotInvertible):
        assert r.reason == "diagonal"
        return
    if isinstance(r, Inconclusive):
        assert r.stage in {"restricted_class", "degree_one_word", "matrix_units"}
        return
    ev = r.evidence
    assert gauge_component(ev["fixed"], 0)
    if "template" in ev or "delta" not in ev:
        return
    d = ev["delta"]
    for (a, a2), yes in ev["certificates"].items():
        assert verify_certificate(d, yes.certificate)
