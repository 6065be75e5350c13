import pytest
from hypothesis import given, settings, strategies as st

from polycuntz.clopen import CylinderUnion, normalize
from polycuntz.errors import CoefficientError, NotAPartitionError
from polycuntz.poly import (
    PolyMap,
    ad_action,
    ad_shifted_action,
    adjoint,
    apply_lambda,
    canonical_form,
    check_unitary,
    compose,
    expectation,
    gauge_component,
    identity,
    is_identity,
    lambda_on_cylinders,
    multiply,
    shift_phi,
    u_tower,
)
from polycuntz.words import Alphabet, as_word

from corpus import NONSURJ_A, NONSURJ_C, SUPER, ZERO_E, unitaries, unitary


def P(n, pairs):
    return PolyMap.from_pairs(n, pairs)


def act(u, t):
    """Point oracle: S_a S_b^* sends b.w to a.w."""
    for a, b in u.pairs():
        if t[: len(b)] == b:
            return a + t[len(b):]
    raise AssertionError("right code does not cover the word")


def same_operator(u, v, length=10):
    for t in Alphabet(u.n).words(length) if u.n == 2 else Alphabet(u.n).words(6):
        x, y = act(u, t), act(v, t)
        k = min(len(x), len(y))
        if x[:k] != y[:k]:
            return False
    return True


def test_check_unitary():
    u = check_unitary(P(2, [("11", "1"), ("12", "21"), ("2", "22")]))
    assert u.ell == 2 and u.ell_prime == 2
    assert check_unitary(P(2, [("1", "1"), ("2", "2")]))
    with pytest.raises(NotAPartitionError) as e:
        check_unitary(P(2, [("11", "1"), ("12", "21"), ("2", "21")]))
    assert (e.value.side, e.value.witness) == ("right", (2, 1))
    with pytest.raises(CoefficientError):
        check_unitary(PolyMap(2, {((1,), (1,)): 2, ((2,), (2,)): 1}))


def test_multiply_rules():
    assert is_identity(multiply(NONSURJ_C, adjoint(NONSURJ_C)))
    assert multiply(P(2, [("1", "2")]), P(2, [("2", "1")])) == P(2, [("1", "1")])
    assert not multiply(P(2, [("1", "2")]), P(2, [("1", "2")]))
    # b a prefix of m, and m a proper prefix of b
    assert multiply(P(2, [("1", "2")]), P(2, [("21", "e")])) == P(2, [("11", "e")])
    assert multiply(P(2, [("1", "21")]), P(2, [("2", "e")])) == P(2, [("1", "1")])


def test_adjoint():
    assert adjoint(NONSURJ_A) == P(2, [("1", "11"), ("21", "12"), ("22", "2")])
    assert adjoint(identity(2)) == identity(2)


def test_shift_phi():
    assert shift_phi(P(2, [("1", "2"), ("2", "1")])) == P(2, [("11", "12"), ("21", "22"), ("12", "11"), ("22", "21")])
    assert canonical_form(shift_phi(P(2, [("1", "1"), ("2", "2")]))) == identity(2)
    assert shift_phi(SUPER).ell == SUPER.ell + 1


def test_u_tower():
    assert is_identity(u_tower(identity(2), 5))
    assert u_tower(SUPER, 1) == SUPER
    assert u_tower(SUPER, 0) == identity(2)
    assert u_tower(SUPER, 2).ell_prime <= 5


def test_apply_lambda():
    assert apply_lambda(SUPER, P(2, [("1", "e")])) == P(2, [("11", "21"), ("121", "1"), ("122", "22")])
    assert apply_lambda(SUPER, P(2, [("2", "e")])) == P(2, [("2", "e")])
    p = P(2, [("12", "2"), ("1", "e")])
    assert apply_lambda(identity(2), p) == p


def test_compose():
    assert is_identity(compose(SUPER, SUPER))
    assert compose(identity(2), NONSURJ_A) == NONSURJ_A


def test_canonical_form():
    assert canonical_form(P(2, [("11", "11"), ("12", "12"), ("2", "2")])) == identity(2)
    assert canonical_form(NONSURJ_A) == NONSURJ_A


def test_gauge_component():
    assert expectation(SUPER) == P(2, [("122", "122"), ("2", "2")])
    assert not expectation(ZERO_E)
    assert not gauge_component(identity(2), 1)
    assert gauge_component(SUPER, 1) == P(2, [("121", "11")])


def test_ad_action():
    assert ad_action(NONSURJ_C, CylinderUnion.of(2, ["21"])) == CylinderUnion.of(2, ["21"])
    assert ad_action(SUPER, CylinderUnion.full(2)) == CylinderUnion.full(2)


def test_ad_shifted_action():
    c = CylinderUnion.of(2, ["1", "21"])
    assert ad_shifted_action(NONSURJ_C, 1, c) == CylinderUnion.of(2, ["1", "222"])
    assert ad_shifted_action(NONSURJ_C, 3, c) == c
    assert ad_shifted_action(NONSURJ_C, 0, c) == ad_action(NONSURJ_C, c)
    # oracle: conjugate by the explicit shifted unitary
    phi_u = check_unitary(shift_phi(NONSURJ_C))
    explicit = multiply(multiply(phi_u, PolyMap.projection(c)), adjoint(phi_u))
    assert canonical_form(explicit).to_cylinders() == CylinderUnion.of(2, ["1", "222"])


@settings(max_examples=60)
@given(unitaries())
def test_group_axioms(u):
    assert is_identity(multiply(u, adjoint(u)))
    assert is_identity(multiply(adjoint(u), u))
    assert adjoint(adjoint(u)) == u
    assert is_identity(multiply(shift_phi(u), shift_phi(adjoint(u))))
    assert u.left_code.kraft() == 1 and u.right_code.kraft() == 1


@settings(max_examples=40)
@given(st.data())
def test_multiply_associative_and_matches_points(data):
    n = data.draw(st.sampled_from([2, 3]))
    u, v, w = (data.draw(unitaries(ns=(n,), max_size=5, max_len=3)) for _ in range(3))
    uv = multiply(u, v)
    assert multiply(uv, w) == multiply(u, multiply(v, w))
    uv_u = check_unitary(uv)
    for t in list(Alphabet(n).words(6))[:80]:
        x, y = act(uv_u, t), act(u, act(v, t))
        k = min(len(x), len(y))
        assert x[:k] == y[:k]


@settings(max_examples=60)
@given(unitaries(), st.data())
def test_canonical_form_confluent(u, data):
    c = canonical_form(u)
    pairs = []
    for a, b in u.pairs():
        depth = data.draw(st.integers(0, 2))
        pairs.extend((a + m, b + m) for m in Alphabet(u.n).words(depth))
    shuffled = data.draw(st.permutations(pairs))
    assert canonical_form(PolyMap(u.n, shuffled)) == c
    assert same_operator(check_unitary(c), u)


@settings(max_examples=40, deadline=None)
@given(unitaries(max_size=5, max_len=3))
def test_lambda_level_containment(u):
    for k in range(1, 4):
        for w in Alphabet(u.n).words(k):
            img = canonical_form(apply_lambda(u, PolyMap(u.n, [(w, w)])))
            cyl = img.to_cylinders()
            # the one-pair presentation of the identity has ell = 0
            assert cyl.max_length <= k * max(u.ell, 1)
            assert cyl == lambda_on_cylinders(u, CylinderUnion(u.n, (w,)))


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_apply_lambda_respects_composition(data):
    n = data.draw(st.sampled_from([2, 3]))
    u = data.draw(unitaries(ns=(n,), max_size=5, max_len=3))
    w = data.draw(unitaries(ns=(n,), max_size=5, max_len=3))
    uw = compose(u, w)
    for i in range(1, n + 1):
        g = PolyMap(n, [((i,), ())])
        assert canonical_form(apply_lambda(uw, g)) == canonical_form(apply_lambda(u, apply_lambda(w, g)))


@settings(max_examples=20, deadline=None)
@given(st.data())
def test_compose_associative(data):
    n = data.draw(st.sampled_from([2, 3]))
    u, w, v = (data.draw(unitaries(ns=(n,), max_size=3, max_len=2)) for _ in range(3))
    assert canonical_form(compose(compose(u, w), v)) == canonical_form(compose(u, compose(w, v)))


@settings(max_examples=60)
@given(unitaries(), st.lists(st.lists(st.integers(1, 2), max_size=4).map(tuple), max_size=5))
def test_ad_round_trip(u, ws):
    ws = [tuple(min(a, u.n) for a in w) for w in ws]
    c = normalize(ws, u.n)
    img = ad_action(u, c)
    assert ad_action(check_unitary(adjoint(u)), img) == c
    assert bool(img) == bool(c)
