import pytest
from hypothesis import given

from polycuntz.errors import EmptyWordError
from polycuntz.words import (
    Alphabet,
    Rel,
    as_word,
    common_prefix_length,
    compare,
    concatenate,
    extensions,
    is_prefix,
    orthogonal,
    split_head,
    word_str,
)

from corpus import words


def test_compare_prefix_with_residual():
    r = compare(as_word("12"), as_word("121"))
    assert r.kind is Rel.PREFIX_OF_SECOND and r.residual == (1,)


def test_compare_orthogonal():
    assert compare(as_word("11"), as_word("12")).kind is Rel.ORTHOGONAL


def test_empty_word_prefixes_everything():
    r = compare((), as_word("21"))
    assert r.kind is Rel.PREFIX_OF_SECOND and r.residual == (2, 1)


def test_split_head():
    assert split_head(as_word("121")) == (1, (2, 1))
    assert split_head((2,)) == (2, ())
    with pytest.raises(EmptyWordError):
        split_head(())


def test_rendering():
    assert word_str(()) == "e"
    assert word_str((1, 2)) == "12"
    assert word_str((1, 12, 3)) == "[1,12,3]"
    assert as_word("e") == ()


def test_alphabet():
    assert list(Alphabet(2).words(2)) == [(1, 1), (1, 2), (2, 1), (2, 2)]
    with pytest.raises(ValueError):
        Alphabet(1)
    assert sorted(extensions((1,), 2, 3)) == [(1, 1, 1), (1, 1, 2), (1, 2, 1), (1, 2, 2)]


@given(words(3), words(3))
def test_prefix_round_trip(a, b):
    r = compare(a, b)
    if r.kind is Rel.PREFIX_OF_SECOND:
        assert concatenate(a, r.residual) == b
    if r.kind is Rel.EXTENDS_SECOND:
        assert concatenate(b, r.residual) == a


@given(words(3), words(3))
def test_compare_antisymmetric(a, b):
    ab, ba = compare(a, b).kind, compare(b, a).kind
    assert (ab is Rel.PREFIX_OF_SECOND) == (ba is Rel.EXTENDS_SECOND)
    assert (ab is Rel.ORTHOGONAL) == (ba is Rel.ORTHOGONAL) == orthogonal(a, b)
    assert (ab is Rel.EQUAL) == (a == b)


@given(words(3))
def test_split_then_concatenate(a):
    if a:
        head, tail = split_head(a)
        assert (head,) + tail == a


@given(words(2), words(2))
def test_common_prefix_length(a, b):
    k = common_prefix_length(a, b)
    assert a[:k] == b[:k]
    assert k == min(len(a), len(b)) or a[k] != b[k]
    assert is_prefix(a[:k], b)
