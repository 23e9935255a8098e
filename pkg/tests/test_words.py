import pytest
from hypothesis import given, strategies as st

from luttinger.words import (EMPTY, Word, WordSyntaxError, commutator, conjugate, gen,
                             split_top_level)

NAMES = ["a", "b", "c_{1,2}", "mu'_{S1}"]
letters = st.lists(st.tuples(st.sampled_from(NAMES), st.sampled_from([1, -1])), max_size=30)


def test_free_reduction_on_construction():
    w = Word([("a", 1), ("b", 1), ("b", -1), ("a", -1), ("c_{1,2}", 1)])
    assert w.letters == (("c_{1,2}", 1),)


def test_commutator_and_conjugation_conventions():
    a, b = gen("a"), gen("b")
    assert str(commutator(a, b)) == "a b a^-1 b^-1"
    assert conjugate(a, b) == a * b * a.inverse()


@pytest.mark.parametrize("text,expected", [
    ("a^3 b^-2", "a a a b^-1 b^-1"),
    ("1", "1"),
    ("a_{1,1} a_{1,1}^-1", "1"),
    ("mu''_{Z2}^-1", "mu''_{Z2}^-1"),
])
def test_parse(text, expected):
    assert str(Word.parse(text)) == expected


@pytest.mark.parametrize("bad", ["a^", "a^x", "^2", "a^0b"])
def test_parse_rejects(bad):
    with pytest.raises(WordSyntaxError):
        Word.parse(bad)


def test_split_top_level_respects_braces():
    assert split_top_level("a_{1,1} b , c_{2,3}", ",") == ["a_{1,1} b ", " c_{2,3}"]


def test_substitute_and_counts():
    w = Word.parse("a b a^-1 c_{1,2}")
    assert w.substitute({"a": EMPTY}) == Word.parse("b c_{1,2}")
    assert w.exponent_sum("a") == 0 and w.occurrences("a") == 2
    assert w.generators() == {"a", "b", "c_{1,2}"}


@given(letters, letters)
def test_group_axioms(x, y):
    u, v = Word(x), Word(y)
    assert (u * u.inverse()).is_identity()
    assert (u * v).inverse() == v.inverse() * u.inverse()
    assert u * EMPTY == u


@given(letters)
def test_reduced_words_have_no_cancelling_pairs(x):
    w = Word(x)
    for (n1, s1), (n2, s2) in zip(w.letters, w.letters[1:]):
        assert not (n1 == n2 and s1 == -s2)


@given(letters)
def test_parse_roundtrip(x):
    w = Word(x)
    assert Word.parse(str(w)) == w


@given(letters)
def test_rotations_are_conjugates(x):
    w = Word(x).cyclically_reduced()
    for r in w.rotations():
        assert len(r) == len(w)
        assert sorted(r.letters) == sorted(w.letters)
