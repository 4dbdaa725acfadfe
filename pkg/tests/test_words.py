import pytest

from selfinduced.errors import InputError
from selfinduced.words import EPSILON, Letter, Word, free_reduce, invert_word, reduce_tuple

from oracles import naive_reduce, to_caps

a, b, c, d = (Letter(x) for x in "abcd")
A, B, C, D = (Letter(x, True) for x in "abcd")


def test_full_cancellation():
    assert free_reduce([a, A]) == EPSILON
    assert free_reduce([]) == EPSILON
    assert free_reduce([B, a, A, b]) == EPSILON


def test_reduces_twist_preimage():
    # a·(b d⁻¹)·d·(b d⁻¹)·d
    w = free_reduce([a, b, D, d, b, D, d])
    assert w == Word.positive("abb")
    assert naive_reduce("abDdbDd") == "abb"


def test_inverse():
    assert invert_word(EPSILON) == EPSILON
    w = Word.parse("bdacda")
    assert str(invert_word(w)) == "a^-1d^-1c^-1a^-1d^-1b^-1"
    assert invert_word(invert_word(w)) == w


def test_parse_and_str_roundtrip():
    w = Word.parse("ab^-1c⁻¹a")
    assert w.letters == (a, B, C, a)
    assert Word.parse(str(w)) == w
    assert Word.parse("ε") == EPSILON
    assert str(EPSILON) == "ε" or str(EPSILON) == ""


def test_parse_reduces():
    assert Word.parse("abb^-1a^-1c") == Word.positive("c")


def test_parse_rejects_unknown_symbol():
    with pytest.raises(InputError):
        Word.parse("abz", "ab")


def test_product_and_power():
    w = Word.parse("ab")
    assert w * w.inverse() == EPSILON
    assert w ** 3 == Word.positive("ababab")
    assert w ** -1 == w.inverse()
    assert w ** 0 == EPSILON


def test_signs():
    assert Word.positive("abc").is_positive()
    assert Word.parse("a^-1b^-1").is_negative()
    assert not Word.parse("ab^-1").is_positive()
    assert Word.positive("abc").symbols() == "abc"


def test_startswith_and_indexing():
    w = Word.positive("abcd")
    assert w.startswith(Word.positive("ab"))
    assert not w.startswith(Word.positive("b"))
    assert w[0] == a
    assert len(w) == 4


def test_hash_and_equality():
    assert hash(Word.positive("ab")) == hash(Word.parse("ab"))
    assert {Word.positive("ab"), Word.parse("acc^-1b")} == {Word.positive("ab")}


def test_reduce_tuple_matches_oracle():
    letters = [a, b, B, A, c, C, c, d]
    assert "".join(to_caps(str(x)) for x in reduce_tuple(letters)) == naive_reduce("abBAcCcd")
