import pytest
from hypothesis import given, strategies as st

from subshift.words import (Alphabet, AlphabetMismatch, Word, complexity, factor_positions,
                            factor_set, gaps, max_power, occurrences)
from tests.oracles import factors

AB = Alphabet.of("ab")
binary_text = st.text(alphabet="ab", min_size=1, max_size=60)


def test_alphabet_rejects_duplicates():
    with pytest.raises(ValueError, match="duplicate"):
        Alphabet.of(["a", "b", "a"])


def test_composite_letters_split_on_whitespace():
    B = Alphabet.of(["(1,1)", "(1,2)", "(2,1)"])
    w = B.word("(1,1) (1,2) (2,1)")
    assert w.tokens == ("(1,1)", "(1,2)", "(2,1)")
    assert str(w) == "(1,1)(1,2)(2,1)"
    assert w.spaced() == "(1,1) (1,2) (2,1)"


def test_mixed_alphabets_raise():
    with pytest.raises(AlphabetMismatch):
        AB.word("ab") + Alphabet.of("abc").word("ab")
    with pytest.raises(AlphabetMismatch):
        AB.word("abc")


def test_occurrences_overlap():
    assert occurrences(AB.word("aba"), AB.word("ababa")) == [0, 2]
    assert gaps(AB.word("a"), AB.word("abaab")) == [2, 1]


def test_max_power():
    assert max_power(AB.word("ab"), AB.word("abababa")) == 3
    assert max_power(AB.word("b"), AB.word("abba")) == 2


def test_slicing_and_concatenation():
    w = AB.word("abba")
    assert w[1:3] == AB.word("bb")
    assert w + w == AB.word("abbaabba")
    assert w * 2 == w + w
    assert AB.word("ab").is_prefix_of(w)


@given(binary_text, st.integers(min_value=1, max_value=8))
def test_factor_set_matches_oracle(text, n):
    w = AB.word(text)
    if n > len(text):
        with pytest.raises(ValueError):
            factor_set(w, n)
        return
    assert {str(f) for f in factor_set(w, n)} == factors(text, n)
    assert complexity(w, n) == len(factors(text, n))


@given(binary_text, st.integers(min_value=1, max_value=5))
def test_factor_positions_are_occurrences(text, n):
    w = AB.word(text)
    for key, occ in factor_positions(w, n).items():
        u = Word._from_key(AB, key)
        assert occurrences(u, w) == occ


@given(binary_text, binary_text)
def test_occurrences_match_brute_force(u, x):
    expected = [i for i in range(len(x) - len(u) + 1) if x[i:i + len(u)] == u]
    assert occurrences(AB.word(u), AB.word(x)) == expected
