import logging

import pytest
from hypothesis import given, strategies as st

from subshift.corpus import CORPUS, EX, FIB, PER
from subshift.morphism import fixed_point_prefix, seeded_power
from subshift.returnwords import (DecompositionError, PrefixTooShort, derived_recoding,
                                  min_return_length_profile, return_words_closure,
                                  return_words_in_prefix, sadic_decomposition,
                                  sadic_required_length, split_at_anchor)
from subshift.words import Alphabet
from tests.oracles import return_words

AB = Alphabet.of("ab")


def _words(coding):
    return [str(w) for w in coding.return_words]


def test_ex_return_words_in_prefix():
    x = fixed_point_prefix(EX, 10)
    c = return_words_in_prefix(x, AB.word("a"))
    assert _words(c) == ["ab", "a"]
    assert not c.certified


def test_fib_derived_word():
    x = fixed_point_prefix(FIB, 200)
    c = return_words_in_prefix(x, AB.word("a"))
    assert _words(c) == ["ab", "a"]
    assert c.derived_word.spaced().startswith("1 2 1 1 2")
    # decoding the derived word gives back the scanned span
    assert c.decode(c.derived_word).is_prefix_of(x)


def test_periodic_single_return_word():
    assert _words(return_words_in_prefix(AB.word("ababab"), AB.word("ab"))) == ["ab"]


def test_prefix_errors():
    with pytest.raises(PrefixTooShort):
        return_words_in_prefix(AB.word("abbb"), AB.word("a"))
    with pytest.raises(ValueError):
        return_words_in_prefix(AB.word("babab"), AB.word("a"))


def test_ex_closure():
    d = return_words_closure(EX)
    assert _words(d.coding) == ["ab", "a"]
    assert d.tau.as_dict() == {"1": "1 1 2 1", "2": "1 2"}
    assert d.coding.certified and d.check() and d.power == 1


def test_fib_and_per_closure():
    d = return_words_closure(FIB)
    assert d.tau.as_dict() == {"1": "1 2", "2": "1"}
    p = return_words_closure(PER)
    assert _words(p.coding) == ["ab"] and p.tau.as_dict() == {"1": "1 1"}


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_closure_is_complete_against_scan(name):
    _, s = seeded_power(CORPUS[name])
    d = return_words_closure(s)
    x = fixed_point_prefix(s, 20_000)
    # one character per letter, so composite letters scan like plain strings
    assert return_words(x.key, d.coding.u.key) == [w.key for w in d.coding.return_words]
    assert d.check()
    assert all(img.letter_at(0) == "1" for img in d.tau.images)


def test_thue_morse_needs_tau_power():
    d = return_words_closure(CORPUS["TM"])
    assert d.power == 2
    assert _words(d.coding) == ["abb", "ab", "a"]


def test_split_at_anchor():
    a = AB.word("a")
    assert [str(w) for w in split_at_anchor(AB.word("ababaab"), a)] == ["ab", "ab", "a", "ab"]
    with pytest.raises(DecompositionError):
        split_at_anchor(AB.word("ba"), a)


def test_recoding_fib():
    x = fixed_point_prefix(FIB, 10_000)
    inner = return_words_in_prefix(x, AB.word("ab"))
    outer = return_words_in_prefix(x, AB.word("a"))
    rec = derived_recoding(inner, outer)
    assert rec.check()
    aba = inner.code_of(AB.word("aba"))
    assert rec.lam.image(aba).spaced() == "1 2"
    same = derived_recoding(outer, outer)
    assert same.lam.as_dict() == {"1": "1", "2": "2"}


def test_recoding_ex():
    x = fixed_point_prefix(EX, 10_000)
    rec = derived_recoding(return_words_in_prefix(x, AB.word("ab")), return_words_in_prefix(x, AB.word("a")))
    assert rec.check()


def test_sadic_decomposition_required_length():
    x = fixed_point_prefix(FIB, 100)
    with pytest.raises(PrefixTooShort) as err:
        sadic_decomposition(x, 2, 2)
    assert err.value.required == sadic_required_length(2, 2) == 9 * 144


def test_sadic_decomposition_depth_zero_and_periodic():
    x = fixed_point_prefix(FIB, 10_000)
    dec = sadic_decomposition(x, 2, 0)
    assert len(dec.lambdas) == 1 and dec.reconstruction_ok
    y = AB.word("ab" * 200)
    per = sadic_decomposition(y, 1, 2)
    assert all(c.size == 1 for c in per.codings)
    assert all(set(lam.images[0].tokens) == {"1"} for lam in per.lambdas[1:])


def test_min_return_profile_is_monotone_on_fib(caplog):
    x = fixed_point_prefix(FIB, 10_000)
    with caplog.at_level(logging.WARNING):
        prof = min_return_length_profile(x, 64)
    assert [m for _, m in prof] == sorted(m for _, m in prof)
    assert not caplog.records


@given(st.lists(st.sampled_from(["ab", "abb", "a"]), min_size=1, max_size=20).map(lambda ws: ["ab"] + ws))
def test_coding_is_a_code(ws):
    # any concatenation of return words to "a" re-splits uniquely
    text = "".join(ws)
    parts = split_at_anchor(AB.word(text), AB.word("a"))
    assert [str(p) for p in parts] == ws
