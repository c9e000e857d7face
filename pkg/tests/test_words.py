"""Free-group word layer: reduction, parsing, even forms."""

import pytest
from hypothesis import given, strategies as st

from eggbeater.errors import WordSyntaxError
from eggbeater.words import (EvenWord, PowerCase, Syllable, Word,
                             parse_word, power_word, reduce_word,
                             to_even_form)

syllables = st.builds(
    Syllable,
    gen=st.sampled_from("ab"),
    exp=st.integers(min_value=-5, max_value=5).filter(lambda e: e != 0))
syllable_lists = st.lists(syllables, max_size=12)


def is_reduced(word: Word) -> bool:
    return (all(s.exp != 0 for s in word.syllables)
            and all(a.gen != b.gen for a, b in zip(word.syllables,
                                                   word.syllables[1:])))


@given(syllable_lists)
def test_reduce_produces_reduced_words(sylls):
    assert is_reduced(reduce_word(sylls))


@given(syllable_lists)
def test_reduce_preserves_exponent_sums(sylls):
    word = reduce_word(sylls)
    for gen in "ab":
        raw = sum(s.exp for s in sylls if s.gen == gen)
        assert word.exponent_sum(gen) == raw


@given(syllable_lists)
def test_reduce_is_idempotent(sylls):
    word = reduce_word(sylls)
    assert reduce_word(word.syllables) == word


@given(syllable_lists)
def test_word_times_inverse_is_identity(sylls):
    word = reduce_word(sylls)
    assert not (word * word.inverse()).syllables
    assert not (word.inverse() * word).syllables


@given(syllable_lists, syllable_lists)
def test_multiplication_reduces(s1, s2):
    assert is_reduced(reduce_word(s1) * reduce_word(s2))


def test_parse_round_trip():
    for text in ("ab", "a^2b^-1ab", "a^-3 b^2", "b"):
        word = parse_word(text)
        assert parse_word(str(word)) == word


def test_parse_compact_and_spaced_agree():
    assert parse_word("a^2b^-1ab") == parse_word("a^2 b^-1 a b")


def test_parse_reports_position():
    with pytest.raises(WordSyntaxError) as err:
        parse_word("a^2c")
    assert err.value.position == 3
    with pytest.raises(WordSyntaxError):
        parse_word("")
    with pytest.raises(WordSyntaxError):
        parse_word("a^0")


def test_power_word():
    ab = parse_word("ab")
    assert power_word(ab, 3) == parse_word("ababab")
    with pytest.raises(ValueError):
        power_word(ab, 0)


def test_even_form_of_alternating_word():
    conj, core = to_even_form(parse_word("a^2b^-1ab"))
    assert isinstance(core, EvenWord)
    assert core.exponents == (2, -1, 1, 1)
    assert not conj.syllables


def test_even_form_conjugates():
    word = parse_word("b^2ab^-1")  # = b (ba) b^{-1}, conjugate of ba
    conj, core = to_even_form(word)
    assert isinstance(core, EvenWord)
    # conjugator^{-1} w conjugator reproduces the core
    assert conj.inverse() * word * conj == core.as_word()


def test_even_form_power_case():
    conj, core = to_even_form(parse_word("ba^3b^-1"))
    assert core == PowerCase("a", 3)
    assert conj == parse_word("b")


def test_step_exponents_pair_from_the_tail():
    core = to_even_form(parse_word("a^1b^2a^3b^4"))[1]
    # last syllable acts first: step 0 is (b^4, a^3), step 1 is (b^2, a^1)
    assert core.step_exponents() == [(4, 3), (2, 1)]
