import random

import pytest

from stablewords.errors import DomainError, InputError, ParseError
from stablewords.words import Word, cyclic_reduce, is_proper_power, parse_word, parse_words, power_decomposition


def W(text, rank=2):
    return parse_word(text, rank)


def test_parse_examples():
    assert W("abAB").letters == (1, 2, -1, -2)
    assert W("aA", 1).is_identity()
    assert W("abBA").is_identity()


def test_parse_rejects_bad_input():
    with pytest.raises(ParseError):
        W("a1")
    with pytest.raises(InputError):
        W("c")
    with pytest.raises(ParseError):
        parse_words(" , ", 2)


def test_cyclic_reduce_examples():
    core, conj = cyclic_reduce(W("abAB"))
    assert str(core) == "abAB" and conj.is_identity()
    core, conj = cyclic_reduce(W("baB"))
    assert str(core) == "a" and str(conj) == "b"
    core, conj = cyclic_reduce(Word.identity(2))
    assert core.is_identity() and conj.is_identity()


def test_power_decomposition_examples():
    d = power_decomposition(W("aa"))
    assert (str(d.root), d.exponent, d.conjugator.is_identity()) == ("a", 2, True)
    d = power_decomposition(W("abab"))
    assert (str(d.root), d.exponent) == ("ab", 2)
    d = power_decomposition(W("abAB"))
    assert (str(d.root), d.exponent) == ("abAB", 1)
    assert is_proper_power(W("baaB")) and not is_proper_power(W("aabb"))
    with pytest.raises(DomainError):
        power_decomposition(Word.identity(2))


def _random_word(rng, rank, length):
    letters = [rng.choice([x for x in range(-rank, rank + 1) if x]) for _ in range(length)]
    return Word(tuple(letters), rank)


def test_word_properties():
    rng = random.Random(7)
    for _ in range(300):
        w = _random_word(rng, 3, rng.randint(0, 12))
        assert parse_word(str(w), 3) == w
        assert Word(w.letters, 3) == w
        core, conj = cyclic_reduce(w)
        assert conj * core * conj.inverse() == w
        assert len(core) <= len(w)
        assert (len(core) == len(w)) == w.is_cyclically_reduced()
        if not w.is_identity():
            for k in (1, 2, 3):
                assert power_decomposition(w ** k).exponent % k == 0
