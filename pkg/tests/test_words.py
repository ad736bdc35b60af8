from hypothesis import given
from hypothesis import strategies as st

from gluckcalc.words import (
    Word,
    conjugate,
    cyclic_reduce,
    exponent_sum,
    format_word,
    parse_word,
    reduce,
    substitute,
)
from oracles import naive_reduce
from strategies import words

P = Word.from_pairs


def test_reduce_examples():
    assert reduce(P([(1, 1), (1, -1)])) == Word()
    assert reduce(P([(1, 1), (2, 1), (2, -1), (1, 1)])) == P([(1, 1), (1, 1)])
    assert reduce(P([(1, 1), (2, 1)])) == P([(1, 1), (2, 1)])


def test_cyclic_reduce_examples():
    assert cyclic_reduce(P([(2, 1), (1, 1), (2, -1)])) == (P([(1, 1)]), P([(2, 1)]))
    assert cyclic_reduce(Word()) == (Word(), Word())
    assert cyclic_reduce(P([(1, 1), (2, 1), (1, -1)])) == (P([(2, 1)]), P([(1, 1)]))


def test_substitute_examples():
    assert substitute(P([(2, 1)]), 2, P([(1, 1), (3, 1)])) == P([(1, 1), (3, 1)])
    assert substitute(P([(2, -1)]), 2, P([(1, 1)])) == P([(1, -1)])
    assert substitute(P([(1, 1), (2, 1), (1, -1)]), 1, Word()) == P([(2, 1)])


def test_exponent_sum_examples():
    r = Word([1, 2, 1, -2, -1, -2])
    assert exponent_sum(r, 1) == 1
    assert exponent_sum(r, 2) == -1
    assert exponent_sum(Word(), 5) == 0


def test_word_rejects_zero_letter():
    import pytest

    with pytest.raises(ValueError):
        Word([1, 0])


def test_pairs_roundtrip_and_formatting():
    w = Word([1, -2, 3])
    assert P(w.pairs()) == w
    assert format_word(w) == "x1 x2^-1 x3"
    assert format_word(w, symbolic=True) == "xYz"
    assert parse_word("xYz") == w
    assert str(Word()) == "1"


def test_product_reduces_but_plus_does_not():
    a, b = Word([1, 2]), Word([-2, 3])
    assert a * b == Word([1, 3])
    assert a + b == Word([1, 2, -2, 3])
    assert ~a == Word([-2, -1])


@given(words())
def test_reduce_matches_oracle(w):
    assert list(reduce(w)) == naive_reduce(w)


@given(words())
def test_reduce_idempotent(w):
    assert reduce(reduce(w)) == reduce(w)


@given(words())
def test_word_times_inverse_is_identity(w):
    assert reduce(tuple(w) + tuple(w.inverse())) == Word()


@given(words(), words(), st.integers(1, 3), words(max_len=4))
def test_substitute_is_homomorphism(u, v, g, b):
    lhs = substitute(tuple(u) + tuple(v), g, b)
    rhs = reduce(tuple(substitute(u, g, b)) + tuple(substitute(v, g, b)))
    assert lhs == rhs


@given(words(), words(max_len=4), st.integers(1, 3))
def test_exponent_sum_invariant_under_reduce_and_conjugation(w, u, g):
    assert exponent_sum(reduce(w), g) == exponent_sum(w, g)
    assert exponent_sum(conjugate(w, u), g) == exponent_sum(w, g)


@given(words())
def test_cyclic_reduce_reconstructs(w):
    core, z = cyclic_reduce(w)
    assert conjugate(core, z) == reduce(w)
    if len(core) > 1:
        assert core[0] != -core[-1]
