import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from covers.words import MissingImageError, Word, cyclic_reduce, reduce, substitute

letters = st.integers(min_value=-4, max_value=4).filter(lambda x: x != 0)
raw_words = st.lists(letters, max_size=50)


def stack_oracle(seq):
    out = []
    for x in seq:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def test_reduce_cancellation():
    assert reduce([1, -1]) == Word()
    assert reduce([1, 2, -2, 1]) == Word([1, 1])


def test_word_rejects_zero():
    with pytest.raises(ValueError):
        Word([0])


@settings(max_examples=1000, deadline=None, derandomize=True)
@given(raw_words)
def test_reduce_matches_stack_oracle(seq):
    assert reduce(seq).letters == stack_oracle(seq)


@settings(max_examples=1000, deadline=None, derandomize=True)
@given(raw_words)
def test_reduce_idempotent(seq):
    w = reduce(seq)
    assert reduce(w.letters) == w


@settings(max_examples=1000, deadline=None, derandomize=True)
@given(raw_words)
def test_product_with_inverse_is_identity(seq):
    w = reduce(seq)
    assert w * w.inverse() == Word()
    assert w.inverse() * w == Word()


def test_cyclic_reduce_examples():
    core, conj = cyclic_reduce(Word([1, 2, -1]))
    assert core == Word([2]) and conj == Word([1])
    core, conj = cyclic_reduce(Word())
    assert core == Word() and conj == Word()
    core, conj = cyclic_reduce(Word([1, 1, 2, -1, -1]))
    assert core == Word([2]) and conj == Word([1, 1])


@settings(max_examples=500, deadline=None, derandomize=True)
@given(raw_words)
def test_cyclic_reduce_reassembles(seq):
    w = reduce(seq)
    core, conj = cyclic_reduce(w)
    assert len(core) <= len(w)
    assert conj * core * conj.inverse() == w
    # the core really is cyclically reduced
    if core:
        assert core.letters[0] != -core.letters[-1]


def test_substitute_examples():
    assert substitute(Word([1, 2]), {1: Word([3]), 2: Word([-3])}) == Word()
    assert substitute(Word([1]), {1: Word([1])}) == Word([1])


def test_substitute_missing_image():
    with pytest.raises(MissingImageError):
        substitute(Word([1, 2]), {1: Word([1])})


def test_substitute_exponent_sum_collapse():
    # the two-generator torus relator dies under both generators -> t
    relator = Word([1, 2, 1, -2, -1, -2])
    assert substitute(relator, {1: Word([9]), 2: Word([9])}) == Word()


@settings(max_examples=500, deadline=None, derandomize=True)
@given(raw_words, raw_words)
def test_substitute_respects_concatenation(a, b):
    images = {g: Word([g, g + 1]) for g in range(1, 5)}
    images[5] = Word([1])
    u, v = reduce(a), reduce(b)
    assert substitute(u * v, images) == substitute(u, images) * substitute(v, images)


def test_word_power_and_exponent_sum():
    w = Word([1, -2])
    assert w**3 == Word([1, -2, 1, -2, 1, -2])
    assert w**-1 == Word([2, -1])
    assert w**0 == Word()
    assert (w**3).exponent_sum(1) == 3
    assert (w**3).exponent_sum(2) == -3
