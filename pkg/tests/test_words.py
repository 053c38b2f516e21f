import pytest
from hypothesis import given
from hypothesis import strategies as st

from thompson.words import (
    Letter,
    WordSyntaxError,
    format_word,
    free_reduce,
    invert_word,
    parse_word,
)

letters = st.builds(Letter, st.integers(0, 40), st.sampled_from([1, -1]))
words = st.lists(letters, max_size=30).map(tuple)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("x0 x1^-1", (Letter(0, 1), Letter(1, -1))),
        ("x2^3", (Letter(2, 1),) * 3),
        ("", ()),
        ("   ", ()),
        ("x5^-2", (Letter(5, -1),) * 2),
        ("  x0\tx1  ", (Letter(0, 1), Letter(1, 1))),
    ],
)
def test_parse(text, expected):
    assert parse_word(text) == expected


@pytest.mark.parametrize(
    "text, position",
    [
        ("x-1", 1),
        ("x0 x1^0", 6),
        ("y0", 0),
        ("x0x1", 2),
        ("x", 0),
        ("x1^", 2),
        ("x0 ^2", 3),
        ("x2147483648", 1),
    ],
)
def test_parse_errors_report_position(text, position):
    with pytest.raises(WordSyntaxError) as info:
        parse_word(text)
    assert info.value.position == position


def test_index_bound_accepted():
    assert parse_word("x2147483647") == (Letter(2**31 - 1, 1),)


@pytest.mark.parametrize(
    "word, text",
    [
        ((Letter(0, 1), Letter(1, -1)), "x0 x1^-1"),
        ((), ""),
        ((Letter(2, 1),) * 3, "x2^3"),
        ((Letter(1, -1),) * 2 + (Letter(1, 1),), "x1^-2 x1"),
    ],
)
def test_format(word, text):
    assert format_word(word) == text


@pytest.mark.parametrize(
    "word, reduced",
    [
        ("x0 x0^-1", ""),
        ("x1 x0 x0^-1 x1^-1", ""),
        ("x1 x0", "x1 x0"),
        ("x2 x2^-1 x2", "x2"),
    ],
)
def test_free_reduce(word, reduced):
    assert free_reduce(parse_word(word)) == parse_word(reduced)


@pytest.mark.parametrize(
    "word, inverse",
    [("x0 x1^-1", "x1 x0^-1"), ("", ""), ("x2 x2", "x2^-1 x2^-1")],
)
def test_invert_word(word, inverse):
    assert invert_word(parse_word(word)) == parse_word(inverse)


@given(words)
def test_round_trip(w):
    assert parse_word(format_word(w)) == w


@given(words)
def test_free_reduce_idempotent_and_shorter(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert len(r) <= len(w)
    assert all(not (a.index == b.index and a.sign == -b.sign) for a, b in zip(r, r[1:]))


@given(words)
def test_word_times_inverse_reduces_to_empty(w):
    assert free_reduce(w + invert_word(w)) == ()
