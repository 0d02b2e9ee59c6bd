import pytest

from grouploc import Perm, parse_cycles
from grouploc.errors import ParseError
from grouploc.words import Word, parse_word


def test_parse_basics():
    assert parse_word("a^2", "ab").letters == (1, 1)
    assert parse_word("(a*b)^3", "ab").letters == (1, 2) * 3
    assert parse_word("ab", "ab").letters == (1, 2)
    assert parse_word("a^-2", "ab").letters == (-1, -1)
    assert parse_word("[a,b]", "ab").letters == (-1, -2, 1, 2)
    assert parse_word("[a,b^2]^2", "ab").letters == (-1, -2, -2, 1, 2, 2) * 2
    assert parse_word(" ( a * b ) ^ 2 ", "ab").letters == (1, 2, 1, 2)


def test_parse_errors():
    for bad in ["c", "a^", "(a*b", "[a]", "a)"]:
        with pytest.raises(ParseError):
            parse_word(bad, "ab")
    with pytest.raises(ParseError):
        parse_word("a", ["gen"])  # names must be single letters


def test_reduction():
    w = Word((1, -1, 2, 2, -2, -2))
    assert w.reduced().letters == ()
    assert Word((1, 2, -1)).cyclically_reduced().letters == (2,)
    assert Word((1, 2)).inverse().letters == (-2, -1)


def test_evaluate_identity_and_inverse():
    a = parse_cycles("(1,2)", 5)
    b = parse_cycles("(1,2,3,4,5)", 5)
    assert Word(()).evaluate([a, b]).is_identity()
    assert Word((1, -1)).evaluate([a, b]).is_identity()


def test_evaluate_matches_stepwise_composition():
    a = parse_cycles("(1,2)", 5)
    b = parse_cycles("(1,2,3,4,5)", 5)
    w = parse_word("(a*b)^5", "ab")
    expected = Perm.identity(5)
    for _ in range(5):
        expected = expected * a * b
    assert w.evaluate([a, b]) == expected


def test_evaluate_is_monoid_hom_on_concatenation():
    a = parse_cycles("(1,2)(3,4)", 5)
    b = parse_cycles("(1,3,5)", 5)
    u = Word((1, 2, -1))
    v = Word((2, 2, 1))
    assert (u * v).evaluate([a, b]) == u.evaluate([a, b]) * v.evaluate([a, b])


def test_format_roundtrip():
    w = parse_word("a*b^-2*a", "ab")
    assert parse_word(w.format("ab"), "ab") == w
