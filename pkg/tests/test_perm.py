import itertools
import random

import pytest

from grouploc import Perm, parse_cycles
from grouploc.errors import DegreeMismatch, ParseError

from conftest import compose_tuples


def test_identity_compose():
    p = parse_cycles("(1,2,3)", 5)
    assert Perm.identity(5) * p == p
    assert p * Perm.identity(5) == p


def test_inverse_compose():
    p = parse_cycles("(1,2,3)(4,5)", 5)
    assert (p * p.inverse()).is_identity()
    assert (p.inverse() * p).is_identity()


def test_exhaustive_s3_table():
    # every composition in S3 against the independent tuple oracle
    elements = [Perm(t) for t in itertools.permutations(range(3))]
    for a in elements:
        for b in elements:
            assert (a * b).images == compose_tuples(a.images, b.images)
    # the worked example: right factor acts first
    assert (parse_cycles("(1,2,3)", 3) * parse_cycles("(1,2)", 3)).images == \
        compose_tuples((1, 2, 0), (1, 0, 2))


def test_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        parse_cycles("(1,2)", 2) * parse_cycles("(1,2)", 3)


def test_power_and_order():
    c = parse_cycles("(1,2,3,4,5)", 5)
    assert c ** 5 == Perm.identity(5)
    assert c ** -1 == c.inverse()
    assert c.order() == 5
    assert parse_cycles("(1,2)(3,4,5)", 5).order() == 6
    assert Perm.identity(3).order() == 1


def test_sign():
    assert parse_cycles("(1,2)", 4).sign() == -1
    assert parse_cycles("(1,2,3)", 4).sign() == 1
    assert parse_cycles("(1,2)(3,4)", 4).sign() == 1


def test_cycle_string_roundtrip():
    rng = random.Random(7)
    for _ in range(100):
        images = list(range(9))
        rng.shuffle(images)
        p = Perm(images)
        assert parse_cycles(p.cycle_string(), 9) == p
    assert Perm.identity(6).cycle_string() == "()"
    assert parse_cycles("()", 6) == Perm.identity(6)


def test_parser_whitespace_and_errors():
    assert parse_cycles(" ( 1 , 2 , 3 ) ( 4 , 5 ) ", 5) == parse_cycles("(1,2,3)(4,5)", 5)
    with pytest.raises(ParseError):
        parse_cycles("(1,2)(2,3)", 3)  # not disjoint
    with pytest.raises(ParseError):
        parse_cycles("(0,1)", 3)  # 1-based points
    with pytest.raises(ParseError):
        parse_cycles("(1,2", 3)
    with pytest.raises(ParseError):
        parse_cycles("", 3)


def test_extended_padding():
    p = parse_cycles("(1,2)", 2)
    q = p.extended(5)
    assert q.degree == 5
    assert q(4) == 4 and q(0) == 1
    with pytest.raises(DegreeMismatch):
        q.extended(3)
