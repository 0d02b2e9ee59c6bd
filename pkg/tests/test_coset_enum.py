import random

import pytest

from grouploc.coset_enum import enumerate_cosets
from grouploc.errors import CapExceeded
from grouploc.presentations import Presentation, todd_coxeter


def tc(gen_names, relators, **kw):
    return todd_coxeter(Presentation.parse(gen_names, relators), **kw)


def test_small_orders():
    assert tc("a", ["a"]) == 1
    assert tc("a", ["a^6"]) == 6
    assert tc("a b", ["a^2", "b^3", "(a*b)^2"]) == 6      # S3
    assert tc("a b", ["a^4", "a^2*b^-2", "b^-1*a*b*a"]) == 8  # quaternion
    assert tc("a b", ["a^2", "b^3", "[a,b]"]) == 6        # C6


def test_icosahedral():
    assert tc("a b", ["a^2", "b^3", "(a*b)^5"]) == 60


def test_hurwitz_quotient():
    assert tc("a b", ["a^2", "b^3", "(a*b)^7", "(a*b*a*b^-1)^4"]) == 168


def test_relator_order_invariance():
    rels = ["a^2", "b^3", "(a*b)^7", "(a*b*a*b^-1)^4"]
    rng = random.Random(11)
    for _ in range(6):
        shuffled = rels[:]
        rng.shuffle(shuffled)
        assert tc("a b", shuffled) == 168


def test_cap_exceeded():
    # the (2,3,7) triangle group is infinite: the cap must trip
    with pytest.raises(CapExceeded):
        tc("a b", ["a^2", "b^3", "(a*b)^7"], max_rows=5000)


def test_coset_action_is_regular_representation():
    count, images = enumerate_cosets(2, [(1, 1), (2, 2, 2), (1, 2) * 2])
    assert count == 6
    # the images act regularly on the 6 cosets and generate a group of order 6
    from grouploc import Perm, PermGroup

    G = PermGroup([Perm(img) for img in images])
    assert G.order == 6


def test_subgroup_cosets():
    # index of <a> in S3 is 3
    count, _ = enumerate_cosets(2, [(1, 1), (2, 2, 2), (1, 2) * 2], subgroup=[(1,)])
    assert count == 3
