import itertools
import random

import numpy as np
import pytest

from grouploc import Perm, PermGroup, build_group, direct_product, from_cycles, parse_cycles
from grouploc.errors import CapExceeded

from conftest import brute_closure


def test_a5_order_by_closure_oracle():
    # the spec's generating pair for A5: a 5-cycle and a 3-cycle
    G = from_cycles(["(1,2,3,4,5)", "(3,4,5)"], 5)
    assert G.order == 60
    assert G.order == len(brute_closure(list(G.generators)))


def test_trivial_group():
    G = build_group([Perm.identity(4)])
    assert G.order == 1
    assert G.contains(Perm.identity(4))


def test_membership_matches_closure(A5):
    closure = brute_closure(list(A5.generators))
    assert A5.contains(parse_cycles("(1,2)(3,4)", 5))  # even
    assert not A5.contains(parse_cycles("(1,2)", 5))   # odd (sign oracle)
    for t in itertools.permutations(range(5)):
        assert A5.contains(Perm(t)) == (t in closure)


def test_membership_random_sampling_against_closure():
    # groups of order <= 10^4: sift-accepted equals closure membership
    rng = random.Random(2024)
    for cycles, degree in [
        (["(1,2)(3,4)", "(1,3,5)"], 5),
        (["(1,2)(3,4)(5,7)(6,8)", "(2,3,6)(5,7,8)"], 8),
    ]:
        G = from_cycles(cycles, degree)
        closure = brute_closure(list(G.generators))
        for _ in range(10_000 // 4):
            images = list(range(degree))
            rng.shuffle(images)
            assert G.contains(Perm(images)) == (tuple(images) in closure)


def test_element_index_canonical(A5):
    idx = A5.elements()
    assert len(idx) == 60
    assert idx.perm(0).is_identity()
    rows = [tuple(int(x) for x in idx.table[i]) for i in range(60)]
    assert rows == sorted(rows)
    # ranks invert the table
    for i in (0, 1, 30, 59):
        assert idx.index_of(idx.perm(i)) == i


def test_element_cap():
    G = from_cycles(["(1,2,3)", "(3,4,5,6,7,8,9,10,11,12)"], 12)
    assert G.order > 200_000
    with pytest.raises(CapExceeded):
        G.elements(200_000)


def test_word_witnesses(A5):
    idx = A5.elements()
    for i in (0, 1, 17, 59):
        w = idx.word(i)
        assert A5.evaluate_word(w) == idx.perm(i)
    p = parse_cycles("(1,2)(3,4)", 5)
    w = A5.membership_word(p)
    assert A5.evaluate_word(w) == p
    assert A5.membership_word(parse_cycles("(1,2)", 5)) is None


def test_chain_invariants(A5, S5):
    for G in (A5, S5):
        # order equals the product of fundamental orbit lengths
        prod = 1
        for lv in G.chain.levels:
            prod *= len(lv.orbit)
        assert prod == G.order
        G.chain.verify(G.gen_arrays())


def test_associativity_and_lagrange_sampled(A5):
    rng = random.Random(5)
    idx = A5.elements()
    orders = idx.orders()
    for _ in range(200):
        i, j, k = (rng.randrange(60) for _ in range(3))
        a, b, c = idx.perm(i), idx.perm(j), idx.perm(k)
        assert (a * b) * c == a * (b * c)
    assert all(60 % int(o) == 0 for o in orders)


def test_direct_products(A5, trivial):
    prod = direct_product(A5, PermGroup([Perm.identity(1)]))
    assert prod.order == 60
    assert direct_product(A5, A5).order == 3600
    c2 = from_cycles(["(1,2)"], 2)
    c3 = from_cycles(["(1,2,3)"], 3)
    p = direct_product(c2, c3)
    assert p.order == 6 and p.degree == 5


def test_2m12_scale_order():
    # catalog-scale stress: the biggest core entry builds quickly
    import time

    from grouploc.catalog import load_catalog

    cat = load_catalog()
    try:
        entry = cat.entry("2.M12")
    except KeyError:
        pytest.skip("2.M12 not yet in the catalog")
    t0 = time.time()
    G = entry.group()
    assert G.order == 190080
    assert time.time() - t0 < 10.0
