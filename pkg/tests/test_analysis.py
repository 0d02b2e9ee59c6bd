import numpy as np
import pytest

from grouploc import Perm, PermGroup, from_cycles, parse_cycles
from grouploc.analysis import (Subgroup, center, conjugacy_classes, derived_subgroup,
                               is_maximal, is_perfect, is_simple,
                               is_superperfect_certified, normal_closure,
                               subgroups_conjugate)
from grouploc.errors import CapExceeded, MissingCatalogDatum


def test_conjugacy_classes_a5(A5):
    cc = conjugacy_classes(A5)
    assert sorted(cc.sizes) == [1, 12, 12, 15, 20]
    assert sum(cc.sizes) == 60
    assert cc.sizes[0] == 1 and cc.orders[0] == 1
    # witnesses conjugate the representative to each member
    idx = A5.elements()
    for c in range(len(cc)):
        rep = idx.perm(cc.reps[c])
        for x in cc.members(c)[:5]:
            w = idx.perm(int(cc.witness[x]))
            assert w.inverse() * rep * w == idx.perm(int(x))


def test_conjugacy_classes_s3_and_trivial(trivial):
    S3 = from_cycles(["(1,2)", "(1,2,3)"], 3)
    cc = conjugacy_classes(S3)
    assert sorted(cc.sizes) == [1, 2, 3]
    cct = conjugacy_classes(trivial)
    assert len(cct) == 1


def test_derived_subgroups(A5, S5):
    assert derived_subgroup(A5).order == 60
    assert derived_subgroup(S5).order == 60
    c6 = from_cycles(["(1,2,3,4,5,6)"], 6)
    assert derived_subgroup(c6).order == 1
    assert is_perfect(A5) and not is_perfect(S5)


def test_superperfect_needs_catalog_datum(A5):
    assert is_superperfect_certified(A5, (2,)) is False
    with pytest.raises(MissingCatalogDatum):
        is_superperfect_certified(A5, None)


def test_center(A5):
    assert center(A5).order == 1
    abelian = from_cycles(["(1,2,3,4,5,6)"], 6)
    assert center(abelian).order == 6


def test_center_of_cover():
    from grouploc.catalog import load_catalog

    sl25 = load_catalog().group("SL2(5)")
    z = center(sl25)
    assert z.order == 2


def test_normal_closure(A5, S5):
    assert normal_closure(S5, [parse_cycles("(1,2,3)", 5)]).order == 60
    assert normal_closure(S5, [Perm.identity(5)]).order == 1
    idx = A5.elements()
    for i in (1, 10, 59):
        assert normal_closure(A5, [idx.perm(i)]).order == 60
    # closure is normal: conjugates of its generators sift back in
    N = normal_closure(S5, [parse_cycles("(1,2,3)", 5)])
    for g in S5.generators:
        for h in N.gens:
            assert N.group.contains(g.inverse() * h * g)


def test_simplicity(A5, S5, A6):
    assert is_simple(A5)
    assert not is_simple(S5)
    assert is_simple(A6)
    assert is_simple(from_cycles(["(1,2,3,4,5,6,7)"], 7))  # prime cyclic
    assert not is_simple(from_cycles(["(1,2,3,4,5,6)"], 6))
    assert not is_simple(PermGroup([Perm.identity(2)]))


@pytest.mark.slow
def test_simplicity_alternating_vs_symmetric_small():
    for n in (5, 6, 7, 8):
        An = from_cycles(["(1,2,3)", f"({','.join(str(i) for i in range(1, n + 1))})"
                          if n % 2 else f"({','.join(str(i) for i in range(2, n + 1))})"], n)
        Sn = from_cycles(["(1,2)", f"({','.join(str(i) for i in range(1, n + 1))})"], n)
        assert is_simple(An), n
        assert not is_simple(Sn), n


def test_maximality(A6):
    a5 = Subgroup(A6, [parse_cycles("(1,2)(3,4)", 6), parse_cycles("(1,3,5)", 6)])
    assert a5.order == 60 and is_maximal(a5)
    a4 = Subgroup(A6, [parse_cycles("(1,2)(3,4)", 6), parse_cycles("(1,2,3)", 6)])
    assert a4.order == 12 and not is_maximal(a4)
    with pytest.raises(ValueError):
        is_maximal(Subgroup(A6, list(A6.generators)))


def test_subgroups_conjugate(A6):
    K = Subgroup(A6, [parse_cycles("(1,2)(3,4)", 6), parse_cycles("(1,3,5)", 6)])
    # reflexive
    ok, wit = subgroups_conjugate(K, K, A6)
    assert ok and wit.is_identity()
    # constructed conjugate, with a valid witness both ways
    g = parse_cycles("(1,6,2,3,4)", 6)
    L = Subgroup(A6, [g.inverse() * p * g for p in K.gens])
    ok, wit = subgroups_conjugate(K, L, A6)
    assert ok
    assert all(L.group.contains(wit.inverse() * p * wit) for p in K.gens)
    ok_back, wit_back = subgroups_conjugate(L, K, A6)
    assert ok_back
    assert all(K.group.contains(wit_back.inverse() * p * wit_back) for p in L.gens)
    # the two classes of A5 inside A6 are not conjugate (fused only by Out)
    exotic = None
    from grouploc.homsearch import enumerate_homs

    monos = enumerate_homs(K.group, A6, monos_only=True)
    for r in monos.monos():
        hom = monos.hom(int(r))
        M = Subgroup(A6, hom.images)
        conj, _w = subgroups_conjugate(K, M, A6)
        if not conj:
            exotic = M
            break
    assert exotic is not None
