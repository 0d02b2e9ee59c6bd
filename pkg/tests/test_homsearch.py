import itertools

import numpy as np
import pytest

from grouploc import Perm, PermGroup, from_cycles, parse_cycles
from grouploc.errors import UncertifiedPresentation
from grouploc.homsearch import GroupHom, enumerate_homs
from grouploc.presentations import Presentation, certify

from conftest import brute_closure, compose_tuples


def brute_force_homs(K, G):
    """Independent oracle: all generator-image tuples verified as
    homomorphisms by walking K's multiplication edges on plain tuples."""
    k_els = sorted(brute_closure(list(K.generators)))
    pos = {t: i for i, t in enumerate(k_els)}
    gens = [g.images for g in K.generators]
    edges = [[pos[compose_tuples(g, t)] for t in k_els] for g in gens]
    identity = tuple(range(K.degree))
    # breadth-first spanning tree over K
    parent = {pos[identity]: None}
    order = [pos[identity]]
    head = 0
    while head < len(order):
        cur = order[head]
        head += 1
        for gi, edge in enumerate(edges):
            nxt = edge[cur]
            if nxt not in parent:
                parent[nxt] = (cur, gi)
                order.append(nxt)

    g_els = sorted(brute_closure(list(G.generators)))

    def is_hom(images):
        img = {order[0]: tuple(range(G.degree))}
        for e in order[1:]:
            cur, gi = parent[e]
            img[e] = compose_tuples(images[gi], img[cur])
        for e in range(len(k_els)):
            for gi in range(len(gens)):
                if compose_tuples(images[gi], img[e]) != img[edges[gi][e]]:
                    return False
        return True

    found = []
    gen_orders = [Perm(g).order() for g in gens]
    g_orders = {t: Perm(t).order() for t in g_els}
    for combo in itertools.product(
        *[[t for t in g_els if gen_orders[i] % g_orders[t] == 0] for i in range(len(gens))]
    ):
        if is_hom(list(combo)):
            found.append(combo)
    return found


def test_hom_a5_a5_is_121(A5, A5_pres):
    hs = enumerate_homs(A5, A5, A5_pres)
    assert hs.count == 121
    assert hs.mono_count == 120


def test_pruned_equals_brute_force(A5, A5_pres):
    hs = enumerate_homs(A5, A5, A5_pres)
    brute = brute_force_homs(A5, A5)
    assert hs.count == len(brute)
    idx = A5.elements()
    listed = {tuple(tuple(int(x) for x in idx.table[j]) for j in row) for row in hs.pairs}
    assert listed == set(brute)


def test_counting_identity(A5, A5_pres, A6):
    hs = enumerate_homs(A5, A6, A5_pres)
    assert hs.count == sum(size * fiber for _c, size, fiber in hs.class_fiber_data)
    assert hs.count == len({tuple(int(x) for x in r) for r in hs.pairs})


def test_hom_from_trivial_group(trivial, A5):
    t5 = PermGroup([Perm.identity(5)])
    hs = enumerate_homs(t5, A5)
    assert hs.count == 1
    assert hs.hom(0).is_trivial()


def test_graph_path_matches_relator_path(A5, A5_pres):
    fast = enumerate_homs(A5, A5, A5_pres)
    slow = enumerate_homs(A5, A5)  # Cayley-walk leaf verification
    assert np.array_equal(fast.pairs, slow.pairs)
    assert fast.verified == "relator_certified" and slow.verified == "graph_certified"


def test_nontrivial_homs_from_simple_source_are_injective(A5, A5_pres, A6):
    hs = enumerate_homs(A5, A6, A5_pres)
    for i in range(hs.count):
        hom = hs.hom(i)
        assert hom.is_trivial() or hom.is_injective()


def test_returned_homs_pass_graph_reverification(A5, A5_pres, A6):
    hs = enumerate_homs(A5, A6, A5_pres)
    for i in range(0, hs.count, max(1, hs.count // 20)):
        assert hs.hom(i).graph_verify()


def test_uncertified_presentation_refused(A5):
    p = Presentation.parse("a b", ["a^2", "b^3", "(a*b)^5"])

    class FakeCert:
        presentation = p
        images = A5.generators

    with pytest.raises(UncertifiedPresentation):
        enumerate_homs(A5, A5, FakeCert())


def test_hom_counts_invariant_under_generator_tuple_change(A5, A5_pres, A6):
    # the same group on a different certified generating tuple gives the
    # same count (with a different listing)
    alt = from_cycles(["(1,2,3,4,5)", "(2,5,4)"], 5, name="A5alt")
    p_alt = Presentation.parse("a b", ["a^5", "b^3", "(a*b)^2"])
    cert_alt = certify(p_alt, alt, alt.generators)
    count_alt = enumerate_homs(alt, A6, cert_alt).count
    count_std = enumerate_homs(A5, A6, A5_pres).count
    assert count_alt == count_std
    assert enumerate_homs(alt, alt, cert_alt).count == 121


def test_compose_hom_identity_and_trivial(A5, A5_pres):
    hs = enumerate_homs(A5, A5, A5_pres)
    idx = A5.elements()
    id_pair = [idx.index_of(g) for g in A5.generators]
    identity = hs.hom(hs.index_of_pair(id_pair))
    some = hs.hom(7)
    assert some.then(identity).images == some.images
    trivial_hom = GroupHom(A5, A5, [A5.identity()] * 2, "graph_certified")
    assert trivial_hom.then(some).is_trivial()


def test_orbit_stabilizer_count_for_composites(A5, A5_pres):
    # compose a fixed embedding A4 -> A5 with all 120 automorphisms of A5;
    # the number of distinct composites equals 120 / |pointwise fixer|
    A4 = from_cycles(["(1,2,3)", "(1,2)(3,4)"], 5, name="A4")
    incl = GroupHom(A4, A5, A4.generators, "graph_certified")
    autos = enumerate_homs(A5, A5, A5_pres, monos_only=True)
    composites = {incl.then(autos.hom(int(r))).images for r in autos.monos()}
    fixing = sum(
        1 for r in autos.monos()
        if incl.then(autos.hom(int(r))).images == incl.images
    )
    assert len(composites) == 120 // fixing
    assert len(composites) * fixing == 120


def test_export_lines(A5, A5_pres):
    hs = enumerate_homs(A5, A5, A5_pres)
    lines = hs.export_lines()
    assert len(lines) == 121
    assert all(" " in line for line in lines)
    mono_lines = hs.export_lines(mono_only=True)
    assert len(mono_lines) == 120
