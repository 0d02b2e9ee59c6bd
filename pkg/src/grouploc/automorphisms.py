"""Automorphism groups realized as permutation groups.

Aut(G) is enumerated as Mono(G, G) by homomorphism search, then realized
faithfully on the smallest generating element subset of the form "all
elements of order k" (k minimal such that the set generates).  Inner
automorphisms act by conjugation; outer coset representatives are
discovered by scanning the mono list against the known coset pairs, so
only a handful of automorphisms ever need full element tables.
"""

from __future__ import annotations

import numpy as np

from .analysis import Subgroup
from .config import RunConfig, DEFAULT
from .errors import CapExceeded
from .perm import Perm
from .permgroup import PermGroup, _inv_arr
from .homsearch import HomSet, enumerate_homs

__all__ = ["AutRealization", "automorphism_group", "hom_element_table"]


def hom_element_table(source: PermGroup, image_arrays, target_index, config: RunConfig = DEFAULT):
    """Index table e -> hom(e) over the source's element index.

    The target must be indexed; the homomorphism is given by its generator
    image arrays.  Cost is one composition and one rank lookup per element.
    """
    idx = source.elements(config.element_cap)
    n = len(idx)
    out = np.empty(n, dtype=np.int64)
    out[0] = 0
    rank = target_index.rank
    ttable = target_index.table
    img = list(image_arrays)
    img_inv = [_inv_arr(a) for a in img]
    # walk in discovery order so parents are mapped before their children;
    # element = gen o parent, hence image = img(gen) o img(parent)
    for i in idx.bfs_order[1:]:
        i = int(i)
        p = int(idx._parent[i])
        g = int(idx._parent_gen[i])
        garr = img[g - 1] if g > 0 else img_inv[-g - 1]
        out[i] = rank[garr[ttable[out[p]]].tobytes()]
    return out


class AutRealization:
    """Aut(G) as a HomSet plus a faithful permutation realization."""

    def __init__(self, G, autos, subset, perm_realization, inn, out_order,
                 inner_pairs, coset_reps, subset_pos):
        self.G = G
        self.autos = autos
        self.subset = subset
        self.perm_realization = perm_realization
        self.inn = inn
        self.out_order = out_order
        self.inner_pairs = inner_pairs  # pair tuple -> conjugator element index
        self.coset_reps = coset_reps    # list of (auto pair tuple, full element table)
        self._subset_pos = subset_pos
        self.order = autos.mono_count

    # -- applying automorphisms ------------------------------------------------

    def generator_tables(self):
        """Full element tables for a generating set of Aut(G) (inner + outer reps)."""
        idx = self.G.elements()
        tables = [self.G.conjugation_table(i + 1) for i in range(len(self.G.generators))]
        for _pair, table in self.coset_reps[1:]:
            tables.append(table)
        return tables

    def decompose_pair(self, pair):
        """Write the automorphism with the given generator-image pair as
        (coset representative number, conjugator element index)."""
        pair = tuple(int(x) for x in pair)
        for rep_no, (_rep_pair, table) in enumerate(self.coset_reps):
            swept = self._sweep_pairs_from(tuple(int(table[x]) for x in self._gen_indices()))
            if pair in swept:
                return rep_no, swept[pair]
        raise KeyError("pair does not define an automorphism of this group")

    def _gen_indices(self):
        idx = self.G.elements()
        return [idx.index_of(g) for g in self.G.generators]

    def _sweep_pairs_from(self, base_pair):
        """All pairs conj_g(base) for g in G, mapped to the conjugator index."""
        idx = self.G.elements()
        rank = idx.rank
        table = idx.table
        out = {}
        n = len(idx)
        for g in range(n):
            garr = table[g]
            ginv = _inv_arr(garr)
            key = tuple(int(rank[ginv[table[x]][garr].tobytes()]) for x in base_pair)
            out.setdefault(key, g)
        return out

    def subset_perm_of_table(self, table) -> Perm:
        """Restrict a full element table to the realization's points."""
        images = self._subset_pos[table[self.subset]]
        assert np.all(images >= 0)
        return Perm(int(x) for x in images)

    def table_of_pair(self, pair, config: RunConfig = DEFAULT):
        """Full element table of the automorphism with the given image pair."""
        idx = self.G.elements(config.element_cap)
        arrays = [idx.table[int(j)] for j in pair]
        return hom_element_table(self.G, arrays, idx, config)

    def evaluations_at(self, points):
        """Dict {(beta(x) for x in points) -> row index in autos} over all of Aut(G).

        Used to solve beta o i = given map; cost is one conjugation sweep
        per outer coset.
        """
        idx = self.G.elements()
        rank = idx.rank
        table = idx.table
        lookup = self.autos.pair_lookup()
        out = {}
        collisions = set()
        n = len(idx)
        gen_idx = self._gen_indices()
        for _rep_pair, rep_table in self.coset_reps:
            base_eval = [int(rep_table[x]) for x in points]
            base_pair = [int(rep_table[x]) for x in gen_idx]
            for g in range(n):
                garr = table[g]
                ginv = _inv_arr(garr)
                key = tuple(int(rank[ginv[table[x]][garr].tobytes()]) for x in base_eval)
                pair = tuple(int(rank[ginv[table[x]][garr].tobytes()]) for x in base_pair)
                row = lookup.get(pair)
                if row is None:
                    raise AssertionError("swept automorphism missing from the mono list")
                if key in out and out[key] != row:
                    collisions.add(key)
                else:
                    out.setdefault(key, row)
        return out, collisions


def automorphism_group(G: PermGroup, presentation=None, config: RunConfig = DEFAULT) -> AutRealization:
    """Aut(G) = Mono(G, G), realized on a generating element-order subset."""
    autos = enumerate_homs(G, G, presentation, config=config, monos_only=True)
    idx = G.elements(config.element_cap)
    orders = idx.orders()
    n = len(idx)

    if G.order == 1:
        subset = np.array([0], dtype=np.int64)
    else:
        subset = None
        for k in sorted(set(int(o) for o in orders if o > 1)):
            cand = np.nonzero(orders == k)[0]
            probe = PermGroup([idx.perm(int(i)) for i in cand], verify=False)
            if probe.order == G.order:
                subset = cand
                break
        assert subset is not None, "no single element order generates the group"

    subset_pos = np.full(n, -1, dtype=np.int64)
    subset_pos[subset] = np.arange(len(subset))

    # inner generators act on the subset by conjugation
    real_gens = []
    for i in range(len(G.generators)):
        ct = G.conjugation_table(i + 1, config.element_cap)
        real_gens.append(Perm(int(x) for x in subset_pos[ct[subset]]))
    n_inner_gens = len(real_gens)

    gen_idx = [idx.index_of(g) for g in G.generators]
    rank = idx.rank
    table = idx.table

    def sweep(base_pair):
        out = {}
        for g in range(n):
            garr = table[g]
            ginv = _inv_arr(garr)
            key = tuple(int(rank[ginv[table[x]][garr].tobytes()]) for x in base_pair)
            out.setdefault(key, g)
        return out

    inner_pairs = sweep(tuple(gen_idx))
    known = dict(inner_pairs)
    identity_table = np.arange(n, dtype=np.int64)
    coset_reps = [(tuple(gen_idx), identity_table)]

    lookup_rows = autos.pairs
    for row_i in range(len(lookup_rows)):
        if len(known) >= autos.mono_count:
            break
        pair = tuple(int(x) for x in lookup_rows[row_i])
        if pair in known:
            continue
        rep_table = hom_element_table(G, [table[j] for j in pair], idx, config)
        coset_reps.append((pair, rep_table))
        real_gens.append(Perm(int(x) for x in subset_pos[rep_table[subset]]))
        for key, g in sweep(pair).items():
            known.setdefault(key, g)
    assert len(known) == autos.mono_count, "coset sweep did not exhaust Aut(G)"

    realization = PermGroup(real_gens or [Perm.identity(1)], name=f"Aut({G.name})" if G.name else None, verify=False)
    assert realization.order == autos.mono_count, "realization is not faithful"
    inn = Subgroup(realization, tuple(real_gens[:n_inner_gens]) or (realization.identity(),))
    out_order = autos.mono_count // inn.order
    assert out_order * inn.order == autos.mono_count
    # Inn is normal: conjugates of its generators by the realization's generators stay inside
    for g in realization.gen_arrays():
        ginv = _inv_arr(g)
        for h in inn.group.gen_arrays():
            if not inn.group.contains_arr(ginv[h[g]]):
                raise AssertionError("inner automorphisms are not normal in the realization")
    return AutRealization(G, autos, subset, realization, inn, out_order,
                          inner_pairs, coset_reps, subset_pos)
