"""Structural predicates on permutation groups.

Derived subgroup, perfectness, center, conjugacy classes, normal closure,
simplicity, maximality of a subgroup, and conjugacy of subgroups.  Class
data is exact: it is computed by orbit sweeps over a full element index,
never by randomized class mapping, so results are deterministic and the
class equation is checked on the spot.
"""

from __future__ import annotations

import numpy as np

from .config import ELEMENT_CAP_DEFAULT, RunConfig, DEFAULT
from .errors import CapExceeded, MissingCatalogDatum
from .perm import Perm
from .permgroup import PermGroup, _inv_arr

SUBGROUP_ELEMENTS_CAP = 10_000


class ConjugacyClasses:
    """Exact conjugacy class data over a full element index.

    reps[i] is the smallest element index in class i, so class 0 is always
    the identity class.  `witness[x]` is an element index c with
    c^-1 * reps[class_of[x]] * c equal to element x.
    """

    def __init__(self, reps, sizes, orders, class_of, witness):
        self.reps = reps
        self.sizes = sizes
        self.orders = orders
        self.class_of = class_of
        self.witness = witness

    def __len__(self):
        return len(self.reps)

    def members(self, class_no: int) -> np.ndarray:
        return np.nonzero(self.class_of == class_no)[0]


def conjugacy_classes(G: PermGroup, cap: int = ELEMENT_CAP_DEFAULT) -> ConjugacyClasses:
    """Partition the group into conjugation orbits (exact, deterministic)."""
    idx = G.elements(cap)
    n = len(idx)
    tables = [G.conjugation_table(i + 1, cap) for i in range(len(G.generators))]
    gen_arrs = G.gen_arrays()
    rank = idx.rank
    table = idx.table
    orders = idx.orders()
    class_of = np.full(n, -1, dtype=np.int64)
    witness = np.zeros(n, dtype=np.int64)
    reps, sizes, class_orders = [], [], []
    for start in range(n):
        if class_of[start] >= 0:
            continue
        cno = len(reps)
        reps.append(start)
        class_orders.append(int(orders[start]))
        class_of[start] = cno
        witness[start] = 0
        queue = [start]
        count = 0
        while queue:
            cur = queue.pop()
            count += 1
            for gi, tb in enumerate(tables):
                nxt = int(tb[cur])
                if class_of[nxt] < 0:
                    class_of[nxt] = cno
                    # witness composes the path: c_new = c_cur * g
                    c_new = table[witness[cur]][gen_arrs[gi]]
                    witness[nxt] = rank[c_new.tobytes()]
                    queue.append(nxt)
        sizes.append(count)
    assert sum(sizes) == n, "class equation violated"
    return ConjugacyClasses(reps, sizes, class_orders, class_of, witness)


class Subgroup:
    """A subgroup given inside an ambient group.

    Carries its own PermGroup (same degree as the ambient) and, when small
    enough and the ambient is indexed, the sorted ambient element indices.
    """

    def __init__(self, ambient: PermGroup, gens, name=None, verify=False):
        self.ambient = ambient
        self.gens = tuple(gens)
        for g in self.gens:
            if not ambient.contains(g):
                raise ValueError("subgroup generator lies outside the ambient group")
        self.group = PermGroup(self.gens or [ambient.identity()], name=name, verify=verify)
        if ambient.order % self.group.order:
            raise AssertionError("subgroup order does not divide the ambient order")
        self._element_indices = None

    @property
    def order(self) -> int:
        return self.group.order

    def element_indices(self, cap: int = SUBGROUP_ELEMENTS_CAP) -> np.ndarray:
        """Sorted ambient element indices of this subgroup."""
        if self._element_indices is not None:
            return self._element_indices
        if self.group.order > cap:
            raise CapExceeded("subgroup element set", needed=self.group.order, cap=cap)
        amb = self.ambient.elements()
        sub = self.group.elements(cap)
        out = np.fromiter(
            (amb.rank[sub.table[i].tobytes()] for i in range(len(sub))),
            dtype=np.int64,
            count=len(sub),
        )
        out.sort()
        self._element_indices = out
        return out

    def contains(self, p: Perm) -> bool:
        return self.group.contains(p)

    def __repr__(self):
        return f"Subgroup(order {self.group.order} of {self.ambient!r})"


def normal_closure(G: PermGroup, seeds, verify=False) -> Subgroup:
    """Smallest normal subgroup of G containing the seed elements."""
    gens = [p for p in seeds if not p.is_identity()]
    if not gens:
        return Subgroup(G, (G.identity(),), verify=verify)
    gen_pairs = [(a, _inv_arr(a)) for a in G.gen_arrays()]
    H = PermGroup(gens, verify=False)
    changed = True
    while changed:
        changed = False
        for h in [np.array(p.images, dtype=np.int32) for p in gens]:
            for a, ainv in gen_pairs:
                conj = ainv[h[a]]
                if not H.contains_arr(conj):
                    gens.append(Perm(int(x) for x in conj))
                    H = PermGroup(gens, verify=False)
                    changed = True
    return Subgroup(G, tuple(gens), verify=verify)


def derived_subgroup(G: PermGroup) -> Subgroup:
    """Commutator subgroup: normal closure of pairwise generator commutators."""
    gens = list(G.generators)
    comms = []
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            a, b = gens[i], gens[j]
            c = a.inverse() * b.inverse() * a * b
            if not c.is_identity():
                comms.append(c)
    return normal_closure(G, comms)


def is_perfect(G: PermGroup) -> bool:
    return derived_subgroup(G).order == G.order


def is_superperfect_certified(G: PermGroup, mult_from_catalog) -> bool:
    """Perfect with trivial multiplier; the multiplier is trusted catalog data."""
    if mult_from_catalog is None:
        raise MissingCatalogDatum(f"Schur multiplier unknown for {G!r}")
    return is_perfect(G) and list(mult_from_catalog) == []


def center(G: PermGroup, cap: int = ELEMENT_CAP_DEFAULT) -> Subgroup:
    """Elements commuting with every generator (vectorized element scan)."""
    idx = G.elements(cap)
    table = idx.table
    mask = np.ones(len(idx), dtype=bool)
    for a in G.gen_arrays():
        mask &= np.all(table[:, a] == a[table], axis=1)
    members = np.nonzero(mask)[0]
    gens = [idx.perm(int(i)) for i in members if i != 0]
    return Subgroup(G, tuple(gens) or (G.identity(),))


def is_simple(G: PermGroup, cap: int = ELEMENT_CAP_DEFAULT) -> bool:
    """No proper nontrivial normal subgroup, via closures of class representatives."""
    if G.order == 1:
        return False
    classes = conjugacy_classes(G, cap)
    idx = G.elements(cap)
    for rep in classes.reps[1:]:
        if normal_closure(G, [idx.perm(rep)]).order != G.order:
            return False
    return True


def is_maximal(H: Subgroup, config: RunConfig = DEFAULT) -> bool:
    """True iff adjoining any element outside H generates the whole ambient group.

    Sweeps a full right transversal of H; no subgroup classification data is
    consulted.
    """
    G = H.ambient
    if H.order == G.order:
        raise ValueError("maximality is asked of a proper subgroup")
    n_cosets = G.order // H.order
    if n_cosets * H.order > config.coset_sweep_cap:
        raise CapExceeded("coset sweep", needed=G.order, cap=config.coset_sweep_cap)
    idx = G.elements(config.element_cap)
    h_small = H.group.elements(config.element_cap)
    h_rows = h_small.table
    rank = idx.rank
    visited = np.zeros(len(idx), dtype=bool)
    h_set = frozenset(int(i) for i in (H.element_indices(config.element_cap)
                                       if H.order <= SUBGROUP_ELEMENTS_CAP
                                       else []))
    base_gens = list(H.gens)
    for i in range(len(idx)):
        if visited[i]:
            continue
        g = idx.table[i]
        coset_rows = h_rows[:, :][:, g]  # each h composed with g
        for r in coset_rows:
            visited[rank[r.tobytes()]] = True
        in_h = (i in h_set) if h_set else H.group.contains_arr(g)
        if in_h:
            continue
        K = PermGroup(base_gens + [idx.perm(i)], verify=False)
        if K.order != G.order:
            return False
    return True


def subgroups_conjugate(K: Subgroup, L: Subgroup, G: PermGroup | None = None,
                        config: RunConfig = DEFAULT):
    """Decide conjugacy of two subgroups in G; returns (bool, witness Perm or None).

    The conjugation orbit of K's element set is swept in full before a
    negative answer is returned.
    """
    G = G or K.ambient
    if K.order != L.order:
        return False, None
    idx = G.elements(config.element_cap)
    tables = [G.conjugation_table(i + 1, config.element_cap) for i in range(len(G.generators))]
    gen_arrs = G.gen_arrays()
    rank = idx.rank
    table = idx.table
    k_set = K.element_indices()
    l_key = L.element_indices().tobytes()
    start_key = k_set.tobytes()
    identity_index = 0
    seen = {start_key: identity_index}
    if start_key == l_key:
        return True, Perm.identity(G.degree)
    queue = [(k_set, identity_index)]
    while queue:
        cur, wit = queue.pop()
        for gi, tb in enumerate(tables):
            nxt = np.sort(tb[cur])
            key = nxt.tobytes()
            if key in seen:
                continue
            w_new = int(rank[table[wit][gen_arrs[gi]].tobytes()])
            if key == l_key:
                return True, idx.perm(w_new)
            seen[key] = w_new
            if len(seen) > config.subgroup_orbit_cap:
                raise CapExceeded("subgroup conjugation orbit", cap=config.subgroup_orbit_cap)
            queue.append((nxt, w_new))
    return False, None
