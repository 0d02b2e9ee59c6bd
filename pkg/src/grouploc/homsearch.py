"""Exhaustive enumeration of Hom(K, G) and Mono(K, G) for concrete groups.

The search seeds the first generator image with one representative per
conjugacy class of the target whose element order divides the first
generator's order, backtracks over the remaining generator images with
element-order and relator pruning, and reconstructs full fibers from the
class-representative fibers by explicit conjugation.  Totals therefore
satisfy the counting identity  count = sum(class_size * fiber_size)  by
construction, and it is asserted anyway.

Relator pruning is allowed only for presentations certified against the
source's exact generator tuple; without one the search falls back to
verifying each candidate leaf by walking the source's multiplication
edges (equivalent to the order test on the graph subgroup of K x G).
"""

from __future__ import annotations

import logging

import numpy as np

from .analysis import conjugacy_classes
from .config import RunConfig, DEFAULT
from .errors import CapExceeded, UncertifiedPresentation
from .perm import Perm
from .permgroup import PermGroup, ElementIndex, _inv_arr, direct_product
from .presentations import CertifiedPresentation, CERT_COSET_ENUMERATION

log = logging.getLogger(__name__)

RELATOR_CERTIFIED = "relator_certified"
GRAPH_CERTIFIED = "graph_certified"


class GroupHom:
    """A homomorphism recorded as generator images, with a validity tag."""

    def __init__(self, source: PermGroup, target: PermGroup, images, verified: str):
        self.source = source
        self.target = target
        self.images = tuple(images)
        self.verified = verified
        self._image_arrays = [np.array(p.images, dtype=np.int32) for p in self.images]
        self._image_group = None

    def apply(self, x: Perm) -> Perm:
        """Image of an arbitrary source element (factored through the generators)."""
        word = self.source.element_word(x)
        out = np.arange(self.target.degree, dtype=np.int32)
        for letter in reversed(word):
            g = self._image_arrays[letter - 1] if letter > 0 else _inv_arr(self._image_arrays[-letter - 1])
            out = g[out]
        return Perm(int(v) for v in out)

    def image_group(self) -> PermGroup:
        if self._image_group is None:
            gens = [p for p in self.images if not p.is_identity()]
            self._image_group = PermGroup(gens or [self.target.identity()], verify=False)
        return self._image_group

    def is_injective(self) -> bool:
        return self.image_group().order == self.source.order

    def is_trivial(self) -> bool:
        return all(p.is_identity() for p in self.images)

    def then(self, g: "GroupHom") -> "GroupHom":
        """Composite g o self (apply self first)."""
        if g.source is not self.target and g.source.degree != self.target.degree:
            raise ValueError("middle groups do not match")
        return GroupHom(self.source, g.target, [g.apply(p) for p in self.images], self.verified)

    def graph_verify(self) -> bool:
        """Independent re-verification: the graph subgroup of K x G has order |K|."""
        k, g = self.source, self.target
        paired = []
        for kp, ip in zip(k.generators, self.images):
            paired.append(Perm(kp.images + tuple(x + k.degree for x in ip.images)))
        graph = PermGroup(paired, verify=False)
        return graph.order == k.order

    def __eq__(self, other):
        return (
            isinstance(other, GroupHom)
            and self.images == other.images
            and self.source is other.source
            and self.target is other.target
        )

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        imgs = ", ".join(p.cycle_string() for p in self.images)
        return f"GroupHom({self.source!r} -> {self.target!r}: {imgs})"


def compose_hom(f: GroupHom, g: GroupHom) -> GroupHom:
    """g o f for f: K -> G and g: G -> L."""
    return f.then(g)


class HomSet:
    """All homomorphisms K -> G, canonically ordered.

    `pairs` holds target element indices of the generator images, one row
    per homomorphism, sorted lexicographically (which is exactly the
    lexicographic order on concatenated image vectors, since the element
    index is itself lexicographic).
    """

    def __init__(self, source, target, target_index, pairs, mono_mask, class_fiber_data, verified):
        self.source = source
        self.target = target
        self.target_index = target_index
        self.pairs = pairs
        self.mono_mask = mono_mask
        self.count = len(pairs)
        self.mono_count = int(mono_mask.sum())
        self.class_fiber_data = class_fiber_data
        self.verified = verified
        self._pair_lookup = None

    def hom(self, i: int) -> GroupHom:
        images = [self.target_index.perm(int(j)) for j in self.pairs[i]]
        return GroupHom(self.source, self.target, images, self.verified)

    def __len__(self):
        return self.count

    def __iter__(self):
        return (self.hom(i) for i in range(self.count))

    def monos(self):
        return np.nonzero(self.mono_mask)[0]

    def pair_lookup(self):
        if self._pair_lookup is None:
            self._pair_lookup = {tuple(int(x) for x in row): i for i, row in enumerate(self.pairs)}
        return self._pair_lookup

    def index_of_pair(self, pair) -> int:
        return self.pair_lookup()[tuple(int(x) for x in pair)]

    def export_lines(self, mono_only=False):
        out = []
        for i in range(self.count):
            if mono_only and not self.mono_mask[i]:
                continue
            images = [self.target_index.perm(int(j)).cycle_string() for j in self.pairs[i]]
            out.append(" ".join(images))
        return out


_ZEROS = {}


def _order_divides(arr, m: int, scratch) -> bool:
    """Does the order of the permutation array divide m (cycle by cycle)?"""
    n = len(arr)
    zero = _ZEROS.get(n)
    if zero is None:
        zero = _ZEROS[n] = bytes(n)
    scratch[:] = zero
    for s in range(n):
        if scratch[s]:
            continue
        length = 0
        p = s
        while not scratch[p]:
            scratch[p] = 1
            p = int(arr[p])
            length += 1
        if m % length:
            return False
    return True


def _relator_schedule(cp: CertifiedPresentation, ngens: int):
    """Split certified relators into per-generator order bounds and
    (depth, base_word, exponent) checks grouped by deepest generator used."""
    order_bound = {}
    checks = {d: [] for d in range(1, ngens + 1)}
    for rel in cp.presentation.relators:
        letters = rel.letters
        n = len(letters)
        period = n
        for p in range(1, n):
            if n % p == 0 and letters == letters[:p] * (n // p):
                period = p
                break
        base, expo = letters[:period], n // period
        if len(base) == 1:
            g = abs(base[0])
            order_bound[g] = min(order_bound.get(g, expo), expo)
        else:
            depth = max(abs(x) for x in base)
            checks[depth].append((base, expo))
    return order_bound, checks


def _eval_letters(images, letters, degree):
    out = None
    for letter in reversed(letters):
        g = images[letter - 1] if letter > 0 else _inv_arr(images[-letter - 1])
        out = g if out is None else g[out]
    return out if out is not None else np.arange(degree, dtype=np.int32)


class _CayleyVerifier:
    """Leaf verification without a presentation: walk the source's
    multiplication edges and check the image assignment is consistent."""

    def __init__(self, K: PermGroup, cap: int):
        idx = K.elements(cap)
        n = len(idx)
        ngens = len(K.generators)
        self.n, self.ngens = n, ngens
        self.parent = np.empty(n, dtype=np.int64)
        self.parent_gen = np.empty(n, dtype=np.int64)
        edge = np.empty((n, ngens), dtype=np.int64)
        rank = idx.rank
        table = idx.table
        gens = K.gen_arrays()
        for i in range(n):
            row = table[i]
            for gi, g in enumerate(gens):
                edge[i, gi] = rank[row[g].tobytes()]
        self.edge = edge
        # breadth-first order with parents, from the identity
        order = [0]
        self.parent[0] = -1
        self.parent_gen[0] = -1
        seen = np.zeros(n, dtype=bool)
        seen[0] = True
        head = 0
        while head < len(order):
            cur = order[head]
            head += 1
            for gi in range(ngens):
                nxt = int(edge[cur, gi])
                if not seen[nxt]:
                    seen[nxt] = True
                    self.parent[nxt] = cur
                    self.parent_gen[nxt] = gi
                    order.append(nxt)
        self.bfs_order = order

    def verify(self, images) -> bool:
        degree = len(images[0])
        n = self.n
        img = [None] * n
        img[0] = np.arange(degree, dtype=np.int32)
        for cur in self.bfs_order[1:]:
            p = int(self.parent[cur])
            gi = int(self.parent_gen[cur])
            img[cur] = img[p][images[gi]]
        edge = self.edge
        for i in range(n):
            row = img[i]
            for gi in range(self.ngens):
                j = int(edge[i, gi])
                if not np.array_equal(row[images[gi]], img[j]):
                    return False
        return True


def enumerate_homs(
    K: PermGroup,
    G: PermGroup,
    presentation: CertifiedPresentation | None = None,
    config: RunConfig = DEFAULT,
    monos_only: bool = False,
) -> HomSet:
    """The complete set Hom(K, G) (or only the injective ones)."""
    if presentation is not None:
        cp = presentation
        if cp.presentation.certification != CERT_COSET_ENUMERATION or tuple(cp.images) != tuple(K.generators):
            raise UncertifiedPresentation(
                "relator pruning requires a presentation certified on the source's generator tuple"
            )
        verified = RELATOR_CERTIFIED
        verifier = None
    else:
        verified = GRAPH_CERTIFIED
        verifier = _CayleyVerifier(K, config.element_cap)

    idxG = G.elements(config.element_cap)
    ccG = conjugacy_classes(G, config.element_cap)
    ordersG = idxG.orders()
    gens = list(K.generators)
    ngens = len(gens)
    gen_orders = [g.order() for g in gens]
    degree = G.degree
    scratch = bytearray(degree)

    if presentation is not None:
        order_bound, checks = _relator_schedule(cp, ngens)
    else:
        order_bound, checks = {}, {d: [] for d in range(1, ngens + 1)}

    def allowed(gi: int) -> int:
        m = gen_orders[gi]
        if gi + 1 in order_bound:
            m = np.gcd(m, order_bound[gi + 1])
        return int(m)

    # candidate element indices per generator position (sorted ascending)
    candidate_sets = []
    for gi in range(ngens):
        m = allowed(gi)
        if monos_only:
            mask = ordersG == gen_orders[gi]
        else:
            mask = (m % ordersG.astype(np.int64)) == 0 if m else ordersG == 1
        candidate_sets.append(np.nonzero(mask)[0])

    seed_classes = [
        c for c in range(len(ccG))
        if (gen_orders[0] % ccG.orders[c] == 0 if not monos_only else ccG.orders[c] == gen_orders[0])
    ]

    leaf_budget = config.leaf_budget
    leaves = 0
    rep_fibers = []  # (class_no, [assignments]) with assignment = tuple of element indices

    table = idxG.table

    def relators_ok(depth, images):
        nonlocal leaves
        leaves += 1
        if leaves > leaf_budget:
            raise CapExceeded("leaf verifications", needed=leaves, cap=leaf_budget)
        if leaves % 2_000_000 == 0:
            log.info("hom search progress: %d leaf checks", leaves)
        for base, expo in checks[depth]:
            val = _eval_letters(images, base, degree)
            if not _order_divides(val, expo, scratch):
                return False
        return True

    def extend(depth, images, assignment, out):
        if depth == ngens:
            out.append(tuple(assignment))
            return
        for j in candidate_sets[depth]:
            arr = table[j]
            images.append(arr)
            assignment.append(int(j))
            if relators_ok(depth + 1, images):
                if presentation is not None or depth + 1 < ngens:
                    extend(depth + 1, images, assignment, out)
                elif verifier.verify(images):
                    out.append(tuple(assignment))
            images.pop()
            assignment.pop()

    for c in seed_classes:
        rep = ccG.reps[c]
        arr = table[rep]
        images = [arr]
        if not relators_ok(1, images):
            continue
        if ngens == 1:
            found = [(int(rep),)] if (presentation is not None or verifier.verify(images)) else []
        else:
            found = []
            extend(1, images, [int(rep)], found)
        if found:
            rep_fibers.append((c, found))

    # mono detection per representative fiber (constant on conjugation orbits)
    mono_flags = {}
    for c, found in rep_fibers:
        for assignment in found:
            perms = [idxG.perm(j) for j in assignment]
            img = PermGroup([p for p in perms if not p.is_identity()] or [G.identity()], verify=False)
            mono_flags[(c, assignment)] = img.order == K.order

    # reconstruct full fibers by explicit conjugation
    rank = idxG.rank
    all_pairs = []
    all_mono = []
    class_fiber_data = []
    for c, found in rep_fibers:
        members = ccG.members(c)
        class_fiber_data.append((c, int(ccG.sizes[c]), len(found)))
        for assignment in found:
            is_mono = mono_flags[(c, assignment)]
            rows = np.empty((len(members), ngens), dtype=np.int64)
            for mi, x in enumerate(members):
                w = int(ccG.witness[x])
                if w == 0:
                    rows[mi] = assignment
                    continue
                warr = table[w]
                winv = _inv_arr(warr)
                for gi, j in enumerate(assignment):
                    rows[mi, gi] = rank[winv[table[j]][warr].tobytes()]
            all_pairs.append(rows)
            all_mono.append(np.full(len(members), is_mono))

    if all_pairs:
        pairs = np.vstack(all_pairs)
        mono_mask = np.concatenate(all_mono)
    else:
        pairs = np.empty((0, ngens), dtype=np.int64)
        mono_mask = np.empty(0, dtype=bool)

    order_key = np.lexsort(pairs.T[::-1]) if len(pairs) else np.empty(0, dtype=np.int64)
    pairs = pairs[order_key]
    mono_mask = mono_mask[order_key]

    expected = sum(size * fiber for _c, size, fiber in class_fiber_data)
    assert len(pairs) == expected, "counting identity violated"
    if len(pairs) > 1:
        assert not np.any(np.all(pairs[1:] == pairs[:-1], axis=1)), "duplicate homomorphisms"

    return HomSet(K, G, idxG, pairs, mono_mask, class_fiber_data, verified)
