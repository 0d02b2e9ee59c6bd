"""Permutation groups with deterministic stabilizer chains.

The chain (base and strong generating set) is built by a deterministic,
non-randomized Schreier-Sims procedure: base points are the smallest
non-fixed point at each level, transversals are stored as explicit
permutation vectors, and every strong generator carries a witness word.
Witness words are kept short by writing them over the original generators
plus earlier strong generators; expansion to the original generators alone
is available on demand.  Construction ends with a verification pass that
re-sifts all generators and all Schreier generators, so the published
order and membership test are certified, not probabilistic.

Groups are immutable after construction and safe to share across workers.
"""

from __future__ import annotations

import numpy as np

from .config import ELEMENT_CAP_DEFAULT
from .errors import CapExceeded, DegreeMismatch
from .perm import Perm

# Words are tuples of signed 1-based indices into an alphabet of
# permutations: +k means alphabet[k-1], -k its inverse.  Evaluation
# multiplies left to right, the rightmost letter acting first (the package
# composition convention).  Inside the chain the alphabet is the original
# generators followed by the strong generators, so stored words stay short.


def word_inverse(word):
    return tuple(-x for x in reversed(word))


def _arr(p: Perm) -> np.ndarray:
    return np.array(p.images, dtype=np.int32)


def _inv_arr(a: np.ndarray) -> np.ndarray:
    inv = np.empty_like(a)
    inv[a] = np.arange(len(a), dtype=np.int32)
    return inv


def eval_word_arrays(images, word, degree):
    """Evaluate a signed word on a list of numpy image arrays."""
    out = np.arange(degree, dtype=np.int32)
    for letter in reversed(word):
        g = images[letter - 1] if letter > 0 else _inv_arr(images[-letter - 1])
        out = g[out]
    return out


class _Level:
    __slots__ = ("base", "gens", "orbit", "transversal")

    def __init__(self, base):
        self.base = base
        self.gens = []  # (array, inverse array, alphabet index) in addition order
        self.orbit = [base]  # discovery order
        self.transversal = {base: None}  # point -> (array, word over alphabet)

    def u(self, point, degree):
        entry = self.transversal[point]
        if entry is None:
            return np.arange(degree, dtype=np.int32), ()
        return entry

    def extend_orbit(self, new_gens_start):
        """Grow the orbit with the current generator list.

        Existing transversal entries are never rewritten, so Schreier
        generators already processed stay valid.  Returns the (point, gen)
        pairs whose Schreier generators are new.
        """
        fresh_pairs = []
        n_old = len(self.orbit)
        for p in self.orbit[:n_old]:
            for gi in range(new_gens_start, len(self.gens)):
                fresh_pairs.append((p, gi))
                self._visit(p, gi)
        head = n_old
        while head < len(self.orbit):
            p = self.orbit[head]
            head += 1
            for gi in range(len(self.gens)):
                fresh_pairs.append((p, gi))
                self._visit(p, gi)
        return fresh_pairs

    def _visit(self, p, gi):
        g, _ginv, alpha = self.gens[gi]
        q = int(g[p])
        if q not in self.transversal:
            up = self.transversal[p]
            if up is None:
                self.transversal[q] = (g.copy(), (alpha,))
            else:
                arr, w = up
                self.transversal[q] = (g[arr], (alpha,) + w)
            self.orbit.append(q)


class StabilizerChain:
    """Deterministic BSGS with compositional witness words.

    A strong generator that fixes the first i base points participates in
    the orbit and Schreier closure of every level up to i, so additions
    cascade upward through the chain.
    """

    def __init__(self, gen_arrays, degree):
        self.degree = degree
        self.ngens = len(gen_arrays)
        self.gen_arrays = [a.astype(np.int32) for a in gen_arrays]
        # strong generators: (array, word over alphabet of originals + earlier strong gens)
        self.strong = []
        self.levels: list[_Level] = []
        self._id = np.arange(degree, dtype=np.int32)
        for i, a in enumerate(self.gen_arrays):
            self._ingest(a, (i + 1,))

    def _alphabet_array(self, k: int) -> np.ndarray:
        return self.gen_arrays[k - 1] if k <= self.ngens else self.strong[k - self.ngens - 1][0]

    def eval_alphabet_word(self, word) -> np.ndarray:
        out = self._id.copy()
        for letter in reversed(word):
            g = self._alphabet_array(abs(letter))
            if letter < 0:
                g = _inv_arr(g)
            out = g[out]
        return out

    # -- construction -----------------------------------------------------

    def _ingest(self, arr, word):
        work = [(arr, word)]
        while work:
            a, w = work.pop()
            residue, rword, stop = self._sift_arr(a, w)
            if residue is None:
                continue
            moved = int(np.nonzero(residue != self._id)[0][0])
            if stop == len(self.levels):
                self.levels.append(_Level(moved))
            self.strong.append((residue, rword))
            alpha = self.ngens + len(self.strong)  # alphabet index of this strong gen
            rec = (residue, _inv_arr(residue), alpha)
            # the residue fixes the first `stop` base points, so it belongs
            # to the generator set of every level 0..stop
            for i in range(stop + 1):
                lv = self.levels[i]
                start = len(lv.gens)
                lv.gens.append(rec)
                fresh = lv.extend_orbit(new_gens_start=start)
                for p, gi in fresh:
                    s, sw = self._schreier_gen(lv, p, gi)
                    if s is not None:
                        work.append((s, sw))

    def _schreier_gen(self, lv, p, gi):
        g, _ginv, alpha = lv.gens[gi]
        up, wp = lv.u(p, self.degree)
        q = int(g[p])
        uq, wq = lv.u(q, self.degree)
        s = _inv_arr(uq)[g[up]]
        if np.array_equal(s, self._id):
            return None, ()
        return s, word_inverse(wq) + (alpha,) + wp

    def _sift_arr(self, a, word):
        """Strip `a` through the chain.

        Returns (residue, word, level); residue None means membership.
        Otherwise the residue fixes all base points before `level`.
        """
        for i, lv in enumerate(self.levels):
            if np.array_equal(a, self._id):
                return None, (), i
            p = int(a[lv.base])
            if p not in lv.transversal:
                return a, word, i
            up, wp = lv.u(p, self.degree)
            a = _inv_arr(up)[a]
            word = word_inverse(wp) + word
        if np.array_equal(a, self._id):
            return None, (), len(self.levels)
        return a, word, len(self.levels)

    # -- queries -----------------------------------------------------------

    def order(self) -> int:
        n = 1
        for lv in self.levels:
            n *= len(lv.orbit)
        return n

    def contains_arr(self, a) -> bool:
        residue, _w, _l = self._sift_arr(a, ())
        return residue is None

    def membership_alphabet_word(self, a):
        """A word over the chain alphabet whose product is `a`, or None."""
        word = []
        for lv in self.levels:
            if np.array_equal(a, self._id):
                break
            p = int(a[lv.base])
            if p not in lv.transversal:
                return None
            up, wp = lv.u(p, self.degree)
            word.append(wp)
            a = _inv_arr(up)[a]
        if not np.array_equal(a, self._id):
            return None
        out = ()
        for wp in word:
            out = out + wp
        return out

    def expand_word(self, word):
        """Rewrite an alphabet word over the original generators only.

        Expansion can be long; intended for small groups and verification.
        """
        memo: dict[int, tuple] = {}

        def expand_letter(k: int):
            if k <= self.ngens:
                return (k,)
            if k not in memo:
                j = k - self.ngens - 1
                memo[k] = tuple(
                    x for letter in self.strong[j][1] for x in (
                        expand_letter(letter) if letter > 0 else word_inverse(expand_letter(-letter))
                    )
                )
            return memo[k]

        out = []
        for letter in word:
            out.extend(expand_letter(letter) if letter > 0 else word_inverse(expand_letter(-letter)))
        return tuple(out)

    def base(self):
        return [lv.base for lv in self.levels]

    def verify(self, original_arrays):
        """Re-sift originals and all Schreier generators; check witness words."""
        for a in original_arrays:
            if not self.contains_arr(a):
                raise AssertionError("stabilizer chain rejects an original generator")
        for j, (s, w) in enumerate(self.strong):
            if not np.array_equal(self.eval_alphabet_word(w), s):
                raise AssertionError(f"witness word of strong generator {j} is wrong")
            for letter in w:
                if abs(letter) > self.ngens and abs(letter) - self.ngens - 1 >= j:
                    raise AssertionError("witness word refers to a later strong generator")
        for lv in self.levels:
            for p in lv.orbit:
                for gi in range(len(lv.gens)):
                    s, _sw = self._schreier_gen(lv, p, gi)
                    if s is not None and not self.contains_arr(s):
                        raise AssertionError("stabilizer chain rejects a Schreier generator")
        return True


class ElementIndex:
    """Canonical enumeration of all group elements.

    Rows of `table` are image vectors sorted lexicographically, so position 0
    is always the identity.  `rank` inverts the table.  A breadth-first word
    over the group generators is kept per element for cheap homomorphic
    evaluation at arbitrary elements.
    """

    def __init__(self, table, rank, parent, parent_gen, bfs_order):
        self.table = table
        self.rank = rank
        self._parent = parent
        self._parent_gen = parent_gen
        self.bfs_order = bfs_order  # sorted positions in breadth-first discovery order
        self._orders = None

    def __len__(self):
        return len(self.table)

    def perm(self, i: int) -> Perm:
        return Perm(int(x) for x in self.table[i])

    def arr(self, i: int) -> np.ndarray:
        return self.table[i]

    def index_of_arr(self, arr) -> int:
        i = self.rank.get(arr.astype(np.int32).tobytes())
        if i is None:
            raise KeyError("element not in group")
        return i

    def index_of(self, p: Perm) -> int:
        return self.index_of_arr(np.array(p.images, dtype=np.int32))

    def word(self, i: int):
        """Signed generator word for element i (identity gives the empty word)."""
        out = []
        while i != 0:
            out.append(int(self._parent_gen[i]))
            i = int(self._parent[i])
        return tuple(out)

    def orders(self) -> np.ndarray:
        """Element orders, computed from cycle lengths (cached)."""
        if self._orders is not None:
            return self._orders
        n, d = self.table.shape
        out = np.empty(n, dtype=np.int64)
        lcm = np.lcm
        for i in range(n):
            row = self.table[i]
            seen = bytearray(d)
            o = 1
            for s in range(d):
                if seen[s]:
                    continue
                length = 0
                p = s
                while not seen[p]:
                    seen[p] = 1
                    p = int(row[p])
                    length += 1
                if length > 1:
                    o = int(lcm(o, length))
            out[i] = o
        self._orders = out
        return out


class PermGroup:
    """A finite permutation group defined by generators, with certified BSGS."""

    def __init__(self, generators, name=None, verify=True):
        gens = list(generators)
        if not gens:
            raise ValueError("generator list must be nonempty (use the identity for the trivial group)")
        degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatch("generators must share a degree")
        self.generators = tuple(gens)
        self.degree = degree
        self.name = name
        self._gen_arrays = [_arr(g) for g in gens]
        self.chain = StabilizerChain(self._gen_arrays, degree)
        if verify:
            self.chain.verify(self._gen_arrays)
        self.order = self.chain.order()
        self._index = None
        self._conj_tables = {}

    # -- basic queries ------------------------------------------------------

    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    def contains(self, p: Perm) -> bool:
        if p.degree != self.degree:
            raise DegreeMismatch(f"degree {p.degree} vs group degree {self.degree}")
        return self.chain.contains_arr(_arr(p))

    __contains__ = contains

    def contains_arr(self, a) -> bool:
        return self.chain.contains_arr(a)

    def membership_word(self, p: Perm):
        """Express a member as a signed word in self.generators, or None."""
        w = self.chain.membership_alphabet_word(_arr(p))
        if w is None:
            return None
        return self.chain.expand_word(w)

    def evaluate_word(self, word) -> Perm:
        arr = eval_word_arrays(self._gen_arrays, word, self.degree)
        return Perm(int(x) for x in arr)

    def base(self):
        return self.chain.base()

    def is_trivial(self) -> bool:
        return self.order == 1

    def gen_arrays(self):
        return self._gen_arrays

    def __repr__(self):
        label = self.name or f"degree {self.degree}"
        return f"PermGroup({label}, order {self.order})"

    # -- element enumeration -------------------------------------------------

    def elements(self, cap: int = ELEMENT_CAP_DEFAULT) -> ElementIndex:
        """Canonical element table; raises CapExceeded when the group is too big."""
        if self._index is not None:
            return self._index
        if self.order > cap:
            raise CapExceeded("element enumeration", needed=self.order, cap=cap)
        degree = self.degree
        idarr = np.arange(degree, dtype=np.int32)
        seen = {idarr.tobytes(): 0}
        rows = [idarr]
        parent_raw = [0]
        parent_gen_raw = [0]
        head = 0
        gens = [(i + 1, a) for i, a in enumerate(self._gen_arrays)]
        gens += [(-(i + 1), _inv_arr(a)) for i, a in enumerate(self._gen_arrays)]
        while head < len(rows):
            cur = rows[head]
            for signed, g in gens:
                nxt = g[cur]
                key = nxt.tobytes()
                if key not in seen:
                    seen[key] = len(rows)
                    rows.append(nxt)
                    parent_raw.append(head)
                    parent_gen_raw.append(signed)
            head += 1
        assert len(rows) == self.order, "closure does not match the certified order"
        table = np.vstack(rows)
        sort_idx = np.lexsort(table.T[::-1])
        table = table[sort_idx]
        pos_of_raw = np.empty(len(rows), dtype=np.int64)
        pos_of_raw[sort_idx] = np.arange(len(rows))
        parent = np.empty(len(rows), dtype=np.int64)
        parent_gen = np.empty(len(rows), dtype=np.int64)
        for raw in range(len(rows)):
            pos = pos_of_raw[raw]
            parent[pos] = pos_of_raw[parent_raw[raw]]
            parent_gen[pos] = parent_gen_raw[raw]
        rank = {table[i].tobytes(): i for i in range(len(rows))}
        self._index = ElementIndex(table, rank, parent, parent_gen, pos_of_raw)
        return self._index

    def element_word(self, p: Perm, cap: int = ELEMENT_CAP_DEFAULT):
        """A short word for p in the generators (breadth-first when indexed)."""
        if self.order <= cap:
            idx = self.elements(cap)
            return idx.word(idx.index_of(p))
        word = self.membership_word(p)
        if word is None:
            raise KeyError("element not in group")
        return word

    # -- conjugation index tables ---------------------------------------------

    def conjugation_table(self, signed_gen: int, cap: int = ELEMENT_CAP_DEFAULT):
        """Index table of x -> g^-1 x g for a signed generator index."""
        if signed_gen in self._conj_tables:
            return self._conj_tables[signed_gen]
        idx = self.elements(cap)
        a = self._gen_arrays[signed_gen - 1] if signed_gen > 0 else _inv_arr(self._gen_arrays[-signed_gen - 1])
        ainv = _inv_arr(a)
        n = len(idx)
        out = np.empty(n, dtype=np.int64)
        rank = idx.rank
        table = idx.table
        for i in range(n):
            out[i] = rank[ainv[table[i]][a].tobytes()]
        self._conj_tables[signed_gen] = out
        return out


def build_group(gens, name=None) -> PermGroup:
    """Build a PermGroup from a nonempty list of Perm of common degree."""
    return PermGroup(gens, name=name)


def from_cycles(cycle_strings, degree, name=None) -> PermGroup:
    from .perm import parse_cycles

    return PermGroup([parse_cycles(s, degree) for s in cycle_strings], name=name)


def direct_product(a: PermGroup, b: PermGroup, name=None) -> PermGroup:
    """The product group acting on the disjoint union of the two domains."""
    da, db = a.degree, b.degree
    gens = []
    for g in a.generators:
        gens.append(g.extended(da + db))
    shift = tuple(range(da))
    for g in b.generators:
        gens.append(Perm(shift + tuple(x + da for x in g.images)))
    prod = PermGroup(gens, name=name or (f"{a.name}x{b.name}" if a.name and b.name else None))
    assert prod.order == a.order * b.order
    return prod
