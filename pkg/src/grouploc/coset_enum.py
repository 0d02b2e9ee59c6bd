"""Coset enumeration (deterministic HLT strategy with lookahead).

Enumerates the cosets of a finitely generated subgroup inside a finitely
presented group.  Over the trivial subgroup the live-coset count is the
order of the presented group.  Rows are numbered in definition order, the
scan strategy is relator-first with row filling, and coincidences are
processed immediately; everything is deterministic, so repeated runs give
identical tables.

The row cap counts every row ever defined, dead ones included.  When the
cap would be exceeded a lookahead pass (scanning without new definitions)
is attempted once to collapse cosets; if that frees nothing the run stops
with CapExceeded.
"""

from __future__ import annotations

from array import array

from .config import COSET_CAP_DEFAULT
from .errors import CapExceeded
from .words import Word, cyclic_reduce

_WATERMARK_STEP = 250_000


class CosetTable:
    """Flat coset table over columns (g1, g1^-1, g2, g2^-1, ...)."""

    def __init__(self, ngens: int, max_rows: int):
        self.ngens = ngens
        self.ncols = 2 * ngens
        self.max_rows = max_rows
        self.table = array("i", [-1] * self.ncols)
        self.p = array("i", [0])
        self.nrows = 1
        self.dead = 0

    def rep(self, a: int) -> int:
        p = self.p
        r = a
        while p[r] != r:
            r = p[r]
        while p[a] != r:
            p[a], a = r, p[a]
        return r

    def define(self, a: int, col: int) -> int:
        if self.nrows >= self.max_rows:
            raise _NeedLookahead
        b = self.nrows
        self.nrows += 1
        self.table.extend([-1] * self.ncols)
        self.p.append(b)
        t = self.table
        nc = self.ncols
        t[a * nc + col] = b
        t[b * nc + (col ^ 1)] = a
        return b

    def live_count(self) -> int:
        return self.nrows - self.dead

    def live_rows(self):
        p = self.p
        return [i for i in range(self.nrows) if p[i] == i]


class _NeedLookahead(Exception):
    pass


def _word_to_cols(letters):
    return tuple((x - 1) * 2 if x > 0 else (-x - 1) * 2 + 1 for x in letters)


class _Enumerator:
    def __init__(self, ngens, relator_words, subgroup_words, max_rows):
        self.ct = CosetTable(ngens, max_rows)
        rels = []
        for w in relator_words:
            r = cyclic_reduce(w)
            if r:
                rels.append(_word_to_cols(r))
        self.relators = rels
        self.subgroup_words = [_word_to_cols(w) for w in subgroup_words if w]

    # -- coincidence handling ------------------------------------------------

    def _merge(self, a, b, queue):
        ct = self.ct
        a, b = ct.rep(a), ct.rep(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        ct.p[b] = a
        ct.dead += 1
        queue.append(b)

    def coincidence(self, a, b):
        ct = self.ct
        t = ct.table
        nc = ct.ncols
        queue: list[int] = []
        self._merge(a, b, queue)
        qi = 0
        while qi < len(queue):
            gamma = queue[qi]
            qi += 1
            base = gamma * nc
            for col in range(nc):
                delta = t[base + col]
                if delta < 0:
                    continue
                t[delta * nc + (col ^ 1)] = -1
                mu = ct.rep(gamma)
                nu = ct.rep(delta)
                entry_mu = t[mu * nc + col]
                if entry_mu >= 0:
                    self._merge(nu, entry_mu, queue)
                else:
                    entry_nu = t[nu * nc + (col ^ 1)]
                    if entry_nu >= 0:
                        self._merge(mu, entry_nu, queue)
                    else:
                        t[mu * nc + col] = nu
                        t[nu * nc + (col ^ 1)] = mu

    # -- scanning --------------------------------------------------------------

    def scan_and_fill(self, alpha, word):
        ct = self.ct
        t = ct.table
        nc = ct.ncols
        i, j = 0, len(word) - 1
        f = b = alpha
        while True:
            while i <= j:
                nxt = t[f * nc + word[i]]
                if nxt < 0:
                    break
                f = nxt
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i:
                prv = t[b * nc + (word[j] ^ 1)]
                if prv < 0:
                    break
                b = prv
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:
                t[f * nc + word[i]] = b
                t[b * nc + (word[i] ^ 1)] = f
                return
            f = ct.define(f, word[i])
            i += 1

    def scan_only(self, alpha, word):
        """Scan without defining; used by the lookahead pass."""
        ct = self.ct
        t = ct.table
        nc = ct.ncols
        i, j = 0, len(word) - 1
        f = b = alpha
        while i <= j:
            nxt = t[f * nc + word[i]]
            if nxt < 0:
                break
            f = nxt
            i += 1
        if i > j:
            if f != b:
                self.coincidence(f, b)
            return
        while j >= i:
            prv = t[b * nc + (word[j] ^ 1)]
            if prv < 0:
                break
            b = prv
            j -= 1
        if j < i:
            self.coincidence(f, b)
        elif j == i:
            t[f * nc + word[i]] = b
            t[b * nc + (word[i] ^ 1)] = f

    def lookahead(self):
        ct = self.ct
        before = ct.dead
        for alpha in range(ct.nrows):
            if ct.p[alpha] != alpha:
                continue
            for w in self.relators:
                self.scan_only(alpha, w)
                if ct.p[alpha] != alpha:
                    break
        return ct.dead > before

    def run(self):
        ct = self.ct
        step = getattr(self, "lookahead_step", _WATERMARK_STEP)
        for w in self.subgroup_words:
            self.scan_and_fill(0, w)
        alpha = 0
        watermark = step
        while alpha < ct.nrows:
            if ct.p[alpha] != alpha:
                alpha += 1
                continue
            try:
                for w in self.relators:
                    self.scan_and_fill(alpha, w)
                    if ct.p[alpha] != alpha:
                        break
                if ct.p[alpha] == alpha:
                    base = alpha * ct.ncols
                    for col in range(ct.ncols):
                        if ct.table[base + col] < 0:
                            ct.define(alpha, col)
            except _NeedLookahead:
                if not self.lookahead():
                    raise CapExceeded("coset table rows", needed=ct.nrows + 1, cap=ct.max_rows)
                continue  # retry the same row after collapses
            if ct.nrows > watermark:
                watermark = ct.nrows + step
                self.lookahead()
            alpha += 1
        return ct


def enumerate_cosets(ngens: int, relators, subgroup=(), max_rows: int = COSET_CAP_DEFAULT,
                     lookahead_step: int = _WATERMARK_STEP):
    """Run the enumeration; returns (index, generator images on the cosets).

    `relators` and `subgroup` are iterables of Word or letter tuples.  The
    returned images give, per generator, the permutation induced on the
    live cosets (renumbered 0..index-1 in row order); they define the coset
    action of the presented group.
    """
    rel_words = [w.letters if isinstance(w, Word) else tuple(w) for w in relators]
    sub_words = [w.letters if isinstance(w, Word) else tuple(w) for w in subgroup]
    enum = _Enumerator(ngens, rel_words, sub_words, max_rows)
    enum.lookahead_step = lookahead_step
    ct = enum.run()
    live = ct.live_rows()
    renum = {row: i for i, row in enumerate(live)}
    nc = ct.ncols
    images = []
    for g in range(ngens):
        col = 2 * g
        perm = [renum[ct.rep(ct.table[row * nc + col])] for row in live]
        images.append(tuple(perm))
    return len(live), images
