"""Central extensions: verification, hom audits, and lifting through covers.

A CentralExtension packages a surjection p: total -> quotient with central
kernel, plus the trusted multiplier invariants of the quotient from the
catalog.  Universality is verified (perfect total, central kernel of the
catalog multiplier's order), never derived from multiplier theory.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .analysis import Subgroup, center, derived_subgroup
from .automorphisms import hom_element_table
from .config import RunConfig, DEFAULT
from .errors import MissingCatalogDatum, NoLift, NonUniqueLift
from .homsearch import GroupHom, HomSet, enumerate_homs
from .permgroup import PermGroup


def abelian_order(invariants) -> int:
    out = 1
    for d in invariants:
        out *= int(d)
    return out


@dataclass
class CentralExtension:
    total: PermGroup
    quotient: PermGroup
    proj: GroupHom
    kernel: Subgroup = field(init=False)
    mult_catalog: tuple = ()
    config: RunConfig = DEFAULT

    def __post_init__(self):
        cfg = self.config
        if not self.proj.graph_verify():
            raise ValueError("projection images do not define a homomorphism")
        if self.proj.image_group().order != self.quotient.order:
            raise ValueError("projection is not surjective")
        idx_t = self.total.elements(cfg.element_cap)
        idx_q = self.quotient.elements(cfg.element_cap)
        self.proj_table = hom_element_table(
            self.total, [np.array(p.images, dtype=np.int32) for p in self.proj.images], idx_q, cfg
        )
        kernel_idx = np.nonzero(self.proj_table == 0)[0]
        gens = tuple(idx_t.perm(int(i)) for i in kernel_idx if i != 0)
        self.kernel = Subgroup(self.total, gens or (self.total.identity(),))
        if self.kernel.order * self.quotient.order != self.total.order:
            raise ValueError("kernel and quotient orders are inconsistent")
        zen = center(self.total, cfg.element_cap)
        for g in gens:
            if not zen.contains(g):
                raise ValueError("kernel is not central")

    @classmethod
    def identity_cover(cls, G: PermGroup, mult_catalog=(), config: RunConfig = DEFAULT):
        """The trivial extension of G by itself (used for superperfect groups)."""
        proj = GroupHom(G, G, G.generators, "graph_certified")
        return cls(G, G, proj, mult_catalog=mult_catalog, config=config)


def verify_universal_cover(ext: CentralExtension, config: RunConfig = DEFAULT) -> bool:
    """Total group perfect + central kernel of exactly the catalog multiplier's order.

    Together with the trusted multiplier value this certifies universality.
    """
    if ext.mult_catalog is None:
        raise MissingCatalogDatum(f"multiplier of {ext.quotient!r} unknown")
    if derived_subgroup(ext.total).order != ext.total.order:
        return False
    return ext.kernel.order == abelian_order(ext.mult_catalog)


def center_to_center_audit(Ht: CentralExtension, Gt: CentralExtension,
                           homs_tt: HomSet) -> tuple[bool, list[int]]:
    """Does every hom Ht.total -> Gt.total map the kernel into the kernel?

    Returns (verdict, rows of violating homs).  `homs_tt` must be the full
    hom set between the totals.
    """
    idx_s = Ht.total.elements()
    idx_t = Gt.total.elements()
    kernel_src = [idx_s.index_of(g) for g in Ht.kernel.gens if not g.is_identity()]
    if not kernel_src:
        return True, []
    kernel_dst = set(int(i) for i in np.nonzero(Gt.proj_table == 0)[0])
    # evaluate each hom at the kernel generators via their generator words
    words = [idx_s.word(i) for i in kernel_src]
    violators = []
    ttable = idx_t.table
    rank = idx_t.rank
    from .permgroup import eval_word_arrays, _inv_arr

    for row_i in range(len(homs_tt.pairs)):
        arrays = [ttable[int(j)] for j in homs_tt.pairs[row_i]]
        ok = True
        for w in words:
            out = np.arange(Gt.total.degree, dtype=np.int32)
            for letter in reversed(w):
                g = arrays[letter - 1] if letter > 0 else _inv_arr(arrays[-letter - 1])
                out = g[out]
            if int(rank[out.tobytes()]) not in kernel_dst:
                ok = False
                break
        if not ok:
            violators.append(row_i)
    return not violators, violators


def induced_cover_map(alpha: GroupHom, Ht: CentralExtension, Gt: CentralExtension,
                      homs_tt: HomSet) -> GroupHom:
    """The unique beta: Ht.total -> Gt.total with Gt.proj o beta = alpha o Ht.proj.

    Uniqueness is asserted by exhaustive constrained enumeration over the
    full hom set; NoLift / NonUniqueLift abort with diagnostics.
    """
    idx_q = Gt.quotient.elements()
    # target pair: alpha(Ht.proj(gen)) as quotient element indices
    target = np.array(
        [idx_q.index_of(alpha.apply(p)) for p in Ht.proj.images], dtype=np.int64
    )
    projected = Gt.proj_table[homs_tt.pairs]
    hits = np.nonzero(np.all(projected == target, axis=1))[0]
    if len(hits) == 0:
        raise NoLift(f"no compatible lift of {alpha!r} through the covers")
    if len(hits) > 1:
        raise NonUniqueLift(f"{len(hits)} compatible lifts of {alpha!r}")
    return homs_tt.hom(int(hits[0]))


def contains_central_extension_of(G: PermGroup, H: PermGroup, Ht: CentralExtension,
                                  presentation_total=None,
                                  config: RunConfig = DEFAULT):
    """Does G contain a nontrivial central extension of H as a subgroup?

    For trivial multiplier the answer is vacuously no.  For a multiplier of
    prime order the only candidate is the full cover, which is searched for
    by mono enumeration.  Larger multipliers would need catalog-supplied
    quotient covers.
    """
    mult = Ht.mult_catalog
    m = abelian_order(mult)
    if m == 1:
        return False, None
    if len(mult) != 1 or not _is_prime(int(mult[0])):
        raise MissingCatalogDatum(
            "non-prime multiplier: quotient cover representations are not in the catalog"
        )
    monos = enumerate_homs(Ht.total, G, presentation_total, config=config, monos_only=True)
    hits = monos.monos()
    if len(hits):
        return True, monos.hom(int(hits[0]))
    return False, None


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True
