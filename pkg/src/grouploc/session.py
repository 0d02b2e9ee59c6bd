"""A session ties the catalog to memoized computations.

Everything expensive (element indexes, hom sets, automorphism
realizations, certified presentations) is computed once per process and
reused across checks.  All results are pure values, so sharing is safe.
"""

from __future__ import annotations

import numpy as np

from .analysis import Subgroup, is_maximal, is_simple
from .automorphisms import AutRealization, automorphism_group
from .autlevel import AutContainment, aut_level_check, extend_to_aut
from .catalog import Catalog, load_catalog
from .config import RunConfig, DEFAULT
from .covers import (CentralExtension, center_to_center_audit,
                     contains_central_extension_of, induced_cover_map,
                     verify_universal_cover)
from .errors import NoEmbedding
from .homsearch import GroupHom, HomSet, enumerate_homs
from .localization import LocalizationReport, check_localization
from .permgroup import PermGroup


class Session:
    def __init__(self, catalog: Catalog | None = None, config: RunConfig = DEFAULT):
        self.config = config
        self.catalog = catalog or load_catalog(config=config)
        self._homsets = {}
        self._auts = {}
        self._containments = {}

    # -- basic lookups -------------------------------------------------------

    def group(self, name: str) -> PermGroup:
        return self.catalog.group(name)

    def presentation(self, name: str):
        return self.catalog.entry(name).certified_presentation(self.config)

    # -- memoized hom machinery ------------------------------------------------

    def homset(self, src: str, dst: str, monos_only: bool = False) -> HomSet:
        key = (self.catalog.entry(src).name, self.catalog.entry(dst).name, monos_only)
        if key not in self._homsets:
            self._homsets[key] = enumerate_homs(
                self.group(src), self.group(dst),
                self.presentation(src), config=self.config, monos_only=monos_only,
            )
        return self._homsets[key]

    def aut(self, name: str) -> AutRealization:
        key = self.catalog.entry(name).name
        if key not in self._auts:
            self._auts[key] = automorphism_group(
                self.group(name), self.presentation(name), self.config
            )
        return self._auts[key]

    def containment(self, name: str) -> AutContainment:
        e = self.catalog.entry(name)
        if e.aut_container is None:
            raise NoEmbedding(f"{e.name} has no automorphism container in the catalog")
        key = e.name
        if key not in self._containments:
            self._containments[key] = AutContainment(
                self.group(e.aut_container), e.group(), self.aut(name)
            )
        return self._containments[key]

    # -- embeddings -----------------------------------------------------------

    def embedding(self, src: str, dst: str, images=None) -> GroupHom:
        """The lexicographically first mono src -> dst, or one built from
        explicit generator images."""
        H, G = self.group(src), self.group(dst)
        if images is not None:
            phi = GroupHom(H, G, images, "graph_certified")
            if not phi.graph_verify():
                raise NoEmbedding("the supplied images do not define a homomorphism")
            return phi
        monos = self.homset(src, dst, monos_only=True)
        rows = monos.monos()
        if not len(rows):
            raise NoEmbedding(f"no injective homomorphism {src} -> {dst}")
        return monos.hom(int(rows[0]))

    # -- checks ----------------------------------------------------------------

    def check_localization(self, src: str, dst: str, images=None) -> LocalizationReport:
        phi = self.embedding(src, dst, images)
        return check_localization(
            phi,
            pres_source=self.presentation(src),
            pres_target=self.presentation(dst),
            config=self.config,
            homs_gg=self.homset(dst, dst),
            homs_hg=self.homset(src, dst),
        )

    def cover(self, total: str) -> CentralExtension:
        return self.catalog.central_extension(total, self.config)

    def cover_for_quotient(self, name: str) -> CentralExtension:
        """The catalog cover of a group: its linked cover, or the identity
        extension when the multiplier is trivial."""
        e = self.catalog.entry(name)
        cover_entry = self.catalog.cover_entry_for(e.name)
        if cover_entry is not None:
            return self.cover(cover_entry.name)
        if e.mult is not None and len(e.mult) == 0:
            return self.catalog.identity_extension(e.name, self.config)
        raise NoEmbedding(f"no cover of {name} in the catalog and its multiplier is nontrivial")

    def check_cover(self, total: str):
        """verify_universal_cover + localization check of the projection."""
        ext = self.cover(total)
        universal = verify_universal_cover(ext, self.config)
        loc = check_localization(
            ext.proj,
            pres_source=self.presentation(total),
            pres_target=self.presentation(ext.quotient.name),
            config=self.config,
            homs_gg=self.homset(ext.quotient.name, ext.quotient.name),
        )
        return ext, universal, loc

    def check_aut_level(self, src: str, dst: str):
        i_rep = self.check_localization(src, dst)
        if i_rep.verdict != "true":
            raise NoEmbedding(f"{src} -> {dst} is not a verified localization (verdict {i_rep.verdict})")
        phi = self.embedding(src, dst)
        e_src, e_dst = self.catalog.entry(src), self.catalog.entry(dst)
        return i_rep, aut_level_check(
            phi,
            self.aut(src), self.aut(dst),
            self.containment(src), self.containment(dst),
            self.presentation(e_src.aut_container),
            self.presentation(e_dst.aut_container),
            config=self.config,
        )

    def maximal_image(self, phi: GroupHom) -> bool:
        sub = Subgroup(phi.target, [p for p in phi.images if not p.is_identity()] or
                       (phi.target.identity(),))
        return is_maximal(sub, self.config)

    def simple(self, name: str) -> bool:
        return is_simple(self.group(name), self.config.element_cap)

    def total_name_of(self, ext: CentralExtension) -> str:
        return ext.total.name

    def homset_between_totals(self, Ht: CentralExtension, Gt: CentralExtension) -> HomSet:
        return self.homset(Ht.total.name, Gt.total.name)

    def check_cover_equivalence(self, src: str, dst: str) -> "EquivalenceReport":
        """Two-sided check: i: src -> dst is a localization iff the induced
        map between the (universal) covers is.  Agreement is asserted only
        when the containment hypothesis passes and both covers verify as
        universal; disagreement then is a hard failure."""
        from .errors import TheoremViolation

        Ht = self.cover_for_quotient(src)
        Gt = self.cover_for_quotient(dst)
        G = self.group(dst)
        contains, witness = contains_central_extension_of(
            G, self.group(src), Ht, self.presentation(Ht.total.name), self.config
        )
        i = self.embedding(src, dst)
        left = check_localization(
            i, pres_source=self.presentation(src), pres_target=self.presentation(dst),
            config=self.config, homs_gg=self.homset(dst, dst), homs_hg=self.homset(src, dst),
        )
        homs_tt = self.homset_between_totals(Ht, Gt)
        audit_ok, violators = center_to_center_audit(Ht, Gt, homs_tt)
        j = induced_cover_map(i, Ht, Gt, homs_tt) if audit_ok else None
        right = None
        if j is not None:
            right = check_localization(
                j,
                pres_source=self.presentation(Ht.total.name),
                pres_target=self.presentation(Gt.total.name),
                config=self.config,
                homs_gg=self.homset(Gt.total.name, Gt.total.name),
                homs_hg=homs_tt,
            )
        both_universal = verify_universal_cover(Ht, self.config) and verify_universal_cover(Gt, self.config)
        hypothesis_ok = not contains
        asserted = hypothesis_ok and both_universal and j is not None
        agree = None
        if left.verdict != "indeterminate" and right is not None and right.verdict != "indeterminate":
            agree = left.verdict == right.verdict
        if asserted and agree is False:
            raise TheoremViolation(
                f"cover equivalence violated for {src} -> {dst}: "
                f"base verdict {left.verdict}, cover verdict {right.verdict}"
            )
        return EquivalenceReport(src, dst, hypothesis_ok, both_universal,
                                 audit_ok, left, right, agree, asserted)


class EquivalenceReport:
    def __init__(self, src, dst, hypothesis_ok, both_universal, audit_ok,
                 left, right, agree, asserted):
        self.src = src
        self.dst = dst
        self.hypothesis_ok = hypothesis_ok
        self.both_universal = both_universal
        self.audit_ok = audit_ok
        self.left = left
        self.right = right
        self.agree = agree
        self.asserted = asserted

    def to_dict(self):
        return {
            "pair": [self.src, self.dst],
            "hypothesis_holds": self.hypothesis_ok,
            "covers_universal": self.both_universal,
            "center_audit": self.audit_ok,
            "base_verdict": self.left.verdict,
            "cover_verdict": self.right.verdict if self.right else None,
            "verdicts_agree": self.agree,
            "agreement_asserted": self.asserted,
        }
