"""The localization checker: is precomposition with phi a bijection
Hom(G,G) -> Hom(H,G)?

The check is exhaustive: both hom sets are enumerated, the restriction map
is computed endomorphism by endomorphism, and failures come with concrete,
re-verifiable witnesses.  Resource-limit failures yield the distinct
verdict "indeterminate", never a guessed answer.  Orbit diagnostics count
the Aut(G)-orbits on Mono(H,G) under post-composition, and the conjugacy
classes of image subgroups (both as G-classes and fused under Aut(G); the
published class counts of this kind are stated up to the full automorphism
group, so the fused number is the headline `subgroup_class_count`).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .analysis import SUBGROUP_ELEMENTS_CAP
from .automorphisms import hom_element_table
from .config import RunConfig, DEFAULT
from .errors import CapExceeded
from .homsearch import GroupHom, HomSet, enumerate_homs
from .permgroup import PermGroup, _inv_arr

VERDICT_TRUE = "true"
VERDICT_FALSE = "false"
VERDICT_INDETERMINATE = "indeterminate"


@dataclass
class LocalizationReport:
    phi: GroupHom | None
    hom_gg_count: int | None = None
    hom_hg_count: int | None = None
    injective: bool | None = None
    surjective: bool | None = None
    injectivity_witness: tuple | None = None
    surjectivity_witness: tuple | None = None
    verdict: str = VERDICT_INDETERMINATE
    mono_count: int | None = None
    mono_orbit_count: int | None = None
    subgroup_class_count: int | None = None
    subgroup_class_count_inner: int | None = None
    caps_hit: list = field(default_factory=list)
    runtime_ms: int = 0

    def to_dict(self):
        """Stable machine-readable form."""
        witnesses = {}
        if self.injectivity_witness is not None:
            a, b = self.injectivity_witness
            witnesses["equal_after_restriction"] = [list(a), list(b)]
        if self.surjectivity_witness is not None:
            witnesses["unextendable_hom"] = list(self.surjectivity_witness)
        return {
            "verdict": self.verdict,
            "hom_counts": {"gg": self.hom_gg_count, "hg": self.hom_hg_count},
            "witnesses": witnesses,
            "orbits": {
                "mono_count": self.mono_count,
                "mono_orbit_count": self.mono_orbit_count,
                "subgroup_class_count": self.subgroup_class_count,
                "subgroup_class_count_inner": self.subgroup_class_count_inner,
            },
            "runtime_ms": self.runtime_ms,
            "caps_hit": list(self.caps_hit),
        }

    def summary(self):
        lines = [f"verdict: {self.verdict}"]
        lines.append(f"|Hom(G,G)| = {self.hom_gg_count}, |Hom(H,G)| = {self.hom_hg_count}")
        if self.injective is not None:
            lines.append(f"restriction injective: {self.injective}")
        if self.surjective is not None:
            lines.append(f"restriction surjective: {self.surjective}")
        if self.mono_orbit_count is not None:
            lines.append(
                f"Mono(H,G): {self.mono_count} maps, {self.mono_orbit_count} orbit(s) "
                f"under Aut(G) post-composition"
            )
        if self.subgroup_class_count is not None:
            lines.append(
                f"image subgroups: {self.subgroup_class_count} class(es) up to Aut(G), "
                f"{self.subgroup_class_count_inner} up to inner conjugation"
            )
        if self.caps_hit:
            lines.append(f"caps hit: {', '.join(self.caps_hit)}")
        return "\n".join(lines)


def _aut_coset_tables(G: PermGroup, homs_gg: HomSet, config: RunConfig):
    """Full element tables for a generating set of Aut(G), from the mono rows.

    Inner generators come from conjugation tables; outer coset
    representatives are discovered by sweeping conjugation over known
    pairs.  Returns (generator_tables, outer_rep_tables, inner_pair_count).
    """
    idx = G.elements(config.element_cap)
    rank = idx.rank
    table = idx.table
    n = len(idx)
    gen_idx = [idx.index_of(g) for g in G.generators]
    mono_rows = homs_gg.pairs[homs_gg.mono_mask]
    mono_total = len(mono_rows)

    def sweep(base_pair):
        out = {}
        for g in range(n):
            garr = table[g]
            ginv = _inv_arr(garr)
            key = tuple(int(rank[ginv[table[x]][garr].tobytes()]) for x in base_pair)
            out.setdefault(key, g)
        return out

    known = sweep(tuple(gen_idx))
    inner_count = len(known)
    tables = [G.conjugation_table(i + 1, config.element_cap) for i in range(len(G.generators))]
    outer_tables = []
    for row in mono_rows:
        if len(known) >= mono_total:
            break
        pair = tuple(int(x) for x in row)
        if pair in known:
            continue
        t = hom_element_table(G, [table[j] for j in pair], idx, config)
        outer_tables.append(t)
        tables.append(t)
        for key, g in sweep(pair).items():
            known.setdefault(key, g)
    assert len(known) == mono_total, "automorphism coset sweep incomplete"
    return tables, outer_tables, inner_count


def _image_member_set(G, pair, config):
    idx = G.elements(config.element_cap)
    img = PermGroup([idx.perm(int(j)) for j in pair], verify=False)
    if img.order > SUBGROUP_ELEMENTS_CAP:
        raise CapExceeded("image subgroup element set", needed=img.order,
                          cap=SUBGROUP_ELEMENTS_CAP)
    sub = img.elements(config.element_cap)
    return np.sort(np.fromiter(
        (idx.rank[sub.table[i].tobytes()] for i in range(len(sub))),
        dtype=np.int64, count=len(sub)))


def _conjugation_orbit_of_set(G, members, config):
    """All member sets in the G-conjugation orbit of the given subgroup set."""
    conj = [G.conjugation_table(i + 1, config.element_cap) for i in range(len(G.generators))]
    seen = {members.tobytes()}
    queue = [members]
    while queue:
        cur = queue.pop()
        for t in conj:
            nxt = np.sort(t[cur])
            k = nxt.tobytes()
            if k not in seen:
                seen.add(k)
                queue.append(nxt)
    return seen


def mono_orbit_analysis(G: PermGroup, homs_hg: HomSet, homs_gg: HomSet,
                        config: RunConfig = DEFAULT):
    """Orbits of Aut(G) on Mono(H, G) and classes of image subgroups.

    Returns (mono_orbit_count, fused_class_count, inner_class_count).
    """
    mono_rows = homs_hg.pairs[homs_hg.mono_mask]
    if not len(mono_rows):
        return 0, 0, 0
    tables, outer_tables, _inner = _aut_coset_tables(G, homs_gg, config)
    todo = {tuple(int(x) for x in row) for row in mono_rows}
    orbit_reps = []
    while todo:
        start = min(todo)
        orbit_reps.append(start)
        stack = [start]
        todo.discard(start)
        while stack:
            cur = stack.pop()
            for t in tables:
                nxt = tuple(int(t[j]) for j in cur)
                if nxt in todo:
                    todo.discard(nxt)
                    stack.append(nxt)
    # the G-classes of image subgroups, closed under the outer automorphisms
    # (one Aut-orbit of monos can meet several G-classes of subgroups)
    class_of_set = {}  # member-set key -> class canonical key
    class_orbits = {}  # canonical key -> orbit key set
    fused = {}

    def find(k):
        while fused[k] != k:
            fused[k] = fused[fused[k]]
            k = fused[k]
        return k

    def register(members) -> bytes:
        key = members.tobytes()
        if key in class_of_set:
            return class_of_set[key]
        orbit = _conjugation_orbit_of_set(G, members, config)
        canon = min(orbit)
        class_orbits[canon] = orbit
        fused[canon] = canon
        for k in orbit:
            class_of_set[k] = canon
        return canon

    work = []
    for pair in orbit_reps:
        work.append(register(_image_member_set(G, pair, config)))
    while work:
        canon = work.pop()
        members = np.frombuffer(canon, dtype=np.int64)
        for t in outer_tables:
            image = np.sort(t[members])
            key = image.tobytes()
            target = class_of_set.get(key)
            if target is None:
                target = register(image)
                work.append(target)
            ra, rb = find(canon), find(target)
            if ra != rb:
                fused[ra] = rb
    inner_count = len(class_orbits)
    fused_count = len({find(k) for k in class_orbits})
    return len(orbit_reps), fused_count, inner_count


def restriction_map(phi: GroupHom, homs_gg: HomSet, config: RunConfig = DEFAULT):
    """Pairs of (psi o phi) generator images, one row per endomorphism psi of G."""
    G = phi.target
    idx = G.elements(config.element_cap)
    x_words = [idx.word(idx.index_of(p)) for p in phi.images]
    ttable = idx.table
    rank = idx.rank
    n = len(homs_gg.pairs)
    k = len(phi.images)
    out = np.empty((n, k), dtype=np.int64)
    degree = G.degree
    for i in range(n):
        row = homs_gg.pairs[i]
        arrays = [ttable[int(j)] for j in row]
        inv_cache = {}
        for wi, w in enumerate(x_words):
            img = np.arange(degree, dtype=np.int32)
            for letter in reversed(w):
                if letter > 0:
                    g = arrays[letter - 1]
                else:
                    g = inv_cache.get(letter)
                    if g is None:
                        g = inv_cache[letter] = _inv_arr(arrays[-letter - 1])
                img = g[img]
            out[i, wi] = rank[img.tobytes()]
    return out


def check_localization(
    phi: GroupHom,
    pres_source=None,
    pres_target=None,
    config: RunConfig = DEFAULT,
    homs_gg: HomSet | None = None,
    homs_hg: HomSet | None = None,
    with_orbits: bool = True,
) -> LocalizationReport:
    """Full diagnostic run of the bijection check for phi: H -> G."""
    t0 = time.time()
    H, G = phi.source, phi.target
    report = LocalizationReport(phi=phi)
    try:
        if homs_gg is None:
            homs_gg = enumerate_homs(G, G, pres_target, config=config)
        if homs_hg is None:
            homs_hg = enumerate_homs(H, G, pres_source, config=config)
    except CapExceeded as e:
        report.caps_hit.append(str(e))
        report.runtime_ms = int((time.time() - t0) * 1000)
        return report

    report.hom_gg_count = homs_gg.count
    report.hom_hg_count = homs_hg.count
    report.mono_count = homs_hg.mono_count

    rho = restriction_map(phi, homs_gg, config)
    seen = {}
    injective = True
    for i in range(len(rho)):
        key = rho[i].tobytes()
        if key in seen and injective:
            injective = False
            report.injectivity_witness = (
                tuple(int(x) for x in homs_gg.pairs[seen[key]]),
                tuple(int(x) for x in homs_gg.pairs[i]),
            )
        seen.setdefault(key, i)
    report.injective = injective

    surjective = True
    for i in range(len(homs_hg.pairs)):
        if homs_hg.pairs[i].tobytes() not in seen:
            surjective = False
            report.surjectivity_witness = tuple(int(x) for x in homs_hg.pairs[i])
            break
    report.surjective = surjective
    report.verdict = VERDICT_TRUE if (injective and surjective) else VERDICT_FALSE

    if with_orbits:
        try:
            orbits, fused, inner = mono_orbit_analysis(G, homs_hg, homs_gg, config)
            report.mono_orbit_count = orbits
            report.subgroup_class_count = fused
            report.subgroup_class_count_inner = inner
        except CapExceeded as e:
            report.caps_hit.append(str(e))

    report.runtime_ms = int((time.time() - t0) * 1000)
    if report.verdict == VERDICT_TRUE and report.injective and report.surjective:
        assert report.hom_gg_count == report.hom_hg_count
    return report
