"""The instance table behind the `report` command.

Each row is a pure computation on a session with a pinned expected
outcome; rows are evaluated (possibly across workers) and merged by row
id, and the comparable section of the rendered document is byte-stable
across runs and worker counts.  Runtimes are segregated into a separate,
non-compared section.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass

from .config import RunConfig
from .errors import CapExceeded, GrouplocError
from .localization import VERDICT_TRUE, VERDICT_FALSE
from .session import Session

REPORT_SCHEMA = 1

PASS, FAIL, INDET, SKIP, ERROR = "PASS", "FAIL", "INDET", "SKIP", "ERROR"


@dataclass
class Row:
    id: str
    tier: str
    description: str
    expected: str
    # fn(session) -> (actual: str, details: dict)
    fn: object

    def run(self, session: Session):
        t0 = time.time()
        try:
            actual, details = self.fn(session)
            status = PASS if actual == self.expected else FAIL
        except CapExceeded as exc:
            actual, details, status = "indeterminate", {"cap": str(exc)}, INDET
        except GrouplocError as exc:
            actual, details, status = f"error: {exc}", {}, ERROR
        ms = int((time.time() - t0) * 1000)
        return RowResult(self.id, self.tier, self.description, self.expected,
                         actual, status, details, ms)


@dataclass
class RowResult:
    id: str
    tier: str
    description: str
    expected: str
    actual: str
    status: str
    details: dict
    runtime_ms: int


def _loc_row(src, dst, expected_verdict, extra=None):
    def fn(s: Session):
        rep = s.check_localization(src, dst)
        details = rep.to_dict()
        actual = rep.verdict
        if extra == "classes2":
            actual = f"{rep.verdict}/classes={rep.subgroup_class_count}"
        return actual, details
    return fn


def _cover_row(total):
    def fn(s: Session):
        _ext, universal, loc = s.check_cover(total)
        return f"universal={str(universal).lower()}/loc={loc.verdict}", loc.to_dict()
    return fn


def _aut_order_row(total):
    def fn(s: Session):
        ext = s.cover(total)
        quot = ext.quotient.name
        aut_q = s.aut(quot)
        homs_tt = s.homset(total, total)
        autos_t = int(homs_tt.mono_mask.sum())
        # induced map on automorphisms through the projection must be a bijection
        from .covers import induced_cover_map
        from .errors import NoLift, NonUniqueLift

        idx_q = ext.quotient.elements(s.config.element_cap)
        mono_rows = homs_tt.monos()
        induced = set()
        proj = ext.proj_table
        for r in mono_rows:
            image = tuple(int(proj[j]) for j in homs_tt.pairs[r])
            induced.add(image)
        bijective = (autos_t == aut_q.order) and (len(induced) == autos_t)
        return (
            f"|Aut(cover)|={autos_t},|Aut(base)|={aut_q.order},induced_bijective={str(bijective).lower()}",
            {"cover_monos": autos_t, "base_aut": aut_q.order},
        )
    return fn


def _aut_level_row(src, dst):
    def fn(s: Session):
        _i_rep, arep = s.check_aut_level(src, dst)
        verdict = arep.localization.verdict if arep.localization else "not_asserted"
        return (
            f"hypothesis={str(arep.hypothesis_holds).lower()}/loc={verdict}",
            arep.to_dict(),
        )
    return fn


def _lemma_row(name, subgroup_sources):
    def fn(s: Session):
        from .autlevel import aut_normal_audit, simple_subgroup_audit

        aut = s.aut(name)
        ok1, _w1 = aut_normal_audit(aut, s.config)
        ok2 = True
        for h in subgroup_sources:
            good, _w = simple_subgroup_audit(s.group(h), aut, s.presentation(h), s.config)
            ok2 = ok2 and good
        return f"normal_audit={str(ok1).lower()}/subgroup_audit={str(ok2).lower()}", {}
    return fn


def _equiv_row(src, dst):
    def fn(s: Session):
        rep = s.check_cover_equivalence(src, dst)
        return (
            f"hyp={str(rep.hypothesis_ok).lower()}/base={rep.left.verdict}"
            f"/cover={rep.right.verdict if rep.right else 'none'}"
            f"/agree={str(rep.agree).lower()}",
            rep.to_dict(),
        )
    return fn


def _center_audit_row(total_src, total_dst, expected_ok):
    def fn(s: Session):
        from .covers import center_to_center_audit

        Ht = s.cover(total_src) if s.catalog.entry(total_src).cover_of else s.catalog.identity_extension(total_src)
        Gt = s.cover(total_dst) if s.catalog.entry(total_dst).cover_of else s.catalog.identity_extension(total_dst)
        homs = s.homset(Ht.total.name, Gt.total.name)
        ok, violators = center_to_center_audit(Ht, Gt, homs)
        return f"all_center_to_center={str(ok).lower()}", {"violators": len(violators)}
    return fn


def _hom_vanish_row(quotient, total):
    def fn(s: Session):
        homs = s.homset(quotient, total)
        return f"homs={homs.count}", {"count": homs.count}
    return fn


def _maximality_row(pairs):
    def fn(s: Session):
        results = {}
        all_ok = True
        for src, dst in pairs:
            phi = s.embedding(src, dst)
            loc = s.check_localization(src, dst)
            if loc.verdict != VERDICT_TRUE:
                continue
            if s.maximal_image(phi):
                simple = s.simple(dst)
                results[f"{src}->{dst}"] = simple
                all_ok = all_ok and simple
        return f"maximal_localizations_have_simple_target={str(all_ok).lower()}", results
    return fn


def standard_rows():
    """The instance table (core, stretch, and optional tiers)."""
    rows = [
        Row("loc/L3(2)->A8", "core", "inclusion of L3(2) in A8 is not a localization; "
            "two classes of image subgroups up to Aut(A8)",
            "false/classes=2", _loc_row("L3(2)", "A8", VERDICT_FALSE, extra="classes2")),
        Row("loc/PGL2(7)->S8", "core", "inclusion of Aut(L3(2)) = PGL2(7) in S8 is a localization",
            VERDICT_TRUE, _loc_row("PGL2(7)", "S8", VERDICT_TRUE)),
        Row("cover/SL2(5)->>A5", "core", "universal cover projection onto A5 is a localization",
            "universal=true/loc=true", _cover_row("SL2(5)")),
        Row("cover/SL2(7)->>L3(2)", "core", "universal cover projection onto L3(2) is a localization",
            "universal=true/loc=true", _cover_row("SL2(7)")),
        Row("cover/2.M12->>M12", "stretch", "universal cover projection onto M12 is a localization",
            "universal=true/loc=true", _cover_row("2.M12")),
        Row("autorder/SL2(5)", "core", "Aut of the cover matches Aut(A5), induced map bijective",
            "|Aut(cover)|=120,|Aut(base)|=120,induced_bijective=true", _aut_order_row("SL2(5)")),
        Row("autorder/SL2(7)", "core", "Aut of the cover matches Aut(L3(2)), induced map bijective",
            "|Aut(cover)|=336,|Aut(base)|=336,induced_bijective=true", _aut_order_row("SL2(7)")),
        Row("loc/A7->A8", "core", "inclusion A7 in A8 is a localization",
            VERDICT_TRUE, _loc_row("A7", "A8", VERDICT_TRUE)),
        Row("aut/A7->A8", "core", "extension S7 -> S8 is a localization (matching outer groups)",
            "hypothesis=true/loc=true", _aut_level_row("A7", "A8")),
        Row("loc/L3(2)->U3(3)", "core", "first link of the subgroup chain is a localization",
            VERDICT_TRUE, _loc_row("L3(2)", "U3(3)", VERDICT_TRUE)),
        Row("aut/L3(2)->U3(3)", "core", "extension PGL2(7) -> G2(2) is a localization",
            "hypothesis=true/loc=true", _aut_level_row("L3(2)", "U3(3)")),
        Row("loc/A5->A6", "core", "inclusion A5 in A6 is a localization",
            VERDICT_TRUE, _loc_row("A5", "A6", VERDICT_TRUE)),
        Row("equiv/A5->A6", "core", "two-sided check through SL2(5) and the non-universal 2.A6",
            "hyp=true/base=true/cover=true/agree=true", _equiv_row("A5", "A6")),
        Row("equiv/M11->M12", "stretch", "two-sided check: M11 in M12 iff M11 in 2.M12",
            "hyp=true/base=true/cover=true/agree=true", _equiv_row("M11", "M12")),
        Row("audit/A5", "core", "normal closures in Aut(A5) and simple subgroups of Aut(A5)",
            "normal_audit=true/subgroup_audit=true", _lemma_row("A5", ["A5"])),
        Row("audit/A6", "core", "normal closures in Aut(A6) and simple subgroups of Aut(A6)",
            "normal_audit=true/subgroup_audit=true", _lemma_row("A6", ["A5", "A6"])),
        Row("audit/L3(2)", "core", "normal closures in Aut(L3(2)) and its simple subgroups",
            "normal_audit=true/subgroup_audit=true", _lemma_row("L3(2)", ["L3(2)"])),
        Row("centeraudit/SL2(5)->SL2(5)", "core", "all endomorphisms of the cover preserve the center",
            "all_center_to_center=true", _center_audit_row("SL2(5)", "SL2(5)")),
        Row("vanish/A5->SL2(5)", "core", "only the trivial hom from the base into its cover",
            "homs=1", _hom_vanish_row("A5", "SL2(5)")),
        Row("vanish/L3(2)->SL2(7)", "core", "only the trivial hom from the base into its cover",
            "homs=1", _hom_vanish_row("L3(2)", "SL2(7)")),
        Row("vanish/A6->SL2(9)", "core", "only the trivial hom from the base into its double cover",
            "homs=1", _hom_vanish_row("A6", "SL2(9)")),
        Row("vanish/M12->2.M12", "stretch", "only the trivial hom from the base into its cover",
            "homs=1", _hom_vanish_row("M12", "2.M12")),
        Row("property/maximal-simple", "core",
            "verified localizations with maximal image have simple targets",
            "maximal_localizations_have_simple_target=true",
            _maximality_row([("A5", "A6"), ("A7", "A8"), ("L3(2)", "U3(3)")])),
        Row("centeraudit/SL2(5)->U3(5)", "optional",
            "maps from the cover of A5 into U3(5) violate center preservation",
            "all_center_to_center=false", _center_audit_row("SL2(5)", "U3(5)")),
    ]
    return rows


def run_report(session: Session, tier: str = "core", workers: int = 1, rows=None):
    rows = rows if rows is not None else standard_rows()
    tiers = {"core": {"core"}, "stretch": {"core", "stretch"},
             "optional": {"core", "optional"}, "all": {"core", "stretch", "optional"}}
    if tier not in tiers:
        raise ValueError(f"unknown tier {tier!r}")
    selected = [r for r in rows if r.tier in tiers[tier]]
    skipped = [r for r in rows if r.tier not in tiers[tier]]
    if workers <= 1:
        results = [r.run(session) for r in selected]
    else:
        results = _run_parallel(session, selected, workers)
    results.extend(
        RowResult(r.id, r.tier, r.description, r.expected, "skipped", SKIP, {}, 0)
        for r in skipped
    )
    results.sort(key=lambda r: r.id)
    return results


_WORKER_SESSION = None


def _worker_init(catalog_path, config):
    global _WORKER_SESSION
    from .catalog import load_catalog

    catalog = load_catalog(catalog_path, config=config)
    _WORKER_SESSION = Session(catalog, config)


def _worker_run(row):
    return row.run(_WORKER_SESSION)


def _run_parallel(session, selected, workers):
    import concurrent.futures as cf

    cfg = session.config
    with cf.ProcessPoolExecutor(
        max_workers=workers, initializer=_worker_init, initargs=(None, cfg)
    ) as pool:
        results = list(pool.map(_worker_run, selected))
    return results


def render_report(results, catalog_hash, tier, config: RunConfig):
    """The report document: a byte-stable comparable section, then timings."""
    lines = []
    lines.append(f"schema: {REPORT_SCHEMA}")
    lines.append(f"catalog: {catalog_hash}")
    lines.append(f"tier: {tier}")
    lines.append(f"caps: element={config.element_cap} coset={config.coset_cap} "
                 f"leaf={config.leaf_budget}")
    lines.append("")
    lines.append("# RESULTS (comparable)")
    for r in results:
        lines.append(f"{r.status:6} {r.id:32} expected={r.expected} actual={r.actual}")
    lines.append("")
    lines.append("# DETAILS (comparable)")
    for r in results:
        if r.details:
            lines.append(f"{r.id}: {json.dumps(r.details, sort_keys=True)}")
    lines.append("")
    lines.append("# TIMING (not compared)")
    for r in results:
        lines.append(f"{r.id}: {r.runtime_ms} ms")
    return "\n".join(lines) + "\n"


def comparable_section(text: str) -> str:
    return text.split("# TIMING")[0]


def exit_code(results) -> int:
    if any(r.status in (FAIL, ERROR) for r in results):
        return 1
    if any(r.status == INDET for r in results):
        return 2
    return 0
