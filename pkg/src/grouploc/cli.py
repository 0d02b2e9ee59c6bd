"""Command-line interface.

Verbs: info, homs, check-localization, check-cover, check-thm15,
check-aut, audit-lemmas, verify-catalog, report.  Exit codes: 0 all
verdicts as expected, 1 mismatch, 2 indeterminate (caps), 3 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .catalog import load_catalog, validate_catalog
from .config import RunConfig
from .errors import CapExceeded, GrouplocError, NoEmbedding, ParseError
from .localization import VERDICT_TRUE, VERDICT_FALSE
from .perm import parse_cycles
from .session import Session

EXIT_OK, EXIT_MISMATCH, EXIT_INDET, EXIT_USAGE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser():
    p = _Parser(prog="grouploc", description="Decide localizations of finite group homomorphisms.")
    p.add_argument("--catalog", help="path to an alternative catalog file")
    p.add_argument("--cache-dir", help="result cache directory")
    p.add_argument("--workers", type=int, default=None, help="worker count (results are worker-count independent)")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="verb", required=True)

    sp = sub.add_parser("info", parents=[], help="show a catalog entry")
    sp.add_argument("name")

    sp = sub.add_parser("homs", help="enumerate Hom(K, G)")
    sp.add_argument("source")
    sp.add_argument("target")
    sp.add_argument("--mono", action="store_true", help="only injective maps")
    sp.add_argument("--count-only", action="store_true", help="suppress the listing")

    sp = sub.add_parser("check-localization", help="is the embedding a localization?")
    sp.add_argument("source")
    sp.add_argument("target")
    sp.add_argument("--embed", default="auto",
                    help='"auto" (lexicographically first mono) or "gens=<cycles>;<cycles>..."')
    sp.add_argument("--json", action="store_true", help="machine-readable report")

    sp = sub.add_parser("check-cover", help="verify a catalog cover and its projection")
    sp.add_argument("total")
    sp.add_argument("quotient")

    sp = sub.add_parser("check-thm15", help="two-sided equivalence through the covers")
    sp.add_argument("source")
    sp.add_argument("target")

    sp = sub.add_parser("check-aut", help="extension to the automorphism groups")
    sp.add_argument("source")
    sp.add_argument("target")

    sp = sub.add_parser("audit-lemmas", help="normal-closure and simple-subgroup audits for Aut(G)")
    sp.add_argument("name")

    sp = sub.add_parser("verify-catalog", help="recheck every catalog invariant")
    sp.add_argument("--tier", default=None)
    sp.add_argument("--no-cache", action="store_true")

    sp = sub.add_parser("report", help="run the full instance table")
    sp.add_argument("--tier", default="core", help="core | stretch | optional | all")
    sp.add_argument("--out", default=None, help="write the document to a file")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    config = RunConfig.from_env()
    if args.cache_dir:
        config = config.with_overrides(cache_dir=args.cache_dir)
    if args.workers is not None:
        config = config.with_overrides(workers=args.workers)
    if args.verbose:
        import logging

        logging.basicConfig(level=logging.INFO)
    try:
        catalog = load_catalog(args.catalog, config=config)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    session = Session(catalog, config)
    try:
        return _dispatch(args, session)
    except CapExceeded as exc:
        print(f"indeterminate: {exc}", file=sys.stderr)
        return EXIT_INDET
    except (NoEmbedding, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except GrouplocError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


def _dispatch(args, session: Session) -> int:
    verb = args.verb
    if verb == "info":
        return _info(session, args.name)
    if verb == "homs":
        return _homs(session, args)
    if verb == "check-localization":
        return _check_localization(session, args)
    if verb == "check-cover":
        return _check_cover(session, args)
    if verb == "check-thm15":
        rep = session.check_cover_equivalence(args.source, args.target)
        print(json.dumps(rep.to_dict(), indent=2, sort_keys=True))
        if rep.left.verdict == "indeterminate" or (rep.right and rep.right.verdict == "indeterminate"):
            return EXIT_INDET
        return EXIT_OK if (rep.agree or not rep.asserted) else EXIT_MISMATCH
    if verb == "check-aut":
        _i_rep, arep = session.check_aut_level(args.source, args.target)
        print(json.dumps(arep.to_dict(), indent=2, sort_keys=True))
        if arep.localization and arep.localization.verdict == "indeterminate":
            return EXIT_INDET
        return EXIT_OK
    if verb == "audit-lemmas":
        return _audit(session, args.name)
    if verb == "verify-catalog":
        return _verify_catalog(session, args)
    if verb == "report":
        return _report(session, args)
    raise AssertionError(verb)


def _info(session: Session, name: str) -> int:
    e = session.catalog.entry(name)
    G = e.group()
    mult = "trivial" if e.mult == () else ("unknown" if e.mult is None else
                                           " x ".join(f"C{d}" for d in e.mult))
    out = {None: "unknown", 1: "trivial"}.get(e.out_order, str(e.out_order))
    print(f"name:       {e.name}" + (f"  (aliases: {', '.join(e.aliases)})" if e.aliases else ""))
    print(f"tier:       {e.tier}")
    print(f"degree:     {e.degree}")
    print(f"order:      {G.order} (recorded {e.order})")
    print(f"simple:     {e.simple}")
    print(f"Mult:       {mult}   [{e.mult_provenance or 'n/a'}]")
    print(f"Out order:  {out}   [{e.out_provenance or 'n/a'}]")
    print(f"generators: {'  '.join(e.generators)}")
    if e.presentation_relators:
        print(f"relators:   {', '.join(e.presentation_relators)}")
    if e.cover_of:
        u = "universal" if e.cover_of.universal else "non-universal"
        print(f"cover of:   {e.cover_of.quotient} ({u})")
    if e.aut_container:
        print(f"Aut copy:   {e.aut_container} (by conjugation)")
    print(f"provenance: {e.provenance}")
    return EXIT_OK if G.order == e.order else EXIT_MISMATCH


def _homs(session: Session, args) -> int:
    hs = session.homset(args.source, args.target, monos_only=args.mono)
    kind = "Mono" if args.mono else "Hom"
    print(f"{kind}({args.source}, {args.target}): {hs.count} maps"
          + ("" if args.mono else f" ({hs.mono_count} injective)"))
    if not args.count_only:
        for line in hs.export_lines():
            print(line)
    return EXIT_OK


def _parse_embed(session, args):
    if args.embed == "auto":
        return None
    if not args.embed.startswith("gens="):
        raise SystemExit(EXIT_USAGE)
    degree = session.group(args.target).degree
    return [parse_cycles(tok, degree) for tok in args.embed[5:].split(";")]


def _check_localization(session: Session, args) -> int:
    images = _parse_embed(session, args)
    rep = session.check_localization(args.source, args.target, images)
    if args.json:
        print(json.dumps(rep.to_dict(), indent=2, sort_keys=True))
    else:
        print(rep.summary())
    if rep.verdict == "indeterminate":
        return EXIT_INDET
    return EXIT_OK


def _check_cover(session: Session, args) -> int:
    e = session.catalog.entry(args.total)
    if e.cover_of is None or session.catalog.entry(e.cover_of.quotient).name != session.catalog.entry(args.quotient).name:
        print(f"error: the catalog has no cover link {args.total} ->> {args.quotient}", file=sys.stderr)
        return EXIT_USAGE
    _ext, universal, loc = session.check_cover(args.total)
    print(f"universal: {universal}")
    print(loc.summary())
    if loc.verdict == "indeterminate":
        return EXIT_INDET
    return EXIT_OK if (universal and loc.verdict == VERDICT_TRUE) else EXIT_MISMATCH


def _audit(session: Session, name: str) -> int:
    from .autlevel import aut_normal_audit, simple_subgroup_audit

    aut = session.aut(name)
    ok1, w1 = aut_normal_audit(aut, session.config)
    print(f"normal closures in Aut({name}) contain the inner copy: {ok1}")
    all_ok = ok1
    for e in session.catalog.entries:
        if not e.simple or e.order > session.group(name).order or e.tier == "optional":
            continue
        ok2, _w = simple_subgroup_audit(e.group(), aut, session.presentation(e.name), session.config)
        print(f"simple subgroups of Aut({name}) isomorphic to {e.name} lie inside: {ok2}")
        all_ok = all_ok and ok2
    return EXIT_OK if all_ok else EXIT_MISMATCH


def _verify_catalog(session: Session, args) -> int:
    report, errors = validate_catalog(session.catalog, session.config,
                                      tier=args.tier, use_cache=not args.no_cache)
    for name, row in sorted(report.items()):
        bits = [f"order={row['order']}"]
        if "presentation_order" in row:
            bits.append(f"presentation={row['presentation_order']}")
        if "kernel_order" in row:
            bits.append(f"kernel={row['kernel_order']}")
        print(f"OK   {name:10} " + " ".join(bits))
    for err in errors:
        print(f"FAIL {err.entry:10} {err.reason}")
    return EXIT_OK if not errors else EXIT_MISMATCH


def _report(session: Session, args) -> int:
    from .reporting import exit_code, render_report, run_report

    try:
        results = run_report(session, tier=args.tier, workers=session.config.workers)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render_report(results, session.catalog.content_hash, args.tier, session.config)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    print(text, end="")
    return exit_code(results)


if __name__ == "__main__":
    raise SystemExit(main())
