"""The curated group catalog: pinned generators, presentations, covers.

Entries carry provenance strings.  Orders, generation, presentation
certificates and cover links are verified at load (or replayed from the
cache, keyed by the catalog file's content hash); multiplier invariants
and outer automorphism group orders are trusted catalog data from the
standard tables and are labeled as such.
"""

from __future__ import annotations

import hashlib
import importlib.resources
from dataclasses import dataclass, field

import yaml

from .analysis import center, derived_subgroup
from .cache import ResultCache
from .config import RunConfig, DEFAULT
from .covers import CentralExtension, verify_universal_cover
from .errors import ParseError, ValidationError
from .homsearch import GroupHom
from .perm import parse_cycles
from .permgroup import PermGroup
from .presentations import Presentation, CertifiedPresentation, certify

SCHEMA_VERSION = 1


@dataclass
class CoverLink:
    quotient: str
    universal: bool
    proj_images: tuple[str, ...]


@dataclass
class CatalogEntry:
    name: str
    degree: int
    order: int
    tier: str
    generators: tuple[str, ...]
    provenance: str = ""
    aliases: tuple[str, ...] = ()
    simple: bool = False
    mult: tuple[int, ...] | None = None
    mult_provenance: str = ""
    out_order: int | None = None
    out_provenance: str = ""
    presentation_relators: tuple[str, ...] | None = None
    presentation_provenance: str = ""
    cover_of: CoverLink | None = None
    aut_container: str | None = None

    _group: PermGroup | None = field(default=None, repr=False)
    _certified: CertifiedPresentation | None = field(default=None, repr=False)

    def group(self) -> PermGroup:
        if self._group is None:
            gens = [parse_cycles(s, self.degree) for s in self.generators]
            self._group = PermGroup(gens, name=self.name)
        return self._group

    def presentation(self) -> Presentation | None:
        if self.presentation_relators is None:
            return None
        return Presentation.parse("a b", self.presentation_relators)

    def certified_presentation(self, config: RunConfig = DEFAULT) -> CertifiedPresentation | None:
        """Certify (relators hold, images generate, enumeration matches); cached per process."""
        if self._certified is not None:
            return self._certified
        pres = self.presentation()
        if pres is None:
            return None
        G = self.group()
        self._certified = certify(pres, G, G.generators, max_rows=config.coset_cap)
        return self._certified


class Catalog:
    def __init__(self, entries, source_text: str, config: RunConfig = DEFAULT):
        self.entries = list(entries)
        self.by_name = {}
        for e in self.entries:
            for key in (e.name, *e.aliases):
                norm = _normalize(key)
                if norm in self.by_name:
                    raise ParseError(f"duplicate catalog name {key!r}")
                self.by_name[norm] = e
        self.content_hash = hashlib.sha256(source_text.encode()).hexdigest()[:16]
        self.config = config

    def entry(self, name: str) -> CatalogEntry:
        e = self.by_name.get(_normalize(name))
        if e is None:
            raise KeyError(f"no catalog entry named {name!r}")
        return e

    def names(self, tier=None):
        return [e.name for e in self.entries if tier is None or e.tier == tier]

    def group(self, name: str) -> PermGroup:
        return self.entry(name).group()

    def cover_entry_for(self, quotient_name: str) -> CatalogEntry | None:
        """The entry whose cover link points at the named quotient."""
        target = _normalize(quotient_name)
        for e in self.entries:
            if e.cover_of and _normalize(e.cover_of.quotient) == target:
                return e
        return None

    def central_extension(self, total_name: str, config: RunConfig | None = None) -> CentralExtension:
        cfg = config or self.config
        e = self.entry(total_name)
        if e.cover_of is None:
            raise ValidationError(e.name, "entry has no cover link")
        quotient = self.entry(e.cover_of.quotient)
        total = e.group()
        qgrp = quotient.group()
        images = [parse_cycles(s, qgrp.degree) for s in e.cover_of.proj_images]
        proj = GroupHom(total, qgrp, images, "graph_certified")
        return CentralExtension(total, qgrp, proj,
                                mult_catalog=tuple(quotient.mult or ()), config=cfg)

    def identity_extension(self, name: str, config: RunConfig | None = None) -> CentralExtension:
        cfg = config or self.config
        e = self.entry(name)
        return CentralExtension.identity_cover(e.group(), mult_catalog=tuple(e.mult or ()),
                                               config=cfg)


def _normalize(name: str) -> str:
    return name.replace(" ", "").replace("_", "").replace(".", "").replace("·", "").lower()


def catalog_path_text() -> str:
    return importlib.resources.files("grouploc").joinpath("data/catalog.yaml").read_text()


def load_catalog(path: str | None = None, config: RunConfig = DEFAULT) -> Catalog:
    """Parse the catalog file (schema-checked); validation is separate."""
    text = open(path).read() if path else catalog_path_text()
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ParseError(f"catalog does not parse: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA_VERSION:
        raise ParseError("catalog schema missing or unsupported")
    entries = []
    for raw in doc.get("groups", []):
        cover = None
        if "cover_of" in raw:
            c = raw["cover_of"]
            cover = CoverLink(c["quotient"], bool(c.get("universal", False)),
                              tuple(c["proj_images"]))
        pres = raw.get("presentation")
        entries.append(CatalogEntry(
            name=raw["name"],
            degree=int(raw["degree"]),
            order=int(raw["order"]),
            tier=raw.get("tier", "core"),
            generators=tuple(raw["generators"]),
            provenance=raw.get("provenance", ""),
            aliases=tuple(raw.get("aliases", ())),
            simple=bool(raw.get("simple", False)),
            mult=tuple(raw["mult"]) if "mult" in raw else None,
            mult_provenance=raw.get("mult_provenance", ""),
            out_order=raw.get("out_order"),
            out_provenance=raw.get("out_provenance", ""),
            presentation_relators=tuple(pres["relators"]) if pres else None,
            presentation_provenance=pres.get("provenance", "") if pres else "",
            cover_of=cover,
            aut_container=raw.get("aut_container"),
        ))
    if not entries:
        import warnings

        warnings.warn("catalog is empty")
    return Catalog(entries, text, config)


def validate_catalog(catalog: Catalog, config: RunConfig | None = None,
                     tier: str | None = None, use_cache: bool = True):
    """Check every loadable invariant of every entry; returns (report, errors).

    Orders and generation are recomputed; presentations are certified by
    coset enumeration; cover links are rebuilt and, when flagged universal,
    checked to be universal.  Results are cached against the catalog hash.
    """
    cfg = config or catalog.config
    cache = ResultCache(cfg.cache_dir) if use_cache else None
    ns = f"catalog-{catalog.content_hash}"
    cached = cache.load(ns) if cache else {}
    report = {}
    errors = []
    dirty = False
    for e in catalog.entries:
        if tier is not None and e.tier != tier:
            continue
        if e.name in cached:
            report[e.name] = cached[e.name]
            continue
        row = {}
        try:
            G = e.group()
            if G.order != e.order:
                raise ValidationError(e.name, f"stabilizer-chain order {G.order} != recorded {e.order}")
            row["order"] = G.order
            if e.presentation_relators is not None:
                cp = e.certified_presentation(cfg)
                row["presentation_order"] = cp.presentation.certified_order
            if e.cover_of is not None:
                ext = catalog.central_extension(e.name, cfg)
                row["kernel_order"] = ext.kernel.order
                if e.cover_of.universal and not verify_universal_cover(ext, cfg):
                    raise ValidationError(e.name, "cover link flagged universal fails the check")
                row["universal"] = e.cover_of.universal
            if e.aut_container is not None:
                C = catalog.group(e.aut_container)
                if C.degree != G.degree:
                    raise ValidationError(e.name, "aut container acts on different points")
                if not all(C.contains(g) for g in G.generators):
                    raise ValidationError(e.name, "aut container does not contain the group")
            if e.simple:
                if derived_subgroup(G).order != G.order and G.order > 1:
                    # abelian simple groups are the prime cyclic ones
                    if not _is_prime(G.order):
                        raise ValidationError(e.name, "flagged simple but not perfect and not of prime order")
                zen = center(G, cfg.element_cap)
                if G.order > 1 and zen.order not in (1, G.order):
                    raise ValidationError(e.name, "flagged simple but has a proper center")
            report[e.name] = row
            cached[e.name] = row
            dirty = True
        except ValidationError as exc:
            errors.append(exc)
        except Exception as exc:  # noqa: BLE001 - surfaced per entry
            errors.append(ValidationError(e.name, str(exc)))
    if cache and dirty and not errors:
        cache.store(ns, cached)
    return report, errors


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True
