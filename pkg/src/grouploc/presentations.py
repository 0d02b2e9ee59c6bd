"""Finite presentations and their certification against concrete groups.

A presentation may only be used for relator-pruned homomorphism search
after `certify` has tied it to a permutation group: every relator must
evaluate to the identity on the chosen generator images, the images must
generate the group, and coset enumeration over the trivial subgroup must
reproduce the group order exactly.  Together these checks make the
assignment "abstract generator i -> images[i]" an isomorphism from the
presented group, so relator-satisfying image tuples in any target are
precisely the homomorphisms from the group.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .config import COSET_CAP_DEFAULT
from .coset_enum import enumerate_cosets
from .errors import GenerationFails, OrderMismatch, RelatorFails
from .perm import Perm
from .permgroup import PermGroup
from .words import Word, parse_word

CERT_COSET_ENUMERATION = "todd_coxeter"
CERT_TRUSTED = "trusted_catalog"


@dataclass
class Presentation:
    """Abstract generators and relators, with an optional order certificate."""

    gen_names: tuple[str, ...]
    relators: tuple[Word, ...]
    certified_order: int | None = None
    certification: str | None = None

    @classmethod
    def parse(cls, gen_names, relator_strings) -> "Presentation":
        names = tuple(gen_names.split() if isinstance(gen_names, str) else gen_names)
        rels = tuple(parse_word(s, names).reduced() for s in relator_strings)
        return cls(names, rels)

    @property
    def ngens(self) -> int:
        return len(self.gen_names)

    def relator_strings(self):
        return [w.format(self.gen_names) for w in self.relators]

    def evaluate(self, word: Word, images) -> Perm:
        return word.evaluate(list(images))


def todd_coxeter(p: Presentation, max_rows: int = COSET_CAP_DEFAULT,
                 lookahead_step: int | None = None) -> int:
    """Order of the presented group, by coset enumeration over the trivial subgroup."""
    kw = {"lookahead_step": lookahead_step} if lookahead_step else {}
    count, _images = enumerate_cosets(p.ngens, p.relators, max_rows=max_rows, **kw)
    return count


def regular_representation(p: Presentation, max_rows: int = COSET_CAP_DEFAULT):
    """Order and generator permutations of the coset action on the trivial subgroup."""
    return enumerate_cosets(p.ngens, p.relators, max_rows=max_rows)


@dataclass
class CertifiedPresentation:
    presentation: Presentation
    group: PermGroup
    images: tuple[Perm, ...]
    order: int = field(init=False)

    def __post_init__(self):
        self.order = self.group.order


def certify(p: Presentation, G: PermGroup, images, max_rows: int = COSET_CAP_DEFAULT) -> CertifiedPresentation:
    """Certify that `p` presents `G` with the given generator images.

    Checks, in order: every relator evaluates to the identity under the
    images; the images generate G; the enumerated order of the presented
    group equals |G|.  Raises RelatorFails, GenerationFails or
    OrderMismatch accordingly (CapExceeded propagates from enumeration).
    """
    images = tuple(images)
    if len(images) != p.ngens:
        raise ValueError(f"expected {p.ngens} images, got {len(images)}")
    for i, rel in enumerate(p.relators):
        if not rel.evaluate(list(images)).is_identity():
            raise RelatorFails(i, rel)
    spanned = PermGroup(list(images) or [G.identity()], verify=False)
    if spanned.order != G.order or not all(G.contains(im) for im in images):
        raise GenerationFails(
            f"images span order {spanned.order}, group has order {G.order}"
        )
    enumerated = todd_coxeter(p, max_rows=max_rows)
    if enumerated != G.order:
        raise OrderMismatch(enumerated, G.order)
    p.certified_order = enumerated
    p.certification = CERT_COSET_ENUMERATION
    return CertifiedPresentation(p, G, images)
