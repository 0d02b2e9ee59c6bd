"""grouploc: certified computation with finite permutation groups.

The package decides, by exhaustive enumeration with certified pruning,
whether a homomorphism between concrete finite groups is a localization
(precomposition gives a bijection Hom(G,G) = Hom(H,G)), and bundles the
structural machinery that question needs: stabilizer chains, coset
enumeration, homomorphism search, automorphism groups, and central
extensions, together with a pinned catalog of named groups.
"""

from .perm import Perm, parse_cycles
from .permgroup import PermGroup, ElementIndex, build_group, direct_product, from_cycles
from .config import RunConfig
from . import errors

__version__ = "0.1.0"

__all__ = [
    "Perm",
    "parse_cycles",
    "PermGroup",
    "ElementIndex",
    "build_group",
    "direct_product",
    "from_cycles",
    "RunConfig",
    "errors",
    "__version__",
]
