"""Exception types shared across the package.

Resource-limit failures (CapExceeded) are always distinguished from genuine
negative results: a verdict is never synthesized from a blown cap.
"""


class GrouplocError(Exception):
    """Base class for all package errors."""


class DegreeMismatch(GrouplocError, ValueError):
    """Permutations of different degrees were combined."""


class CapExceeded(GrouplocError):
    """A configured resource cap was hit before the computation finished.

    Callers must treat this as "indeterminate", never as a negative answer.
    """

    def __init__(self, what, needed=None, cap=None):
        self.what = what
        self.needed = needed
        self.cap = cap
        msg = f"cap exceeded: {what}"
        if needed is not None and cap is not None:
            msg += f" (needed {needed}, cap {cap})"
        super().__init__(msg)


class MissingCatalogDatum(GrouplocError):
    """A required trusted value (multiplier, cover, ...) is absent from the catalog."""


class ParseError(GrouplocError, ValueError):
    """Malformed cycle string, relator word, or catalog file."""


class ValidationError(GrouplocError):
    """A catalog entry failed one of its load-time invariants."""

    def __init__(self, entry, reason):
        self.entry = entry
        self.reason = reason
        super().__init__(f"catalog entry {entry!r}: {reason}")


class RelatorFails(GrouplocError):
    """A relator does not evaluate to the identity under the proposed images."""

    def __init__(self, index, word=None):
        self.index = index
        self.word = word
        super().__init__(f"relator #{index} does not evaluate to the identity")


class GenerationFails(GrouplocError):
    """Proposed images do not generate the target group."""


class OrderMismatch(GrouplocError):
    """Enumerated presentation order differs from the group order."""

    def __init__(self, presented, group):
        self.presented = presented
        self.group = group
        super().__init__(f"presented order {presented} != group order {group}")


class UncertifiedPresentation(GrouplocError):
    """A presentation without a certificate was offered for relator pruning."""


class NoEmbedding(GrouplocError):
    """No injective homomorphism exists for the requested pair."""


class NoLift(GrouplocError):
    """No compatible morphism between covers exists for the given map."""


class NonUniqueLift(GrouplocError):
    """More than one compatible morphism between covers exists."""


class ExtensionMissing(GrouplocError):
    """An automorphism of the subgroup extends to no automorphism of the ambient group."""


class ExtensionNotUnique(GrouplocError):
    """An automorphism of the subgroup extends in more than one way."""


class TheoremViolation(GrouplocError):
    """A verified hypothesis led to a conclusion that failed to check out.

    This is treated as an implementation bug, never as a mathematical
    discovery; it aborts the run loudly.
    """
