"""Permutations on {0, ..., degree-1} with cycle-notation text I/O.

Composition convention is fixed once for the whole package: the right factor
acts first, (a * b)(x) = a(b(x)).  Cycle strings use 1-based points in text
form ("(1,2,3)(4,5)") and are whitespace-insensitive; the identity prints
as "()".
"""

from __future__ import annotations

import re
from math import lcm

from .errors import DegreeMismatch, ParseError


class Perm:
    """An immutable permutation, stored as the tuple of point images."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        self.images = images

    @staticmethod
    def identity(degree: int) -> "Perm":
        return Perm(range(degree))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Perm") -> "Perm":
        # right factor acts first: (self*other)(x) = self(other(x))
        a, b = self.images, other.images
        if len(a) != len(b):
            raise DegreeMismatch(f"degrees {len(a)} and {len(b)} differ")
        return Perm(a[x] for x in b)

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(inv)

    def __pow__(self, n: int) -> "Perm":
        if n < 0:
            return self.inverse() ** (-n)
        result = Perm.identity(self.degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __lt__(self, other: "Perm") -> bool:
        return self.images < other.images

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def extended(self, degree: int) -> "Perm":
        """Embed into a larger degree, padding with fixed points."""
        if degree < self.degree:
            raise DegreeMismatch(f"cannot shrink degree {self.degree} to {degree}")
        return Perm(self.images + tuple(range(self.degree, degree)))

    def cycles(self, include_fixed: bool = False):
        """Disjoint cycles, each starting at its smallest point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            p = self.images[start]
            while p != start:
                cyc.append(p)
                seen[p] = True
                p = self.images[p]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles())) if not self.is_identity() else 1

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def cycle_string(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + ",".join(str(p + 1) for p in c) + ")" for c in cycs)

    def __repr__(self) -> str:
        return f"Perm[{self.degree}] {self.cycle_string()}"


_CYCLE_RE = re.compile(r"\(([0-9,\s]*)\)")


def parse_cycles(text: str, degree: int | None = None) -> Perm:
    """Parse 1-based cycle notation like "(1,2,3)(4,5)"; "()" is the identity.

    Points may also be separated by spaces.  The degree defaults to the
    largest point mentioned.
    """
    stripped = re.sub(r"\s+", "", text)
    if not stripped:
        raise ParseError("empty cycle string")
    cycles = []
    consumed = 0
    for m in _CYCLE_RE.finditer(stripped):
        if m.start() != consumed:
            raise ParseError(f"unexpected text in cycle string: {text!r}")
        consumed = m.end()
        body = m.group(1)
        if not body:
            continue
        try:
            pts = [int(tok) - 1 for tok in re.split(r"[,\s]+", body) if tok]
        except ValueError as exc:
            raise ParseError(f"bad point in cycle string: {text!r}") from exc
        if any(p < 0 for p in pts):
            raise ParseError(f"points are 1-based: {text!r}")
        if len(set(pts)) != len(pts):
            raise ParseError(f"repeated point inside a cycle: {text!r}")
        cycles.append(pts)
    if consumed != len(stripped):
        raise ParseError(f"unexpected text in cycle string: {text!r}")
    flat = [p for c in cycles for p in c]
    if len(set(flat)) != len(flat):
        raise ParseError(f"cycles are not disjoint: {text!r}")
    n = max(flat, default=-1) + 1
    if degree is not None:
        if degree < n:
            raise ParseError(f"degree {degree} too small for {text!r}")
        n = degree
    images = list(range(n))
    for c in cycles:
        for a, b in zip(c, c[1:]):
            images[a] = b
        images[c[-1]] = c[0]
    return Perm(images)
