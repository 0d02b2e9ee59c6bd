"""Abstract words over group generators, with relator-string parsing.

Words are tuples of signed 1-based generator indices (+k for generator k,
-k for its inverse), multiplied left to right with the rightmost letter
acting first.  Relator strings use single-letter generator names with
`*` products, `^` integer powers, parentheses, and `[u,v]` commutators
(a^-1 b^-1 a b); whitespace is ignored and plain concatenation like "ab"
is accepted.
"""

from __future__ import annotations

from .errors import ParseError
from .perm import Perm


def free_reduce(letters):
    out = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(letters):
    w = list(free_reduce(letters))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def invert(letters):
    return tuple(-x for x in reversed(letters))


class Word:
    """A freely reducible word over abstract generators."""

    __slots__ = ("letters",)

    def __init__(self, letters):
        self.letters = tuple(letters)

    def reduced(self) -> "Word":
        return Word(free_reduce(self.letters))

    def cyclically_reduced(self) -> "Word":
        return Word(cyclic_reduce(self.letters))

    def inverse(self) -> "Word":
        return Word(invert(self.letters))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        return Word(self.letters * n)

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        return f"Word{self.letters}"

    def evaluate(self, images: list[Perm]) -> Perm:
        """Substitution homomorphism from the free group."""
        if not images:
            raise ValueError("no images supplied")
        out = Perm.identity(images[0].degree)
        for letter in self.letters:
            out = out * (images[letter - 1] if letter > 0 else images[-letter - 1].inverse())
        return out

    def format(self, gen_names) -> str:
        if not self.letters:
            return "1"
        parts = []
        i = 0
        letters = self.letters
        while i < len(letters):
            j = i
            while j < len(letters) and letters[j] == letters[i]:
                j += 1
            count = j - i
            name = gen_names[abs(letters[i]) - 1]
            exp = count if letters[i] > 0 else -count
            parts.append(name if exp == 1 else f"{name}^{exp}")
            i = j
        return "*".join(parts)


def evaluate(word: Word, images) -> Perm:
    return word.evaluate(list(images))


class _Parser:
    def __init__(self, text: str, gen_names):
        self.text = "".join(text.split())
        self.pos = 0
        self.gen_index = {name: i + 1 for i, name in enumerate(gen_names)}

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else None

    def parse(self):
        w = self.expr()
        if self.pos != len(self.text):
            raise ParseError(f"trailing characters in word: {self.text[self.pos:]!r}")
        return w

    def expr(self):
        out = []
        while True:
            c = self.peek()
            if c is None or c in "),],":
                return tuple(out)
            if c == "*":
                self.pos += 1
                continue
            out.extend(self.term())

    def term(self):
        atom = self.atom()
        if self.peek() == "^":
            self.pos += 1
            n = self.integer()
            if n < 0:
                atom = invert(atom)
                n = -n
            return atom * n
        return atom

    def atom(self):
        c = self.peek()
        if c == "(":
            self.pos += 1
            inner = self.expr()
            if self.peek() != ")":
                raise ParseError("unbalanced parenthesis in word")
            self.pos += 1
            return inner
        if c == "[":
            self.pos += 1
            u = self.expr()
            if self.peek() != ",":
                raise ParseError("commutator needs two parts")
            self.pos += 1
            v = self.expr()
            if self.peek() != "]":
                raise ParseError("unbalanced bracket in word")
            self.pos += 1
            return invert(u) + invert(v) + u + v
        if c is not None and c in self.gen_index:
            self.pos += 1
            return (self.gen_index[c],)
        raise ParseError(f"unexpected character {c!r} in word")

    def integer(self):
        start = self.pos
        if self.peek() == "-":
            self.pos += 1
        while self.peek() is not None and self.peek().isdigit():
            self.pos += 1
        if self.pos == start or self.text[start:self.pos] == "-":
            raise ParseError("expected an integer exponent")
        return int(self.text[start:self.pos])


def parse_word(text: str, gen_names) -> Word:
    """Parse a relator string over single-letter generator names."""
    for name in gen_names:
        if len(name) != 1 or not name.isalpha():
            raise ParseError(f"generator names must be single letters, got {name!r}")
    return Word(_Parser(text, gen_names).parse())
