"""Free-group words over named generators.

Three generator alphabets coexist in the pipeline (surface loops, Artin
braid generators, kernel symbols); the namespace tag keeps them apart.
Words are flat sequences of (generator, exponent) letters with exponents
restricted to +-1, which keeps the braid action on words simple.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Optional

SURFACE = "surface"
ARTIN = "artin"
KERNEL = "kernel"

_PREFIX = {SURFACE: "g", ARTIN: "s", KERNEL: "k"}
_NAMESPACE_OF_PREFIX = {v: k for k, v in _PREFIX.items()}

_TOKEN_RE = re.compile(r"^([gsk])(\d+)(p?)(\^-1)?$")


@dataclass(frozen=True, order=True)
class GeneratorId:
    """A named generator: namespace tag, 1-based index, optional prime."""

    namespace: str
    index: int
    primed: bool = False

    def __post_init__(self):
        if self.namespace not in _PREFIX:
            raise ValueError(f"unknown namespace {self.namespace!r}")
        if self.index < 1:
            raise ValueError(f"generator index must be >= 1, got {self.index}")

    def token(self, exponent: int = 1) -> str:
        tok = f"{_PREFIX[self.namespace]}{self.index}{'p' if self.primed else ''}"
        return tok if exponent == 1 else tok + "^-1"

    def __repr__(self):
        return self.token()


def surface_gen(index: int, primed: bool = False) -> GeneratorId:
    return GeneratorId(SURFACE, index, primed)


def artin_gen(index: int) -> GeneratorId:
    return GeneratorId(ARTIN, index)


def kernel_gen(index: int) -> GeneratorId:
    return GeneratorId(KERNEL, index)


Letter = tuple[GeneratorId, int]


@dataclass(frozen=True)
class FreeWord:
    """A word in a free group, stored as written (not auto-reduced)."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        for gen, exp in self.letters:
            if not isinstance(gen, GeneratorId) or exp not in (1, -1):
                raise ValueError(f"bad letter ({gen!r}, {exp!r})")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord(self.letters + other.letters)

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def is_identity(self) -> bool:
        return not reduce(self).letters

    def generators(self) -> set[GeneratorId]:
        return {g for g, _ in self.letters}

    def __str__(self) -> str:
        return word_to_str(self)


EMPTY = FreeWord()


def word(*letters: GeneratorId | Letter) -> FreeWord:
    """Convenience constructor: bare generators mean exponent +1."""
    out = []
    for item in letters:
        if isinstance(item, GeneratorId):
            out.append((item, 1))
        else:
            out.append((item[0], item[1]))
    return FreeWord(tuple(out))


def reduce(w: FreeWord) -> FreeWord:
    """Freely reduce: cancel adjacent (g,+1)(g,-1) pairs until none remain."""
    stack: list[Letter] = []
    for g, e in w.letters:
        if stack and stack[-1][0] == g and stack[-1][1] == -e:
            stack.pop()
        else:
            stack.append((g, e))
    return FreeWord(tuple(stack))


def concat(*ws: FreeWord) -> FreeWord:
    out: list[Letter] = []
    for w in ws:
        for g, e in w.letters:
            if out and out[-1][0] == g and out[-1][1] == -e:
                out.pop()
            else:
                out.append((g, e))
    return FreeWord(tuple(out))


def conjugate(w: FreeWord, by: FreeWord) -> FreeWord:
    """reduce(by . w . by^-1)."""
    return concat(by, w, by.inverse())


def commutator(a: FreeWord, b: FreeWord) -> FreeWord:
    return concat(a, b, a.inverse(), b.inverse())


def power(w: FreeWord, k: int) -> FreeWord:
    if k < 0:
        return power(w.inverse(), -k)
    out = EMPTY
    for _ in range(k):
        out = concat(out, w)
    return out


def substitute(w: FreeWord, images: Mapping[GeneratorId, FreeWord]) -> FreeWord:
    """Apply the homomorphism sending each generator to its image word.

    Inverse letters map to the inverse image; the result is reduced.
    """
    parts: list[FreeWord] = []
    for g, e in w.letters:
        if g not in images:
            raise KeyError(f"no image for generator {g.token()}")
        img = images[g]
        parts.append(img if e == 1 else img.inverse())
    return concat(*parts)


def exponent_sum(w: FreeWord, g: Optional[GeneratorId] = None) -> int:
    """Signed letter count, restricted to g when given."""
    if g is None:
        return sum(e for _, e in w.letters)
    return sum(e for h, e in w.letters if h == g)


def cyclic_normal_form(w: FreeWord) -> FreeWord:
    """Canonical representative among cyclic rotations of w and w^-1.

    Used only to deduplicate relators; cyclically reduced first.
    """
    v = reduce(w)
    letters = list(v.letters)
    while len(letters) >= 2 and letters[0][0] == letters[-1][0] and letters[0][1] == -letters[-1][1]:
        letters = letters[1:-1]
    if not letters:
        return EMPTY

    def rotations(ls):
        return [tuple(ls[i:] + ls[:i]) for i in range(len(ls))]

    candidates = rotations(letters)
    inv = [(g, -e) for g, e in reversed(letters)]
    candidates += rotations(inv)
    key = lambda ls: [(g.namespace, g.index, g.primed, e) for g, e in ls]
    return FreeWord(min(candidates, key=key))


def word_to_str(w: FreeWord) -> str:
    """Serialize as space-separated tokens, e.g. ``g3 g1p^-1 g2``."""
    return " ".join(g.token(e) for g, e in w.letters)


def word_from_str(s: str) -> FreeWord:
    letters = []
    for tok in s.split():
        m = _TOKEN_RE.match(tok)
        if m is None:
            raise ValueError(f"malformed token {tok!r}")
        prefix, idx, primed, inv = m.groups()
        gen = GeneratorId(_NAMESPACE_OF_PREFIX[prefix], int(idx), primed == "p")
        letters.append((gen, -1 if inv else 1))
    return FreeWord(tuple(letters))
