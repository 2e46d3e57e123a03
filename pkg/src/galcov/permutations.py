"""Permutations, the sheet monodromy psi, and its canonical splitting phi.

Convention used repo-wide: permutations compose left to right, so that
``(p * q)(x) == q(p(x))`` and psi is a homomorphism for word concatenation.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .words import SURFACE, FreeWord, GeneratorId, surface_gen, word


@dataclass(frozen=True)
class Permutation:
    """Bijection of {1..m}; images[k-1] = image of k."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(self.images)}: {self.images}")

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # apply self first, then other
        return Permutation(tuple(other.images[i - 1] for i in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for k, v in enumerate(self.images, start=1):
            inv[v - 1] = k
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(v == k for k, v in enumerate(self.images, start=1))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(1, len(self.images) + 1):
            if start in seen:
                continue
            cyc, k = [], start
            while k not in seen:
                seen.add(k)
                cyc.append(k)
                k = self(k)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(k) for k in c) + ")" for c in cycs)

    def __repr__(self):
        return f"Permutation{self.cycle_string()}"


def identity_perm(m: int) -> Permutation:
    return Permutation(tuple(range(1, m + 1)))


def transposition(m: int, a: int, b: int) -> Permutation:
    imgs = list(range(1, m + 1))
    imgs[a - 1], imgs[b - 1] = b, a
    return Permutation(tuple(imgs))


def from_cycles(m: int, *cycles: Sequence[int]) -> Permutation:
    imgs = list(range(1, m + 1))
    for cyc in cycles:
        for i, k in enumerate(cyc):
            imgs[k - 1] = cyc[(i + 1) % len(cyc)]
    return Permutation(tuple(imgs))


def all_permutations(m: int) -> list[Permutation]:
    import itertools

    return [Permutation(p) for p in itertools.permutations(range(1, m + 1))]


# --- the sheet monodromy ---------------------------------------------------

def generator_transposition(j: int, n: int) -> Permutation:
    """Image of the j-th surface generator pair (primed or not) in S_2n."""
    m = 2 * n
    if not 1 <= j <= m:
        raise ValueError(f"generator index {j} outside 1..{m}")
    if j == 1:
        return transposition(m, 1, 2)
    if j == 2:
        return transposition(m, m, 1)
    return transposition(m, j - 1, j)


def psi_eval(w: FreeWord, n: int) -> Permutation:
    """Evaluate the permutation monodromy on a surface word."""
    out = identity_perm(2 * n)
    for g, _exp in w.letters:
        if g.namespace != SURFACE:
            raise ValueError(f"psi is only defined on surface generators, got {g.token()}")
        out = out * generator_transposition(g.index, n)  # transpositions are involutions
    return out


# --- the splitting ---------------------------------------------------------
#
# The generators Gamma_2, Gamma_3, ..., Gamma_2n map to the edge
# transpositions of the path  2 - 3 - 4 - ... - 2n - 1,  so any permutation
# can be written canonically by token sorting along that path: targets are
# processed in ascending path coordinate and each needed token is bubbled
# down with descending edge applications.  The word for (1 2) comes out as
# the palindrome  g2 g2n ... g4 g3 g4 ... g2n g2.

def _path_vertices(n: int) -> list[int]:
    return list(range(2, 2 * n + 1)) + [1]


def _edge_generator(coord: int, n: int) -> GeneratorId:
    # edge between path coords (coord, coord+1); 0-based coords
    if coord == 2 * n - 2:
        return surface_gen(2)
    return surface_gen(coord + 3)


def phi_word(p: Permutation, n: int) -> FreeWord:
    """Canonical word in Gamma_2..Gamma_2n mapping to p under psi."""
    m = 2 * n
    if p.size != m:
        raise ValueError(f"permutation size {p.size} != 2n = {m}")
    verts = _path_vertices(n)
    coord_of_vertex = {v: c for c, v in enumerate(verts)}
    token_at = list(verts)  # token v starts on vertex v
    coord_of_token = {v: c for c, v in enumerate(verts)}
    letters: list[GeneratorId] = []
    pinv = p.inverse()
    for g in range(m):
        needed = pinv(verts[g])  # token that must end on vertex verts[g]
        c = coord_of_token[needed]
        for cc in range(c - 1, g - 1, -1):
            letters.append(_edge_generator(cc, n))
            lo, hi = token_at[cc], token_at[cc + 1]
            token_at[cc], token_at[cc + 1] = hi, lo
            coord_of_token[hi], coord_of_token[lo] = cc, cc + 1
    return word(*letters)


@lru_cache(maxsize=None)
def _phi_word_cached(images: tuple[int, ...], n: int) -> FreeWord:
    return phi_word(Permutation(images), n)


def phi_word_cached(p: Permutation, n: int) -> FreeWord:
    return _phi_word_cached(p.images, n)


# --- generic homomorphism check --------------------------------------------

@dataclass
class HomReport:
    checked: int
    failures: list[tuple[int, str]]

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_homomorphism(presentation, images, mul, inv, is_identity) -> HomReport:
    """Evaluate every relator in a target group given generator images.

    ``images`` maps GeneratorId to target elements; ``mul``/``inv`` give the
    target group law and ``is_identity`` a decision procedure for triviality.
    Returns the (possibly empty) list of failing relators.
    """
    failures = []
    for idx, rel in enumerate(presentation.relators):
        acc = None
        for g, e in rel.letters:
            if g not in images:
                raise KeyError(f"no image for generator {g.token()}")
            x = images[g] if e == 1 else inv(images[g])
            acc = x if acc is None else mul(acc, x)
        if acc is not None and not is_identity(acc):
            failures.append((idx, str(rel)))
    return HomReport(checked=len(presentation.relators), failures=failures)


def generates_symmetric_group(perms: Iterable[Permutation], m: int, limit: int | None = None) -> bool:
    """Breadth-first closure test; fine for the desk-scale m used here."""
    import math

    target = math.factorial(m)
    if limit is None:
        limit = target
    gens = list(perms)
    seen = {identity_perm(m).images}
    frontier = [identity_perm(m)]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y.images not in seen:
                    seen.add(y.images)
                    nxt.append(y)
                    if len(seen) > limit:
                        return False
        frontier = nxt
    return len(seen) == target
