"""Finitely presented groups for the branch curve complement and its quotients.

Two independent routes produce relator sets: schema instantiation over the
incidence complex (commutators for incidental pairs, triple relations at
3-points, one branch relation per 3-point) and van Kampen translation of
the monodromy factors.  Both present the same group; the test suite checks
their abelianizations and finite quotients agree.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping, Optional

from .braids import MonodromyFactor, full_factorization
from .degeneration import IncidenceComplex, three_point_lines
from .words import (
    SURFACE,
    FreeWord,
    GeneratorId,
    commutator,
    concat,
    cyclic_normal_form,
    reduce,
    substitute,
    surface_gen,
    word,
)


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[GeneratorId, ...]
    relators: tuple[FreeWord, ...]
    name: str = ""
    n: int = 0
    provenance: tuple[str, ...] = ()
    gen_names: Mapping[GeneratorId, str] = field(default_factory=dict)

    def __post_init__(self):
        declared = set(self.generators)
        for rel in self.relators:
            undeclared = rel.generators() - declared
            if undeclared:
                raise ValueError(f"relator {rel} uses undeclared generators {undeclared}")
        if self.provenance and len(self.provenance) != len(self.relators):
            raise ValueError("provenance must parallel relators")


def surface_generators(n: int) -> tuple[GeneratorId, ...]:
    out = []
    for j in range(1, 2 * n + 1):
        out.append(surface_gen(j, False))
        out.append(surface_gen(j, True))
    return tuple(out)


def dihedral_window(i: int, depth: int) -> list[FreeWord]:
    """Odd-length words in <Gamma_i, Gamma_i'> used as relation representatives.

    Index k runs over -depth..depth+1 where k=0 gives Gamma_i' and k=1 gives
    Gamma_i; consecutive entries differ by the pair half-twist substitution.
    """
    gi, gip = surface_gen(i), surface_gen(i, True)
    up = {gi: word(gi, gip, (gi, -1)), gip: word(gi)}
    down = {gi: word(gip), gip: word((gip, -1), gi, gip)}
    w = word(gip)
    by_k = {0: w}
    for k in range(1, depth + 2):
        w = substitute(w, up)
        by_k[k] = w
    w = by_k[0]
    for k in range(1, depth + 1):
        w = substitute(w, down)
        by_k[-k] = w
    return [by_k[k] for k in range(-depth, depth + 2)]


def branch_relator(i: int, j: int) -> FreeWord:
    """Gamma_j'^-1 Gamma_i Gamma_i' Gamma_j Gamma_i'^-1 Gamma_i^-1 for vertical i, diagonal j."""
    gi, gip = surface_gen(i), surface_gen(i, True)
    gj, gjp = surface_gen(j), surface_gen(j, True)
    return word((gjp, -1), gi, gip, gj, (gip, -1), (gi, -1))


def triple_relator(a: FreeWord, b: FreeWord) -> FreeWord:
    return concat(a, b, a, b.inverse(), a.inverse(), b.inverse())


def complement_presentation(complex: IncidenceComplex, depth: int = 0) -> GroupPresentation:
    """Presentation of the affine complement group from the incidence schema."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    n = complex.n
    relators: list[FreeWord] = []
    prov: list[str] = []
    for k in range(1, 2 * n + 1):
        vert, diag = three_point_lines(complex, k)
        wi = dihedral_window(vert, depth)
        wj = dihedral_window(diag, depth)
        for a in wi:
            for b in wj:
                relators.append(triple_relator(a, b))
                prov.append(f"triple V{k} lines ({vert},{diag})")
        relators.append(branch_relator(vert, diag))
        prov.append(f"branch V{k} lines ({vert},{diag})")
    for (i, j) in complex.incidental_pairs:
        for a in dihedral_window(i, depth):
            for b in dihedral_window(j, depth):
                relators.append(reduce(commutator(a, b)))
                prov.append(f"commutator lines ({i},{j})")
    return GroupPresentation(
        generators=surface_generators(n),
        relators=tuple(relators),
        name=f"pi1_affine_complement(n={n},depth={depth})",
        n=n,
        provenance=tuple(prov),
    )


def positivize(w: FreeWord) -> FreeWord:
    """Replace every inverse letter by the letter itself (valid mod squares)."""
    return FreeWord(tuple((g, 1) for g, _ in w.letters))


def quotient_squares(p: GroupPresentation) -> GroupPresentation:
    """Kill the squares of all surface generators.

    Relators are rewritten in positive form (equal modulo the new square
    relators) and one square per generator is appended; idempotent up to
    duplicate removal.
    """
    surface = [g for g in p.generators if g.namespace == SURFACE]
    if not surface:
        raise ValueError("presentation has no surface generators")
    relators = []
    prov = []
    seen = set()
    for rel, pv in zip(p.relators, p.provenance or [""] * len(p.relators)):
        w = positivize(rel)
        if w.letters and w.letters not in seen:
            seen.add(w.letters)
            relators.append(w)
            prov.append(pv)
    for g in surface:
        sq = word(g, g)
        if sq.letters not in seen:
            seen.add(sq.letters)
            relators.append(sq)
            prov.append(f"square {g.token()}")
    return replace(
        p,
        relators=tuple(relators),
        provenance=tuple(prov),
        name=p.name + "+squares",
    )


def projective_relator(n: int) -> FreeWord:
    letters = []
    for j in range(1, 2 * n + 1):
        letters.append(surface_gen(j))
        letters.append(surface_gen(j, True))
    return word(*letters)


def add_projective_relation(p: GroupPresentation) -> GroupPresentation:
    if not any(g.namespace == SURFACE for g in p.generators):
        raise ValueError("presentation has no surface generators")
    rel = projective_relator(p.n)
    return replace(
        p,
        relators=p.relators + (rel,),
        provenance=(p.provenance or tuple("" for _ in p.relators)) + ("projective",),
        name=p.name + "+projective",
    )


def square_quotient_presentation(complex: IncidenceComplex, depth: int = 0, projective: bool = False) -> GroupPresentation:
    p = quotient_squares(complement_presentation(complex, depth))
    if projective:
        p = add_projective_relation(p)
    return p


# --- van Kampen route -------------------------------------------------------

def relators_from_factor(f: MonodromyFactor) -> list[FreeWord]:
    """Relator(s) a monodromy factor induces on the complement group.

    Branch factors identify the two transported endpoint loops, nodes make
    them commute, cusps impose the triple relation.
    """
    a, b = f.transported_loops()
    if f.exponent == 1:
        return [concat(b.inverse(), a)]
    if f.exponent == 2:
        return [reduce(commutator(a, b))]
    if f.exponent == 3:
        return [triple_relator(a, b)]
    raise ValueError(f"unexpected exponent {f.exponent}")


def presentation_from_factorization(complex: IncidenceComplex) -> GroupPresentation:
    """Complement-group presentation read off the monodromy factors."""
    relators: list[FreeWord] = []
    prov: list[str] = []
    for f in full_factorization(complex):
        for rel in relators_from_factor(f):
            relators.append(rel)
            prov.append(f"{f.kind} {f.source}")
    return GroupPresentation(
        generators=surface_generators(complex.n),
        relators=tuple(relators),
        name=f"pi1_affine_complement_vankampen(n={complex.n})",
        n=complex.n,
        provenance=tuple(prov),
    )


# --- Tietze cleanup ---------------------------------------------------------

@dataclass
class TietzeLimits:
    max_passes: int = 10
    max_relator_length: int = 10_000


def tietze_simplify(p: GroupPresentation, limits: Optional[TietzeLimits] = None) -> GroupPresentation:
    """Cheap relator cleanup: free reduction, deduplication, and elimination
    of generators occurring exactly once in a single relator."""
    limits = limits or TietzeLimits()
    gens = list(p.generators)
    rels = [reduce(r) for r in p.relators]
    for _ in range(limits.max_passes):
        changed = False
        seen: dict[tuple, int] = {}
        cleaned: list[FreeWord] = []
        for r in rels:
            r = reduce(r)
            if not r.letters:
                changed = True
                continue
            key = cyclic_normal_form(r).letters
            if key in seen:
                changed = True
                continue
            seen[key] = 1
            cleaned.append(r)
        rels = cleaned

        eliminated = None
        for ridx, r in enumerate(rels):
            counts: dict[GeneratorId, int] = {}
            for g, _ in r.letters:
                counts[g] = counts.get(g, 0) + 1
            for g, cnt in counts.items():
                if cnt != 1:
                    continue
                if sum(1 for rr in rels for h, _ in rr.letters if h == g) != 1:
                    continue
                pos = next(i for i, (h, _) in enumerate(r.letters) if h == g)
                gexp = r.letters[pos][1]
                rest = FreeWord(r.letters[pos + 1:] + r.letters[:pos])
                image = rest.inverse() if gexp == 1 else rest
                if len(image) > limits.max_relator_length:
                    continue
                eliminated = (ridx, g, image)
                break
            if eliminated:
                break
        if eliminated:
            ridx, g, image = eliminated
            del rels[ridx]
            sub = {h: word(h) for h in gens if h != g}
            sub[g] = image
            rels = [reduce(substitute(r, sub)) for r in rels]
            gens.remove(g)
            changed = True
        if not changed:
            break
    return GroupPresentation(
        generators=tuple(gens),
        relators=tuple(rels),
        name=p.name + "+tietze",
        n=p.n,
        provenance=(),
        gen_names=p.gen_names,
    )
