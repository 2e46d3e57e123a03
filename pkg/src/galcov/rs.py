"""Presenting the kernel of the sheet monodromy by Reidemeister-Schreier.

The splitting of the monodromy makes the symmetric group itself a Schreier
transversal, so cosets are represented directly by permutations.  Rewriting
a kernel word produces symbols X_sigma, B_sigma, A_{sigma,j}; these depend
only on where sigma^-1 sends 1 and 2, which collapses the alphabet to the
pair-indexed generators A_kl, X_kl of the reduced presentations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .permutations import (
    Permutation,
    all_permutations,
    generator_transposition,
    identity_perm,
    phi_word_cached,
)
from .presentation import GroupPresentation
from .words import (
    SURFACE,
    FreeWord,
    GeneratorId,
    concat,
    kernel_gen,
    reduce,
)

X_SIGMA = "X_sigma"
B_SIGMA = "B_sigma"
A_SIGMA_J = "A_sigma_j"
AKL = "Akl"
XKL = "Xkl"
BKL = "Bkl"
CKL = "Ckl"


@dataclass(frozen=True)
class KernelSymbol:
    """Kernel generator symbol: raw (per coset) or pair-indexed (reduced)."""

    kind: str
    sigma: Optional[tuple[int, ...]] = None  # coset, as permutation images
    j: Optional[int] = None  # line index for A_{sigma,j}
    k: Optional[int] = None
    l: Optional[int] = None

    def __post_init__(self):
        if self.kind in (AKL, XKL, BKL, CKL):
            if self.k is None or self.l is None or self.k == self.l:
                raise ValueError(f"{self.kind} needs distinct pair indices, got ({self.k},{self.l})")
        elif self.kind in (X_SIGMA, B_SIGMA, A_SIGMA_J):
            if self.sigma is None:
                raise ValueError(f"{self.kind} needs a coset permutation")
            if self.kind == A_SIGMA_J and self.j is None:
                raise ValueError("A_sigma_j needs a line index")
        else:
            raise ValueError(f"unknown symbol kind {self.kind!r}")

    def display(self) -> str:
        if self.kind == X_SIGMA:
            return f"X[{Permutation(self.sigma).cycle_string()}]"
        if self.kind == B_SIGMA:
            return f"B[{Permutation(self.sigma).cycle_string()}]"
        if self.kind == A_SIGMA_J:
            return f"A[{Permutation(self.sigma).cycle_string()},{self.j}]"
        return f"{self.kind[0]}[{self.k},{self.l}]"


def a_sigma(sigma: Permutation, j: int) -> KernelSymbol:
    return KernelSymbol(A_SIGMA_J, sigma=sigma.images, j=j)


def x_sigma(sigma: Permutation) -> KernelSymbol:
    return KernelSymbol(X_SIGMA, sigma=sigma.images)


def b_sigma(sigma: Permutation) -> KernelSymbol:
    return KernelSymbol(B_SIGMA, sigma=sigma.images)


def akl(k: int, l: int) -> KernelSymbol:
    return KernelSymbol(AKL, k=k, l=l)


def xkl(k: int, l: int) -> KernelSymbol:
    return KernelSymbol(XKL, k=k, l=l)


SymbolWord = list[tuple[KernelSymbol, int]]


def gamma(sigma: Permutation, g: GeneratorId) -> Optional[tuple[KernelSymbol, int]]:
    """Schreier generator of a coset/generator pair; None when trivial.

    Unprimed generators other than the first lie in the transversal, so
    their gamma is trivial; primed ones give A_{sigma,j}^-1 and the first
    pair gives X_sigma^-1, B_sigma^-1.
    """
    if g.namespace != SURFACE:
        raise ValueError(f"gamma expects a surface generator, got {g.token()}")
    if g.index == 1:
        return (b_sigma(sigma), -1) if g.primed else (x_sigma(sigma), -1)
    if g.primed:
        return (a_sigma(sigma, g.index), -1)
    return None


def tau_rewrite(w: FreeWord, n: int) -> SymbolWord:
    """Rewrite a kernel word as a product of Schreier generators.

    Prefix cosets are tracked through psi; raises if w is not in the kernel.
    """
    sigma = identity_perm(2 * n)
    out: SymbolWord = []

    def push(item: tuple[KernelSymbol, int]) -> None:
        if out and out[-1][0] == item[0] and out[-1][1] == -item[1]:
            out.pop()
        else:
            out.append(item)

    for g, e in w.letters:
        t = generator_transposition(g.index, n)
        if e == 1:
            sym = gamma(sigma, g)
            if sym is not None:
                push(sym)
            sigma = sigma * t
        else:
            sigma = sigma * t  # t is an involution
            sym = gamma(sigma, g)
            if sym is not None:
                push((sym[0], -sym[1]))
    if not sigma.is_identity():
        raise ValueError(f"word is not in the kernel: residual coset {sigma.cycle_string()}")
    return out


# --- reduction to the pair alphabet ----------------------------------------

def _pair_of(sigma: tuple[int, ...]) -> tuple[int, int]:
    inv = Permutation(sigma).inverse()
    return (inv(1), inv(2))


def _smallest_excluding(n2: int, forbidden: set[int]) -> int:
    for x in range(1, n2 + 1):
        if x not in forbidden:
            return x
    raise ValueError("no admissible auxiliary index")


def reduce_to_AX(sym: KernelSymbol, n: int) -> SymbolWord:
    """Expand a raw symbol as a word in the pair generators A_kl, X_kl.

    X_sigma and A_{sigma,1} depend only on the preimages of 1 and 2; the
    remaining A_{sigma,j} expand through the translation table
    A_{I,j} = A_{j-1,x} A_{j,x}^-1 (A_{I,2} = A_{2n,x} A_{1,x}^-1) pushed
    through the conjugation action, and B_sigma = X_kl A_kl.
    """
    n2 = 2 * n
    if sym.kind in (AKL, XKL):
        return [(sym, 1)]
    if sym.kind == BKL:
        return [(xkl(sym.k, sym.l), 1), (akl(sym.k, sym.l), 1)]
    if sym.kind == CKL:
        return [(xkl(sym.k, sym.l), 1), (akl(sym.k, sym.l), 1), (akl(sym.k, sym.l), 1)]
    if sym.kind == X_SIGMA:
        k, l = _pair_of(sym.sigma)
        return [(xkl(k, l), 1)]
    if sym.kind == B_SIGMA:
        k, l = _pair_of(sym.sigma)
        return [(xkl(k, l), 1), (akl(k, l), 1)]
    # A_{sigma,j}
    j = sym.j
    inv = Permutation(sym.sigma).inverse()
    if j == 1:
        return [(akl(inv(1), inv(2)), 1)]
    if j == 2:
        hi, lo = n2, 1
        x = _smallest_excluding(n2, {1, n2})
    else:
        hi, lo = j - 1, j
        x = _smallest_excluding(n2, {j - 1, j})
    # A_{I,j} = A_{hi,x} A_{lo,x}^-1 conjugated by sigma
    return [
        (akl(inv(hi), inv(x)), 1),
        (akl(inv(lo), inv(x)), -1),
    ]


def identify_word(symbols: SymbolWord, n: int) -> SymbolWord:
    """Map a raw symbol word into the pair alphabet, with free reduction."""
    out: SymbolWord = []
    for sym, e in symbols:
        expansion = reduce_to_AX(sym, n)
        if e == -1:
            expansion = [(s, -f) for s, f in reversed(expansion)]
        for item in expansion:
            if out and out[-1][0] == item[0] and out[-1][1] == -item[1]:
                out.pop()
            else:
                out.append(item)
    return out


# --- raw kernel presentation -------------------------------------------------

@dataclass(frozen=True)
class KernelIndexing:
    """Fixed numbering of raw kernel symbols for one value of n."""

    n: int
    cosets: tuple[tuple[int, ...], ...]

    @classmethod
    def make(cls, n: int) -> "KernelIndexing":
        perms = sorted(p.images for p in all_permutations(2 * n))
        return cls(n=n, cosets=tuple(perms))

    @property
    def symbols_per_coset(self) -> int:
        return 2 * self.n + 2

    def coset_index(self, sigma: tuple[int, ...]) -> int:
        import bisect

        i = bisect.bisect_left(self.cosets, sigma)
        if i == len(self.cosets) or self.cosets[i] != sigma:
            raise KeyError(f"unknown coset {sigma}")
        return i

    def generator_id(self, sym: KernelSymbol) -> GeneratorId:
        c = self.coset_index(sym.sigma)
        if sym.kind == X_SIGMA:
            offset = 0
        elif sym.kind == B_SIGMA:
            offset = 1
        else:
            offset = 1 + sym.j
        return kernel_gen(c * self.symbols_per_coset + offset + 1)

    def symbol_of(self, g: GeneratorId) -> KernelSymbol:
        idx = g.index - 1
        c, offset = divmod(idx, self.symbols_per_coset)
        sigma = self.cosets[c]
        if offset == 0:
            return KernelSymbol(X_SIGMA, sigma=sigma)
        if offset == 1:
            return KernelSymbol(B_SIGMA, sigma=sigma)
        return KernelSymbol(A_SIGMA_J, sigma=sigma, j=offset - 1)


def _symbolword_to_freeword(symbols: SymbolWord, to_id) -> FreeWord:
    return reduce(FreeWord(tuple((to_id(s), e) for s, e in symbols)))


def kernel_presentation(
    quotient_pres: GroupPresentation,
    n: int,
    max_cosets: int = 50_000,
) -> GroupPresentation:
    """Raw Reidemeister-Schreier presentation of the kernel.

    Generators are all X_sigma, B_sigma, A_{sigma,j}; relators are the
    rewrites tau(sigma r sigma^-1) over all cosets sigma together with the
    definitions A_{sigma,1} = X_sigma^-1 B_sigma.
    """
    order = math.factorial(2 * n)
    if order > max_cosets:
        raise ValueError(
            f"(2n)! = {order} cosets exceeds the configured budget {max_cosets}"
        )
    indexing = KernelIndexing.make(n)
    gens = [
        indexing.generator_id(sym)
        for c in indexing.cosets
        for sym in (
            KernelSymbol(X_SIGMA, sigma=c),
            KernelSymbol(B_SIGMA, sigma=c),
            *(KernelSymbol(A_SIGMA_J, sigma=c, j=j) for j in range(1, 2 * n + 1)),
        )
    ]
    names = {indexing.generator_id(s): s.display() for s in map(indexing.symbol_of, gens)}

    relators: list[FreeWord] = []
    prov: list[str] = []
    for c in indexing.cosets:
        sigma = Permutation(c)
        wsigma = phi_word_cached(sigma, n)
        for rel, pv in zip(quotient_pres.relators, quotient_pres.provenance or [""] * len(quotient_pres.relators)):
            conj = concat(wsigma, rel, wsigma.inverse())
            symbols = tau_rewrite(conj, n)
            fw = _symbolword_to_freeword(symbols, indexing.generator_id)
            relators.append(fw)
            prov.append(f"tau[{sigma.cycle_string()}] {pv}")
        # defining relation of the composite symbol A_{sigma,1}
        defining = [
            (KernelSymbol(A_SIGMA_J, sigma=c, j=1), -1),
            (KernelSymbol(X_SIGMA, sigma=c), -1),
            (KernelSymbol(B_SIGMA, sigma=c), 1),
        ]
        relators.append(_symbolword_to_freeword(defining, indexing.generator_id))
        prov.append(f"define A[{sigma.cycle_string()},1]")

    return GroupPresentation(
        generators=tuple(gens),
        relators=tuple(relators),
        name=f"kernel_raw(n={n})" + ("+projective" if "projective" in quotient_pres.name else ""),
        n=n,
        provenance=tuple(prov),
        gen_names=names,
    )


# --- reduced pair-alphabet presentations -------------------------------------

def pair_generator_id(kind: str, k: int, l: int, n: int) -> GeneratorId:
    n2 = 2 * n
    base = (k - 1) * n2 + (l - 1)
    offset = 0 if kind == AKL else n2 * n2
    return kernel_gen(base + offset + 1)


def pair_symbol_of(g: GeneratorId, n: int) -> KernelSymbol:
    n2 = 2 * n
    idx = g.index - 1
    kind = AKL if idx < n2 * n2 else XKL
    idx %= n2 * n2
    k, l = divmod(idx, n2)
    return KernelSymbol(kind, k=k + 1, l=l + 1)


def pair_word(symbols: SymbolWord, n: int) -> FreeWord:
    return reduce(
        FreeWord(tuple((pair_generator_id(s.kind, s.k, s.l, n), e) for s, e in symbols))
    )


def _xa_power(k: int, l: int, m: int) -> SymbolWord:
    """X_kl A_kl^m as a symbol word."""
    out: SymbolWord = [(xkl(k, l), 1)]
    step = 1 if m >= 0 else -1
    for _ in range(abs(m)):
        out.append((akl(k, l), step))
    return out


def reduced_kernel_presentation(n: int, window: int = 2) -> GroupPresentation:
    """Reduced kernel presentation on the pair generators.

    The exponent family is instantiated for every exponent in -window..window
    together with the four-index difference relations.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    n2 = 2 * n
    gens = []
    names = {}
    for kind in (AKL, XKL):
        for k in range(1, n2 + 1):
            for l in range(1, n2 + 1):
                if k != l:
                    gid = pair_generator_id(kind, k, l, n)
                    gens.append(gid)
                    names[gid] = f"{kind[0]}[{k},{l}]"
    relators: list[FreeWord] = []
    prov: list[str] = []

    def add(symbols: SymbolWord, pv: str) -> None:
        w = pair_word(symbols, n)
        relators.append(w)
        prov.append(pv)

    idx = range(1, n2 + 1)
    for m in range(-window, window + 1):
        for i in idx:
            for j in idx:
                if i == j:
                    continue
                add(
                    _xa_power(j, i, m) + _xa_power(i, j, m),
                    f"inverse pair (i,j)=({i},{j}) exponent {m}",
                )
        for i in idx:
            for j in idx:
                for k in idx:
                    if len({i, j, k}) != 3:
                        continue
                    add(
                        _xa_power(i, j, m) + _xa_power(j, k, m) + _xa_power(k, i, m),
                        f"cycle (i,j,k)=({i},{j},{k}) exponent {m}",
                    )
                    add(
                        _xa_power(j, k, m) + _xa_power(i, j, m) + _xa_power(k, i, m),
                        f"twisted cycle (i,j,k)=({i},{j},{k}) exponent {m}",
                    )
    for i in idx:
        for j in idx:
            for k in idx:
                for l in idx:
                    if len({i, j, k, l}) != 4:
                        continue
                    add(
                        [(akl(i, j), 1), (akl(i, k), -1), (akl(j, l), 1), (akl(k, l), -1)],
                        f"difference ({i},{j},{k},{l})",
                    )
    return GroupPresentation(
        generators=tuple(gens),
        relators=tuple(relators),
        name=f"kernel_reduced(n={n},window={window})",
        n=n,
        provenance=tuple(prov),
        gen_names=names,
    )


def galois_presentation(n: int, window: int = 2) -> GroupPresentation:
    """Reduced presentation with the translated projective relation.

    Appends A_ij^-1 A_kj A_ik = 1 for all distinct triples; the instance
    A_32^-1 A_12 A_31 is the direct translation of the projective relator.
    """
    base = reduced_kernel_presentation(n, window)
    n2 = 2 * n
    relators = list(base.relators)
    prov = list(base.provenance)
    for i in range(1, n2 + 1):
        for j in range(1, n2 + 1):
            for k in range(1, n2 + 1):
                if len({i, j, k}) != 3:
                    continue
                relators.append(
                    pair_word([(akl(i, j), -1), (akl(k, j), 1), (akl(i, k), 1)], n)
                )
                prov.append(f"projective translate ({i},{j},{k})")
    return GroupPresentation(
        generators=base.generators,
        relators=tuple(relators),
        name=f"kernel_galois(n={n},window={window})",
        n=n,
        provenance=tuple(prov),
        gen_names=base.gen_names,
    )


def raw_symbol_count(n: int) -> int:
    return math.factorial(2 * n) * (2 * n + 2)
