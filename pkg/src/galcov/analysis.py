"""Certificates tying the presentations to the model groups.

The order certificate enumerates cosets of the finite quotient obtained by
killing m-th powers of the two kernel seeds; completion with count exactly
m^(4n-2) (2n)! together with a passing model homomorphism check pins the
quotient to the lattice-by-symmetric-group model.  The abelianization
certificate runs Smith normal form on the reduced kernel presentations.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace
from typing import Optional

from .degeneration import build_complex
from .model import lattice_images_span, model_group_make, model_hom_check
from .permutations import phi_word_cached, transposition
from .presentation import GroupPresentation, square_quotient_presentation
from .rs import galois_presentation, kernel_presentation
from .snf import SNFResult, abelianize, smith_normal_form
from .toddcoxeter import CosetTable, todd_coxeter
from .words import concat, power, surface_gen, word


def expected_quotient_order(n: int, m: int) -> int:
    return m ** (4 * n - 2) * math.factorial(2 * n)


def finite_quotient_presentation(
    quotient_proj: GroupPresentation, m: int, n: int
) -> GroupPresentation:
    """Add m-th powers of the kernel seeds Gamma_1 Gamma_1' and (12) Gamma_1.

    Their conjugates bound every pair generator's m-th power, so the kernel
    of the quotient collapses to ((Z/m)-lattice)^2 when the main theorem
    holds; the enumerated order then certifies it at this (n, m).
    """
    if m < 2:
        raise ValueError("m must be >= 2")
    g1, g1p = surface_gen(1), surface_gen(1, True)
    a_seed = word(g1, g1p)
    x_seed = concat(phi_word_cached(transposition(2 * n, 1, 2), n), word(g1))
    relators = quotient_proj.relators + (power(a_seed, m), power(x_seed, m))
    prov = (quotient_proj.provenance or tuple("" for _ in quotient_proj.relators)) + (
        f"pair-product seed^{m}",
        f"split-shift seed^{m}",
    )
    return replace(
        quotient_proj,
        relators=relators,
        provenance=prov,
        name=quotient_proj.name + f"+mod{m}",
    )


@dataclass
class OrderCertificate:
    n: int
    m: int
    depth: int
    expected_order: int
    table: CosetTable
    model_report_ok: bool
    seconds: float

    @property
    def ok(self) -> bool:
        return (
            self.table.complete
            and self.table.coset_count == self.expected_order
            and self.model_report_ok
        )


def order_certificate(
    n: int,
    m: int,
    depth: int = 0,
    max_cosets: int = 4_000_000,
    strategy: str = "given",
    use_numba: Optional[bool] = None,
) -> OrderCertificate:
    """Enumerate the finite quotient and compare with the model order."""
    t0 = time.time()
    c = build_complex(n)
    pt = square_quotient_presentation(c, depth=depth, projective=True)
    fq = finite_quotient_presentation(pt, m, n)
    expected = expected_quotient_order(n, m)
    table = todd_coxeter(
        fq,
        max_cosets=max_cosets,
        strategy=strategy,
        start_capacity=min(max_cosets, 2 * expected),
        use_numba=use_numba,
    )
    g = model_group_make(n, m)
    model_ok = model_hom_check(pt, g).ok and lattice_images_span(g)
    return OrderCertificate(
        n=n,
        m=m,
        depth=depth,
        expected_order=expected,
        table=table,
        model_report_ok=model_ok,
        seconds=time.time() - t0,
    )


@dataclass
class AbelianizationCertificate:
    n: int
    window: int
    snf: SNFResult
    expected_rank: int
    seconds: float
    raw_snf: Optional[SNFResult] = None

    @property
    def ok(self) -> bool:
        reduced_ok = self.snf.free_rank == self.expected_rank and not self.snf.torsion
        if self.raw_snf is None:
            return reduced_ok
        # unit factors are presentation-size artifacts; the isomorphism
        # invariants are the free rank and the torsion chain
        same = (
            self.raw_snf.free_rank == self.snf.free_rank
            and self.raw_snf.torsion == self.snf.torsion
        )
        return reduced_ok and same


def abelianization_certificate(
    n: int, window: int = 2, include_raw: bool = False, depth: int = 0
) -> AbelianizationCertificate:
    """SNF of the reduced kernel presentation; optionally of the raw one too."""
    t0 = time.time()
    p = galois_presentation(n, window=window)
    snf = smith_normal_form(abelianize(p))
    raw_snf = None
    if include_raw:
        c = build_complex(n)
        pt = square_quotient_presentation(c, depth=depth, projective=True)
        raw = kernel_presentation(pt, n)
        raw_snf = smith_normal_form(abelianize(raw))
    return AbelianizationCertificate(
        n=n,
        window=window,
        snf=snf,
        expected_rank=4 * n - 2,
        seconds=time.time() - t0,
        raw_snf=raw_snf,
    )
