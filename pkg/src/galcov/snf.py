"""Exact integer matrices, abelianization, and Smith normal form.

Relator matrices are tall and very sparse, so rows are first folded into a
small working basis by fraction-free row elimination (one row per pivot
column) and the dense Smith reduction runs on that basis only.  All
arithmetic is arbitrary-precision; a naive textbook diagonalization serves
as an independent oracle in the tests.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

from .presentation import GroupPresentation


@dataclass
class IntegerMatrix:
    """Sparse row-major integer matrix."""

    ncols: int
    rows: list[dict[int, int]]

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]]) -> "IntegerMatrix":
        ncols = len(dense[0]) if dense else 0
        rows = [
            {j: int(v) for j, v in enumerate(row) if v}
            for row in dense
        ]
        return cls(ncols=ncols, rows=rows)

    def to_dense(self) -> list[list[int]]:
        return [[row.get(j, 0) for j in range(self.ncols)] for row in self.rows]

    @property
    def nrows(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class SNFResult:
    invariant_factors: tuple[int, ...]  # nonzero d_1 | d_2 | ...
    free_rank: int

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d != 1)

    def describe(self) -> str:
        tors = "+".join(f"Z/{d}" for d in self.torsion) or "0"
        return f"Z^{self.free_rank} (+ {tors})" if self.torsion else f"Z^{self.free_rank}"


def abelianize(p: GroupPresentation) -> IntegerMatrix:
    """Relator exponent-sum matrix: one row per relator, one column per generator."""
    col = {g: i for i, g in enumerate(p.generators)}
    rows = []
    for rel in p.relators:
        row: dict[int, int] = {}
        for g, e in rel.letters:
            j = col[g]
            row[j] = row.get(j, 0) + e
        rows.append({j: v for j, v in row.items() if v})
    return IntegerMatrix(ncols=len(p.generators), rows=rows)


def _row_reduce_basis(m: IntegerMatrix) -> list[dict[int, int]]:
    """Fold all rows into at most ncols basis rows (integer row echelon).

    For each pivot column keeps one row; incoming rows are combined with the
    resident via the extended gcd, which keeps entries modest for the
    near-unimodular relator matrices seen here.
    """
    basis: dict[int, dict[int, int]] = {}  # pivot column -> row
    for row in m.rows:
        row = dict(row)
        while row:
            c = min(row)
            if c not in basis:
                basis[c] = row
                break
            res = basis[c]
            a, b = res[c], row[c]
            g, x, y = _xgcd(a, b)
            if g == abs(a):
                # resident divides incoming: just eliminate
                q = -(b // a)
                row = _add_rows(row, res, q)
            else:
                new_res = _comb_rows(res, row, x, y)
                new_row = _comb_rows(res, row, -(b // g), a // g)
                basis[c] = new_res
                row = new_row
            row.pop(c, None)
    return [basis[c] for c in sorted(basis)]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _add_rows(row: dict[int, int], other: dict[int, int], q: int) -> dict[int, int]:
    if q == 0:
        return row
    out = dict(row)
    for j, v in other.items():
        w = out.get(j, 0) + q * v
        if w:
            out[j] = w
        else:
            out.pop(j, None)
    return out


def _comb_rows(r1: dict[int, int], r2: dict[int, int], c1: int, c2: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for j, v in r1.items():
        out[j] = c1 * v
    for j, v in r2.items():
        w = out.get(j, 0) + c2 * v
        if w:
            out[j] = w
        else:
            out.pop(j, None)
    out = {j: v for j, v in out.items() if v}
    return out


def smith_normal_form(m: IntegerMatrix) -> SNFResult:
    """Invariant factors with the divisibility chain, exactly."""
    basis = _row_reduce_basis(m)
    if not basis:
        return SNFResult((), m.ncols)
    cols = sorted({j for row in basis for j in row})
    colmap = {c: i for i, c in enumerate(cols)}
    dense = [[0] * len(cols) for _ in basis]
    for i, row in enumerate(basis):
        for j, v in row.items():
            dense[i][colmap[j]] = v
    factors = _snf_dense(dense)
    nonzero = tuple(d for d in factors if d)
    return SNFResult(nonzero, m.ncols - len(nonzero))


def naive_smith_normal_form(m: IntegerMatrix) -> SNFResult:
    """Textbook diagonalization without preprocessing; the test oracle."""
    dense = m.to_dense()
    factors = _snf_dense([list(r) for r in dense]) if dense else ()
    nonzero = tuple(d for d in factors if d)
    return SNFResult(nonzero, m.ncols - len(nonzero))


def _snf_dense(a: list[list[int]]) -> list[int]:
    rows, cols = len(a), len(a[0]) if a else 0
    t = 0
    factors: list[int] = []
    while t < rows and t < cols:
        piv = _find_pivot(a, t)
        if piv is None:
            break
        _move_pivot(a, t, piv)
        while True:
            _clear_cross(a, t)
            offender = _divisibility_offender(a, t, abs(a[t][t]))
            if offender is None:
                break
            i, _ = offender
            for jj in range(cols):  # a[i][t] is already 0, pivot column stays clear
                a[t][jj] += a[i][jj]
        factors.append(abs(a[t][t]))
        t += 1
    _normalize_chain(factors)
    return factors


def _clear_cross(a: list[list[int]], t: int) -> None:
    """Euclidean elimination until row t and column t are zero off the pivot."""
    rows, cols = len(a), len(a[0])
    while True:
        if a[t][t] < 0:
            for jj in range(cols):
                a[t][jj] = -a[t][jj]
        for i in range(t + 1, rows):
            if a[i][t]:
                q = a[i][t] // a[t][t]
                if q:
                    for jj in range(cols):
                        a[i][jj] -= q * a[t][jj]
                if a[i][t]:  # nonzero remainder becomes the smaller pivot
                    a[t], a[i] = a[i], a[t]
                break
        else:
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    if q:
                        for ii in range(rows):
                            a[ii][j] -= q * a[ii][t]
                    if a[t][j]:
                        for ii in range(rows):
                            a[ii][t], a[ii][j] = a[ii][j], a[ii][t]
                    break
            else:
                return


def _find_pivot(a: list[list[int]], t: int) -> Optional[tuple[int, int]]:
    best = None
    for i in range(t, len(a)):
        for j in range(t, len(a[0])):
            v = abs(a[i][j])
            if v and (best is None or v < best[0]):
                best = (v, i, j)
                if v == 1:
                    return (i, j)
    return None if best is None else (best[1], best[2])


def _move_pivot(a: list[list[int]], t: int, piv: tuple[int, int]) -> None:
    i, j = piv
    if i != t:
        a[t], a[i] = a[i], a[t]
    if j != t:
        for row in a:
            row[t], row[j] = row[j], row[t]


def _divisibility_offender(a: list[list[int]], t: int, d: int) -> Optional[tuple[int, int]]:
    for i in range(t + 1, len(a)):
        for j in range(t + 1, len(a[0])):
            if a[i][j] % d:
                return (i, j)
    return None


def _normalize_chain(factors: list[int]) -> None:
    # pairwise gcd/lcm sweep guarantees d_1 | d_2 | ...
    changed = True
    while changed:
        changed = False
        for i in range(len(factors) - 1):
            a, b = factors[i], factors[i + 1]
            g = gcd(a, b)
            l = a // g * b
            if (g, l) != (a, b):
                factors[i], factors[i + 1] = g, l
                changed = True
