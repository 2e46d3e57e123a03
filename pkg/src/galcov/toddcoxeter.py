"""Todd-Coxeter coset enumeration, relator-table driven (HLT style).

Every live coset is scanned against every relator; gaps are filled by new
definitions, mismatches feed a union-find coincidence queue whose merges
keep the table symmetric.  When the table fills, dead cosets are compacted
in place and the run continues, so the coset budget bounds the live table,
not the raw definition count.  The inner loops are compiled with numba
when available (set GALCOV_NO_NUMBA=1 to force the pure-Python twin built
from the same code).  A complete enumeration is deterministic and its
count independent of the relator processing order.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .presentation import GroupPresentation
from .words import FreeWord, GeneratorId

STATUS_COMPLETE = "complete"
STATUS_BUDGET = "budget-exceeded"

_UNDEF = -1


def _compile_words(
    p: GroupPresentation, words: Sequence[FreeWord]
) -> tuple[np.ndarray, np.ndarray]:
    """Encode words as flat arrays of column indices (gen i -> 2i, inverse -> 2i+1)."""
    col = {g: 2 * i for i, g in enumerate(p.generators)}
    flat: list[int] = []
    offsets = [0]
    for w in words:
        for g, e in w.letters:
            flat.append(col[g] + (0 if e == 1 else 1))
        offsets.append(len(flat))
    return np.asarray(flat, dtype=np.int64), np.asarray(offsets, dtype=np.int64)


def _find_impl(p, x):
    r = x
    while p[r] != r:
        r = p[r]
    while p[x] != r:
        nxt = p[x]
        p[x] = r
        x = nxt
    return r


def _make_coincidence(find):
    def coincidence(table, p, queue, a, b, ncols):
        a = find(p, a)
        b = find(p, b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        p[b] = a
        queue[0] = b
        head, tail = 0, 1
        while head < tail:
            dead = queue[head]
            head += 1
            for x in range(ncols):
                delta = table[dead, x]
                if delta == _UNDEF:
                    continue
                table[delta, x ^ 1] = _UNDEF
                mu = find(p, dead)
                nu = find(p, delta)
                if table[mu, x] != _UNDEF:
                    u = find(p, nu)
                    v = find(p, table[mu, x])
                    if u != v:
                        if u > v:
                            u, v = v, u
                        p[v] = u
                        queue[tail] = v
                        tail += 1
                elif table[nu, x ^ 1] != _UNDEF:
                    u = find(p, mu)
                    v = find(p, table[nu, x ^ 1])
                    if u != v:
                        if u > v:
                            u, v = v, u
                        p[v] = u
                        queue[tail] = v
                        tail += 1
                else:
                    table[mu, x] = nu
                    table[nu, x ^ 1] = mu

    return coincidence


def _compact_impl(table, p, map_, ncos, alpha, ncols):
    """Renumber live cosets to the front; returns (live_count, new_alpha).

    Live rows only reference live cosets, so remapping entries through the
    monotone live-prefix map is enough; alpha must be live.
    """
    new = 0
    for old in range(ncos):
        if p[old] == old:
            map_[old] = new
            new += 1
        else:
            map_[old] = -1
    for old in range(ncos):
        nw = map_[old]
        if nw < 0:
            continue
        for x in range(ncols):
            v = table[old, x]
            if v == _UNDEF:
                table[nw, x] = _UNDEF
            else:
                table[nw, x] = map_[v]
    for r in range(new, ncos):
        for x in range(ncols):
            table[r, x] = _UNDEF
    for r in range(ncos):
        p[r] = r
    return new, map_[alpha]


def _make_scan(coincidence, compact):
    def scan_word(table, p, queue, map_, alpha, flat, lo, hi, ncols, ncos, cap):
        """Trace one word from alpha, defining cosets as needed to close it.

        Returns (ncos, status, alpha): status 0 ok, 1 out of capacity;
        alpha is remapped when a compaction happened.
        """
        if hi == lo:
            return ncos, 0, alpha
        while True:
            f = alpha
            i = lo
            while i < hi and table[f, flat[i]] != _UNDEF:
                f = table[f, flat[i]]
                i += 1
            if i == hi:
                if f != alpha:
                    coincidence(table, p, queue, f, alpha, ncols)
                return ncos, 0, alpha
            b = alpha
            j = hi - 1
            while j >= i and table[b, flat[j] ^ 1] != _UNDEF:
                b = table[b, flat[j] ^ 1]
                j -= 1
            if j < i:
                if f != b:
                    coincidence(table, p, queue, f, b, ncols)
                return ncos, 0, alpha
            if j == i:
                table[f, flat[i]] = b
                table[b, flat[i] ^ 1] = f
                return ncos, 0, alpha
            if ncos >= cap:
                new, new_alpha = compact(table, p, map_, ncos, alpha, ncols)
                if cap - new < max(1, cap // 16):
                    return new, 1, new_alpha
                ncos = new
                alpha = new_alpha
                continue  # rescan from the start of the word
            beta = ncos
            ncos += 1
            p[beta] = beta
            table[f, flat[i]] = beta
            table[beta, flat[i] ^ 1] = f

    return scan_word


def _make_enumerate(scan_word, compact):
    def enumerate_cosets(table, p, queue, map_, rel_flat, rel_off, sub_flat, sub_off, ncols):
        cap = table.shape[0]
        nrel = rel_off.shape[0] - 1
        nsub = sub_off.shape[0] - 1
        ncos = 1
        alpha = 0  # coset 0 is the subgroup; it never dies nor moves
        for w in range(nsub):
            ncos, status, alpha = scan_word(
                table, p, queue, map_, 0, sub_flat, sub_off[w], sub_off[w + 1], ncols, ncos, cap
            )
            if status == 1:
                return ncos, 1
        alpha = 0
        while alpha < ncos:
            if p[alpha] != alpha:
                alpha += 1
                continue
            died = False
            for w in range(nrel):
                ncos, status, alpha = scan_word(
                    table, p, queue, map_, alpha, rel_flat, rel_off[w], rel_off[w + 1], ncols, ncos, cap
                )
                if status == 1:
                    return ncos, 1
                if p[alpha] != alpha:
                    died = True
                    break
            if not died:
                x = 0
                while x < ncols:
                    if table[alpha, x] == _UNDEF:
                        if ncos >= cap:
                            new, alpha = compact(table, p, map_, ncos, alpha, ncols)
                            if cap - new < max(1, cap // 16):
                                return new, 1
                            ncos = new
                            continue  # row moved; recheck the same column
                        beta = ncos
                        ncos += 1
                        p[beta] = beta
                        table[alpha, x] = beta
                        table[beta, x ^ 1] = alpha
                    x += 1
            alpha += 1
        return ncos, 0

    return enumerate_cosets


def _build_engine(jit: bool):
    if jit:
        from numba import njit

        wrap = njit(cache=True)
    else:
        wrap = lambda f: f  # noqa: E731
    find = wrap(_find_impl)
    compact = wrap(_compact_impl)
    coincidence = wrap(_make_coincidence(find))
    scan = wrap(_make_scan(coincidence, compact))
    return wrap(_make_enumerate(scan, compact))


_engines: dict[bool, object] = {}


def _get_engine(use_numba: bool):
    key = bool(use_numba)
    if key not in _engines:
        if key:
            try:
                _engines[key] = _build_engine(True)
            except Exception:  # pragma: no cover - numba present in the dev image
                _engines[key] = _build_engine(False)
        else:
            _engines[key] = _build_engine(False)
    return _engines[key]


@dataclass
class CosetTable:
    status: str
    coset_count: int
    generators: tuple[GeneratorId, ...]
    max_cosets: int
    defined: int

    @property
    def complete(self) -> bool:
        return self.status == STATUS_COMPLETE


def todd_coxeter(
    p: GroupPresentation,
    subgroup_gens: Sequence[FreeWord] = (),
    max_cosets: int = 4_000_000,
    strategy: str = "given",
    start_capacity: Optional[int] = None,
    use_numba: Optional[bool] = None,
) -> CosetTable:
    """Enumerate cosets of the subgroup; exact index on completion.

    ``max_cosets`` bounds the live table (dead cosets are compacted away).
    ``strategy`` permutes the relator processing order ("given", "reversed",
    "sorted"); a complete enumeration's coset count is independent of it.
    A budget overrun is reported, never silently truncated.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be >= 1")
    if use_numba is None:
        use_numba = os.environ.get("GALCOV_NO_NUMBA", "") != "1"
    relators = list(p.relators)
    if strategy == "reversed":
        relators = relators[::-1]
    elif strategy == "sorted":
        relators = sorted(relators, key=lambda w: (len(w.letters), str(w)))
    elif strategy != "given":
        raise ValueError(f"unknown strategy {strategy!r}")

    rel_flat, rel_off = _compile_words(p, relators)
    sub_flat, sub_off = _compile_words(p, list(subgroup_gens))
    ncols = 2 * len(p.generators)
    run = _get_engine(use_numba)

    cap = start_capacity or min(max_cosets, 1 << 14)
    cap = int(min(max(cap, 64), max_cosets))
    while True:
        table = np.full((cap, ncols), _UNDEF, dtype=np.int32)
        parent = np.arange(cap, dtype=np.int32)
        queue = np.zeros(cap, dtype=np.int32)
        map_ = np.zeros(cap, dtype=np.int32)
        ncos, status = run(
            table, parent, queue, map_, rel_flat, rel_off, sub_flat, sub_off, ncols
        )
        if status == 0:
            live = int(np.sum(parent[:ncos] == np.arange(ncos, dtype=np.int32)))
            return CosetTable(
                status=STATUS_COMPLETE,
                coset_count=live,
                generators=p.generators,
                max_cosets=max_cosets,
                defined=int(ncos),
            )
        if cap >= max_cosets:
            return CosetTable(
                status=STATUS_BUDGET,
                coset_count=-1,
                generators=p.generators,
                max_cosets=max_cosets,
                defined=int(ncos),
            )
        cap = int(min(max_cosets, cap * 4))
