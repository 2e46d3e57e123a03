#!/usr/bin/env python3
"""Search factor orderings whose product is the full twist.

Stage 1 enumerates all singularity orders of the unregenerated line
arrangement (one degree-2 factor per line pair) and keeps those whose
product is the full twist on 2n strands.  Stage 2 fixes one such order per
cyclic orbit and searches the packet-internal orders of the regenerated
factors on 4n strands.  The orders frozen into galcov.braids came out of
this script at n=2.

Usage: python scripts/ordering_search.py [--n 2] [--cap 6000]
"""
import argparse
import itertools
import sys
import time

from galcov.braids import (
    TwistPath,
    artin_apply,
    artin_apply_capped,
    braids_equal,
    factorization_product,
    fiber_generator,
    full_twist,
    half_twist,
    regenerate,
)
from galcov.degeneration import build_complex, three_point_lines
from galcov.words import word


def s0_factors(c):
    """Degree-2 factor per line pair of the unregenerated arrangement."""
    n2 = 2 * c.n
    out = {}
    for i in range(1, n2 + 1):
        for j in range(i + 1, n2 + 1):
            meets = c.lines_intersect(i, j)
            passages = []
            bj = c.second_vertex(j)
            for k in range(i + 1, j):
                if meets:
                    passages.append("under")
                else:
                    passages.append("under" if c.second_vertex(k) == bj else "over")
            out[(i, j)] = half_twist(TwistPath(i, j, tuple(passages)), 2, n2)
    return out


def stage1(c, limit):
    factors = s0_factors(c)
    pairs = sorted(factors)
    if len(pairs) > 7:
        print(f"stage 1 skipped: {len(pairs)}! orders is too many", file=sys.stderr)
        return []
    target = full_twist(2 * c.n)
    hits = []
    for order in itertools.permutations(pairs):
        prod = None
        for pr in order:
            prod = factors[pr] if prod is None else prod * factors[pr]
        if braids_equal(prod, target):
            hits.append(order)
            if len(hits) >= limit:
                break
    return hits


def orbit_representatives(hits):
    seen, reps = set(), []
    for h in hits:
        rotations = {tuple(h[i:] + h[:i]) for i in range(len(h))}
        if not rot_overlap(rotations, seen):
            reps.append(h)
        seen |= rotations
    return reps


def rot_overlap(rotations, seen):
    return any(r in seen for r in rotations)


def stage2(c, sequence, cap):
    m = 4 * c.n
    target_imgs = [artin_apply(full_twist(m), word(fiber_generator(p))) for p in range(1, m + 1)]
    pair_to_sing = {}
    for (i, j) in c.incidental_pairs:
        pair_to_sing[(i, j)] = ("node", i, j)
    for k in range(1, 2 * c.n + 1):
        v, d = three_point_lines(c, k)
        pair_to_sing[(min(v, d), max(v, d))] = ("three_point", k)
    hits = []
    for node_order in itertools.permutations(range(4)):
        for tp_order in itertools.permutations(range(4)):
            factors = []
            for pr in sequence:
                packet = regenerate(pair_to_sing[pr], c)
                idxs = node_order if pair_to_sing[pr][0] == "node" else tp_order
                factors.extend(packet[i] for i in idxs)
            prod = factorization_product(factors)
            good = True
            for pos in range(1, m + 1):
                img = artin_apply_capped(prod, word(fiber_generator(pos)), cap)
                if img is None or img != target_imgs[pos - 1]:
                    good = False
                    break
            if good:
                hits.append((node_order, tp_order))
    return hits


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--cap", type=int, default=6000, help="intermediate word length cap")
    ap.add_argument("--stage1-limit", type=int, default=1000)
    args = ap.parse_args()

    c = build_complex(args.n)
    t0 = time.time()
    hits = stage1(c, args.stage1_limit)
    print(f"stage 1: {len(hits)} singularity orders give the full twist ({time.time() - t0:.0f}s)")
    reps = orbit_representatives(hits)
    for rep in reps:
        print("  orbit:", rep)
    for rep in reps[:1]:
        t1 = time.time()
        internal = stage2(c, rep, args.cap)
        print(f"stage 2 under {rep}: {len(internal)} packet orders ({time.time() - t1:.0f}s)")
        for node_order, tp_order in internal:
            print(f"  node order {node_order}, three-point order {tp_order}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
