#!/usr/bin/env python3
"""Sweep the certificate battery over (n, mod) configurations.

Usage: python scripts/run_verify.py [--configs 2:2,2:3,3:2] [--depth D]
Prints one row per configuration and exits nonzero on any failure.
"""
import argparse
import sys
import time

from galcov.analysis import abelianization_certificate, order_certificate


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--configs", default="2:2,2:3,3:2")
    ap.add_argument("--depth", type=int, default=0)
    ap.add_argument("--window", type=int, default=2)
    ap.add_argument("--max-cosets", type=int, default=4_000_000)
    args = ap.parse_args()

    configs = []
    for part in args.configs.split(","):
        n, m = part.split(":")
        configs.append((int(n), int(m)))

    print(f"{'n':>3} {'m':>3} {'expected':>12} {'enumerated':>12} {'snf':>8} {'ok':>4} {'secs':>8}")
    all_ok = True
    for n, m in configs:
        t0 = time.time()
        oc = order_certificate(n, m, depth=args.depth, max_cosets=args.max_cosets)
        ac = abelianization_certificate(n, window=args.window)
        ok = oc.ok and ac.ok
        all_ok &= ok
        print(
            f"{n:>3} {m:>3} {oc.expected_order:>12} {oc.table.coset_count:>12} "
            f"{ac.snf.describe():>8} {'yes' if ok else 'NO':>4} {time.time() - t0:>8.1f}"
        )
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
