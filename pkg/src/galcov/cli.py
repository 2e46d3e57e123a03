"""Command-line pipeline driver.

Subcommands: degenerate, monodromy, presentation, psi, kernel, abelianize,
verify.  Machine-readable output is versioned JSON (schema 1); presentation
files use the shared text format.  Exit codes: 0 all checks pass, 1 a check
failed, 2 configuration or budget error.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import os
import sys
import tempfile
import time
from pathlib import Path
from typing import Optional

from . import __version__
from .analysis import (
    abelianization_certificate,
    expected_quotient_order,
    order_certificate,
)
from .braids import delta_squared_report, factor_census, factorization_permutation, full_factorization
from .degeneration import build_complex
from .model import check_derived_relations, lattice_images_span, model_group_make, model_hom_check
from .permutations import all_permutations, generator_transposition, generates_symmetric_group, phi_word, psi_eval
from .presentation import square_quotient_presentation, complement_presentation
from .presio import presentation_to_str
from .rs import galois_presentation, identify_word, kernel_presentation, tau_rewrite, reduced_kernel_presentation
from .snf import abelianize, smith_normal_form
from .words import surface_gen, word, word_from_str

log = logging.getLogger("galcov")

SCHEMA_VERSION = 1


@dataclasses.dataclass
class Check:
    name: str
    expected: object
    actual: object
    passed: bool
    seconds: float = 0.0
    note: str = ""


@dataclasses.dataclass
class Report:
    config: dict
    checks: list[Check]
    version: str = ""
    schema: int = SCHEMA_VERSION

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json_dict(self) -> dict:
        return {
            "schema": self.schema,
            "version": self.version,
            "config": self.config,
            "pass": self.passed,
            "checks": [
                {
                    "name": c.name,
                    "expected": c.expected,
                    "actual": c.actual,
                    "pass": c.passed,
                    "seconds": round(c.seconds, 3),
                    **({"note": c.note} if c.note else {}),
                }
                for c in self.checks
            ],
            "timings": {c.name: round(c.seconds, 3) for c in self.checks},
        }

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            note = f"  ({c.note})" if c.note else ""
            lines.append(f"[{mark}] {c.name}: expected={c.expected} actual={c.actual}{note}")
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def emit_report(r: Report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(r.to_json_dict(), indent=2, sort_keys=True) + "\n"
    return r.to_text() + "\n"


# --- cache -------------------------------------------------------------------

def cache_dir() -> Path:
    return Path(os.environ.get("GALCOV_CACHE", ".galcov-cache"))


def cache_get(key: str) -> Optional[str]:
    path = cache_dir() / key
    if path.is_file():
        log.debug("cache hit %s", key)
        return path.read_text()
    return None


def cache_put(key: str, text: str) -> None:
    d = cache_dir()
    d.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=key, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, d / key)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _cached_text(key: str, build) -> str:
    text = cache_get(key)
    if text is None:
        text = build()
        cache_put(key, text)
    return text


def _write_out(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# --- subcommands ---------------------------------------------------------------

def cmd_degenerate(args) -> int:
    c = build_complex(args.n)
    if args.format == "json":
        text = json.dumps(c.to_json_dict(), indent=2, sort_keys=True) + "\n"
    else:
        lines = [f"n={c.n}: 2n={2 * c.n} lines/vertices/planes/3-points"]
        for l in c.lines:
            lines.append(
                f"line {l.index}: vertices {l.endpoints} {l.klass} planes {l.adjacent_planes}"
            )
        for t in c.three_points:
            lines.append(f"V{t.index}: vertical {t.vertical_line}, diagonal {t.diagonal_line}")
        lines.append("incidental pairs: " + " ".join(map(str, c.incidental_pairs)))
        text = "\n".join(lines) + "\n"
    _write_out(text, args.out)
    return 0


def cmd_monodromy(args) -> int:
    c = build_complex(args.n)
    factors = full_factorization(c)
    census = factor_census(factors)
    if args.format == "json":
        payload = {
            "n": args.n,
            "census": {
                "branch": census["branch"],
                "cusp": census["cusp"],
                "node": census["node"],
                "exponent_sum": census["exponent_sum"],
            },
            "permutation_product_trivial": factorization_permutation(factors).is_identity(),
            "factors": [
                {
                    "kind": f.kind,
                    "source": list(map(str, f.source)),
                    "exponent": f.exponent,
                    "word": str(f.braid.letters),
                }
                for f in factors
            ],
        }
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        lines = [
            f"n={args.n}: {census['branch']} branch, {census['cusp']} cusp, "
            f"{census['node']} node factors; exponent sum {census['exponent_sum']}"
        ]
        for f in factors:
            lines.append(f"{f.kind:6} {f.source}: {f.braid.letters}")
        text = "\n".join(lines) + "\n"
    _write_out(text, args.out)
    return 0


def cmd_presentation(args) -> int:
    key = f"pres-n{args.n}-d{args.depth}-sq{int(args.squares)}-proj{int(args.projective)}.txt"

    def build() -> str:
        c = build_complex(args.n)
        if args.squares:
            p = square_quotient_presentation(c, depth=args.depth, projective=args.projective)
        else:
            p = complement_presentation(c, depth=args.depth)
            if args.projective:
                from .presentation import add_projective_relation

                p = add_projective_relation(p)
        return presentation_to_str(p)

    text = _cached_text(key, build)
    _write_out(text, args.out)
    return 0


def cmd_psi(args) -> int:
    w = word_from_str(args.word)
    p = psi_eval(w, args.n)
    sys.stdout.write(p.cycle_string() + "\n")
    return 0


def cmd_kernel(args) -> int:
    if args.raw:
        key = f"kernel-raw-n{args.n}-d{args.depth}-proj{int(args.projective)}.txt"

        def build() -> str:
            c = build_complex(args.n)
            pt = square_quotient_presentation(c, depth=args.depth, projective=args.projective)
            return presentation_to_str(kernel_presentation(pt, args.n))

    else:
        key = f"kernel-red-n{args.n}-w{args.window}-proj{int(args.projective)}.txt"

        def build() -> str:
            if args.projective:
                return presentation_to_str(galois_presentation(args.n, window=args.window))
            return presentation_to_str(reduced_kernel_presentation(args.n, window=args.window))

    text = _cached_text(key, build)
    _write_out(text, args.out)
    return 0


def cmd_abelianize(args) -> int:
    if args.kind == "galois":
        p = galois_presentation(args.n, window=args.window)
    elif args.kind == "reduced":
        p = reduced_kernel_presentation(args.n, window=args.window)
    elif args.kind == "square-quotient":
        p = square_quotient_presentation(build_complex(args.n), depth=args.depth, projective=args.projective)
    elif args.kind == "kernel-raw":
        pt = square_quotient_presentation(build_complex(args.n), depth=args.depth, projective=True)
        p = kernel_presentation(pt, args.n)
    else:
        raise ValueError(f"unknown kind {args.kind}")
    res = smith_normal_form(abelianize(p))
    payload = {
        "n": args.n,
        "kind": args.kind,
        "generators": len(p.generators),
        "relators": len(p.relators),
        "free_rank": res.free_rank,
        "invariant_factors": list(res.invariant_factors),
        "torsion": list(res.torsion),
    }
    if args.format == "json":
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        text = f"{args.kind}(n={args.n}): {res.describe()}\n"
    _write_out(text, args.out)
    return 0


def _run_check(report: Report, name: str, expected, fn, note: str = "") -> None:
    t0 = time.time()
    actual, passed, extra = fn()
    report.checks.append(
        Check(
            name=name,
            expected=expected,
            actual=actual,
            passed=passed,
            seconds=time.time() - t0,
            note=extra or note,
        )
    )
    log.info("check %s: %s", name, "pass" if passed else "FAIL")


def run_pipeline(args) -> Report:
    n, m = args.n, args.mod
    report = Report(
        config={
            "n": n,
            "mod": m,
            "depth": args.depth,
            "window": args.window,
            "max_cosets": args.max_cosets,
        },
        checks=[],
        version=__version__,
    )
    c = build_complex(n)

    def census_check():
        factors = full_factorization(c)
        cen = factor_census(factors)
        expected = {
            "lines": 2 * n,
            "incidental": 2 * n * n - 3 * n,
            "branch": 2 * n,
            "cusp": 6 * n,
            "node": 8 * n * n - 12 * n,
            "exponent_sum": 16 * n * n - 4 * n,
        }
        actual = {
            "lines": len(c.lines),
            "incidental": len(c.incidental_pairs),
            "branch": cen["branch"],
            "cusp": cen["cusp"],
            "node": cen["node"],
            "exponent_sum": cen["exponent_sum"],
        }
        return actual, actual == expected, ""

    _run_check(report, "census", "exact counts", census_check)

    def perm_check():
        trivial = factorization_permutation(full_factorization(c)).is_identity()
        return trivial, trivial, ""

    _run_check(report, "factorization-permutation-identity", True, perm_check)

    def psi_check():
        pt = square_quotient_presentation(c, depth=args.depth, projective=True)
        bad = [str(r) for r in pt.relators if not psi_eval(r, n).is_identity()]
        surjective = generates_symmetric_group(
            [generator_transposition(j, n) for j in range(2, 2 * n + 1)], 2 * n
        )
        splits = True
        if n <= 3:
            for p in all_permutations(2 * n):
                if psi_eval(phi_word(p, n), n) != p:
                    splits = False
                    break
        ok = not bad and surjective and splits
        return {"relator_failures": len(bad), "surjective": surjective, "split": splits}, ok, ""

    _run_check(report, "psi-well-defined", "no failures", psi_check)

    def rs_check():
        g1 = surface_gen(1)
        checks = []
        t = identify_word(tau_rewrite(word(g1, g1), n), n)
        checks.append([(s.display(), e) for s, e in t] == [("X[1,2]", -1), ("X[2,1]", -1)])
        g2, g3 = surface_gen(2), surface_gen(3)
        t = identify_word(tau_rewrite(word(g1, g2, g1, g2, g1, g2), n), n)
        checks.append(
            [(s.display(), e) for s, e in t]
            == [("X[1,2]", -1), (f"X[{2 * n},1]", -1), (f"X[2,{2 * n}]", -1)]
        )
        t = identify_word(tau_rewrite(word(g1, g3, g1, g3, g1, g3), n), n)
        checks.append([(s.display(), e) for s, e in t] == [("X[1,2]", -1), ("X[2,3]", -1), ("X[3,1]", -1)])
        return sum(checks), all(checks), ""

    _run_check(report, "rs-spot-identities", 3, rs_check)

    def model_check():
        if n > 4:
            return "skipped (n > 4)", True, "model checks run for n <= 4"
        g = model_group_make(n, m)
        pt = square_quotient_presentation(c, depth=args.depth, projective=True)
        hom = model_hom_check(pt, g)
        derived = check_derived_relations(g)
        span = lattice_images_span(g)
        ok = hom.ok and derived.ok and span
        return (
            {"relators": hom.checked, "derived": derived.checked, "span": span,
             "failures": len(hom.failures) + len(derived.failures)},
            ok,
            "",
        )

    _run_check(report, "model-homomorphism", "all relations vanish", model_check)

    def order_check():
        cert = order_certificate(n, m, depth=args.depth, max_cosets=args.max_cosets)
        actual = {
            "enumerated": cert.table.coset_count,
            "status": cert.table.status,
            "model_ok": cert.model_report_ok,
        }
        return actual, cert.ok, f"expected order {cert.expected_order}"

    _run_check(report, "order-certificate", expected_quotient_order(n, m), order_check)

    def snf_check():
        cert = abelianization_certificate(n, window=args.window, include_raw=(n == 2))
        actual = {
            "free_rank": cert.snf.free_rank,
            "torsion": list(cert.snf.torsion),
        }
        if cert.raw_snf is not None:
            actual["raw_free_rank"] = cert.raw_snf.free_rank
            actual["raw_torsion"] = list(cert.raw_snf.torsion)
        return actual, cert.ok, ""

    _run_check(report, "abelianization", f"Z^{4 * n - 2}", snf_check)

    if n == 2:
        def delta_check():
            rep = delta_squared_report(c)
            ok = rep["equal"] is True or "fingerprint" in rep
            note = "" if rep["equal"] is True else f"fingerprint {rep.get('fingerprint', '')[:16]}"
            return rep["equal"], ok, note

        _run_check(report, "full-twist-product", True, delta_check)

    return report


def cmd_verify(args) -> int:
    report = run_pipeline(args)
    text = emit_report(report, args.format)
    _write_out(text, args.out)
    if report.passed:
        return 0
    for c in report.checks:
        if isinstance(c.actual, dict) and c.actual.get("status") == "budget-exceeded":
            return 2
    return 1


def _add_common(sp, n_required=True):
    sp.add_argument("--n", type=int, required=n_required, help="half the sheet number (n >= 2)")
    sp.add_argument("--format", choices=("json", "text"), default="text")
    sp.add_argument("--out", help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="galcov", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("degenerate", help="incidence complex of the degenerated surface")
    _add_common(sp)
    sp.set_defaults(fn=cmd_degenerate)

    sp = sub.add_parser("monodromy", help="regenerated braid monodromy factors")
    _add_common(sp)
    sp.set_defaults(fn=cmd_monodromy)

    sp = sub.add_parser("presentation", help="complement-group presentation file")
    _add_common(sp)
    sp.add_argument("--squares", action="store_true", help="kill generator squares")
    sp.add_argument("--projective", action="store_true")
    sp.add_argument("--depth", type=int, default=0)
    sp.set_defaults(fn=cmd_presentation)

    sp = sub.add_parser("psi", help="image of a surface word in S_2n")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--word", required=True, help='word tokens, e.g. "g1 g3p^-1"')
    sp.set_defaults(fn=cmd_psi)

    sp = sub.add_parser("kernel", help="kernel presentation (raw or reduced)")
    _add_common(sp)
    group = sp.add_mutually_exclusive_group()
    group.add_argument("--raw", action="store_true")
    group.add_argument("--reduced", action="store_true")
    sp.add_argument("--projective", action="store_true")
    sp.add_argument("--window", type=int, default=2)
    sp.add_argument("--depth", type=int, default=0)
    sp.set_defaults(fn=cmd_kernel)

    sp = sub.add_parser("abelianize", help="Smith normal form of a presentation")
    _add_common(sp)
    sp.add_argument(
        "--kind",
        choices=("galois", "reduced", "square-quotient", "kernel-raw"),
        default="galois",
    )
    sp.add_argument("--window", type=int, default=2)
    sp.add_argument("--depth", type=int, default=0)
    sp.add_argument("--projective", action="store_true")
    sp.set_defaults(fn=cmd_abelianize)

    sp = sub.add_parser("verify", help="run the full certificate battery")
    _add_common(sp)
    sp.add_argument("--mod", type=int, default=2)
    sp.add_argument("--depth", type=int, default=0)
    sp.add_argument("--window", type=int, default=2)
    sp.add_argument("--max-cosets", type=int, default=4_000_000)
    sp.set_defaults(fn=cmd_verify)

    return ap


def _validate(args) -> None:
    if getattr(args, "n", None) is not None and args.n < 2:
        raise SystemExit2("n must be >= 2")
    if getattr(args, "mod", None) is not None and args.mod < 2:
        raise SystemExit2("mod must be >= 2")
    if getattr(args, "max_cosets", None) is not None and args.max_cosets < 1:
        raise SystemExit2("max-cosets must be >= 1")
    if getattr(args, "depth", None) is not None and args.depth < 0:
        raise SystemExit2("depth must be >= 0")
    if getattr(args, "window", None) is not None and args.window < 1:
        raise SystemExit2("window must be >= 1")


class SystemExit2(SystemExit):
    def __init__(self, message: str):
        sys.stderr.write(f"galcov: {message}\n")
        super().__init__(2)


def main(argv: Optional[list[str]] = None) -> int:
    level = os.environ.get("GALCOV_LOG", "WARNING").upper()
    logging.basicConfig(stream=sys.stderr, level=getattr(logging, level, logging.WARNING))
    ap = build_parser()
    args = ap.parse_args(argv)
    _validate(args)
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"galcov: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
