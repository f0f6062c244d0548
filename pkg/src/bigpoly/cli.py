"""Batch CLI: machine-readable front door over the library modules.

Exit codes: 0 ok, 2 bad input or genericity violation, 3 unsupported
configuration, 4 theorem disagreement (never masked).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import classify as classify_mod
from . import lenvec as lv
from . import syzygy as syz
from .backend import BACKEND
from .chambers import (
    Checkpoint,
    enumerate_chambers,
    chamber_histogram,
    realizable,
    write_chambers,
)
from .errors import (
    EXIT_DISAGREEMENT,
    EXIT_INPUT,
    BigpolyError,
    InvalidInputError,
)


def _vector(text: str, perturb_base: int) -> lv.LengthVector:
    vec = lv.LengthVector.from_csv(text)
    if perturb_base != 2 and perturb_base < 2:
        raise InvalidInputError("--seed-perturb must be >= 2")
    return vec


def _params(args) -> syz.KoszulParams:
    variant = args.variant
    char = args.char
    if char is None:
        char = 0 if variant == "complex" else 2
    if variant == "complex" and char != 0:
        raise syz.UnsupportedConfigError("complex variant requires characteristic 0")
    if variant == "real" and char != 2:
        raise syz.UnsupportedConfigError("real variant requires characteristic 2")
    return syz.KoszulParams(p=args.p, q=args.q, variant=variant)


def cmd_mu(args) -> int:
    vec = _vector(args.vector, args.seed_perturb)
    mu_val, witness = lv.mu_witness(vec)
    print(f"mu={mu_val} witness={lv.subset_repr(witness)}")
    return 0


def cmd_family(args) -> int:
    vec = _vector(args.vector, args.seed_perturb)
    sys.stdout.write(lv.long_family(vec).serialize())
    return 0


def cmd_equiv(args) -> int:
    a = _vector(args.vector, args.seed_perturb)
    b = _vector(args.vector2, args.seed_perturb)
    print(f"equivalent={'true' if lv.equivalent(a, b) else 'false'}")
    return 0


def cmd_chambers(args) -> int:
    checkpoint = None
    if args.checkpoint:
        checkpoint = Checkpoint(args.checkpoint, resume=args.resume)
    out = open(args.output, "w", encoding="utf-8") if args.output else sys.stdout
    try:
        if args.count_only:
            hist = chamber_histogram(
                args.r,
                workers=args.workers,
                allow_large=args.force,
                min_tasks=args.tasks,
                checkpoint=checkpoint,
            )
            total = sum(hist.values())
            out.write(f"total={total}\n")
            for mu_val, n in sorted(hist.items()):
                out.write(f"mu={mu_val} count={n}\n")
        else:
            write_chambers(
                args.r,
                out,
                workers=args.workers,
                allow_large=args.force,
                min_tasks=args.tasks,
                checkpoint=checkpoint,
            )
    finally:
        if checkpoint is not None:
            checkpoint.close()
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_classify(args) -> int:
    chambers = enumerate_chambers(
        args.r, workers=args.workers, allow_large=args.force, min_tasks=args.tasks
    )
    result = classify_mod.classify(args.r, chambers)
    out = open(args.output, "w", encoding="utf-8") if args.output else sys.stdout
    try:
        out.write("r,mu,order,count\n")
        for row in result.csv_rows():
            out.write(row + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    if args.details:
        os.makedirs(args.details, exist_ok=True)
        by_mu: dict[int, list] = {}
        for c in chambers:
            by_mu.setdefault(c.mu, []).append(c)
        for mu_val, group in sorted(by_mu.items()):
            path = os.path.join(args.details, f"r{args.r}_mu{mu_val}.txt")
            with open(path, "w", encoding="utf-8") as fh:
                for c in group:
                    fh.write(c.line() + "\n")
    return 0


def cmd_realize(args) -> int:
    mins = lv.parse_subset_list(args.sets, args.r)
    witness = realizable(args.r, mins, raising=not args.no_raising)
    if witness is None:
        print("realizable=false")
    else:
        print(f"realizable=true witness={witness.csv()}")
    return 0


def cmd_syzygy(args) -> int:
    vec = _vector(args.vector, args.seed_perturb)
    params = _params(args)
    report = syz.verify_theorem(vec, params, cap=args.cap, perturb_base=args.seed_perturb)
    print(report.to_json())
    if not report.agree:
        print(
            f"DISAGREEMENT: algebraic order {report.order} != mu-1 = {report.mu - 1}",
            file=sys.stderr,
        )
        return EXIT_DISAGREEMENT
    return 0


def cmd_verify_range(args) -> int:
    params = _params(args)
    chambers = enumerate_chambers(args.r, workers=args.workers, allow_large=args.force)
    bad = 0
    for c in chambers:
        report = syz.verify_theorem(c.witness, params, cap=args.cap, perturb_base=args.seed_perturb)
        print(report.to_json())
        if not report.agree:
            bad += 1
            print(f"DISAGREEMENT at {c.line()}", file=sys.stderr)
    print(
        json.dumps({"r": args.r, "chambers": len(chambers), "disagreements": bad}),
        file=sys.stderr,
    )
    return EXIT_DISAGREEMENT if bad else 0


def _add_common_vector_flags(p):
    p.add_argument("--seed-perturb", type=int, default=2, metavar="BASE",
                   help="base of the deterministic strong-genericity perturbation")


def _add_params_flags(p):
    p.add_argument("--variant", choices=("complex", "real"), default="complex")
    p.add_argument("--p", type=int, default=None,
                   help="grading parameter (default 1 complex, 2 real)")
    p.add_argument("--q", type=int, default=1, help="differential exponent")
    p.add_argument("--char", type=int, default=None,
                   help="coefficient characteristic (0 complex, 2 real)")
    p.add_argument("--cap", type=int, default=None,
                   help="largest sequence length tested (default ceil(r/2))")


def _add_pool_flags(p):
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--tasks", type=int, default=64,
                   help="minimum DFS subtree count (fixed split; output does "
                        "not depend on --workers)")
    p.add_argument("--force", action="store_true",
                   help="override the r cap on enumeration")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="bigpoly",
        description="Exact syzygy orders of big-polygon-space modules "
        f"(kernel backend: {BACKEND})",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mu", help="print mu and an attaining subset")
    p.add_argument("vector", help="comma-separated entries, e.g. 0,0,1,1,1")
    _add_common_vector_flags(p)
    p.set_defaults(func=cmd_mu)

    p = sub.add_parser("family", help="print minimal long sets, one hex per line")
    p.add_argument("vector")
    _add_common_vector_flags(p)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("equiv", help="test equivalence of two vectors")
    p.add_argument("vector")
    p.add_argument("vector2")
    _add_common_vector_flags(p)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("chambers", help="enumerate chambers for a rank")
    p.add_argument("r", type=int)
    p.add_argument("--checkpoint", metavar="PATH")
    p.add_argument("--resume", action="store_true")
    p.add_argument("--output", metavar="PATH")
    p.add_argument("--count-only", action="store_true")
    _add_pool_flags(p)
    p.set_defaults(func=cmd_chambers)

    p = sub.add_parser("classify", help="per-mu chamber counts as CSV")
    p.add_argument("r", type=int)
    p.add_argument("--output", metavar="PATH")
    p.add_argument("--details", metavar="DIR",
                   help="write fingerprint lists per (r, mu)")
    _add_pool_flags(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("realize", help="find a witness for a candidate family")
    p.add_argument("r", type=int)
    p.add_argument("sets", help="comma-separated hex masks or {i,j} sets")
    p.add_argument("--no-raising", action="store_true",
                   help="close the candidate under supersets only")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("syzygy", help="verify the order formula on one vector")
    p.add_argument("vector")
    _add_common_vector_flags(p)
    _add_params_flags(p)
    p.set_defaults(func=cmd_syzygy)

    p = sub.add_parser("verify-range", help="verify the formula on every chamber")
    p.add_argument("r", type=int)
    _add_common_vector_flags(p)
    _add_params_flags(p)
    _add_pool_flags(p)
    p.set_defaults(func=cmd_verify_range)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "p", None) is None and hasattr(args, "variant"):
        args.p = 1 if args.variant == "complex" else 2
    try:
        return args.func(args)
    except BigpolyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
