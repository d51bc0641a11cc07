"""Command-line interface: check, closure, search, equiv, reproduce.

Exit codes: 0 success/certified, 1 input or usage error, 2 well-formed
but negative outcome (not certified, not equivalent, fixture mismatch),
3 closure budget exhausted.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time

from . import __version__, fixtures, gf, poly, tower
from .gf import FieldElement
from .parsing import ParseError, parse_element, parse_poly
from .search import SearchConfig, run_search
from .tower import (ClosureLimits, ClosureStatus, KummerSpec, RecursionSpec,
                    ShapeError)


class InputError(ValueError):
    pass


def _add_field_flags(sub):
    sub.add_argument("--p", type=int, required=True, help="prime characteristic")
    sub.add_argument("--s", type=int, default=1, help="extension degree over GF(p)")
    sub.add_argument("--modulus", type=str, default=None,
                     help="comma-separated modulus coefficients, ascending")


def _add_limit_flags(sub):
    sub.add_argument("--max-s0", type=int, default=ClosureLimits().max_size,
                     help="closure size budget")
    sub.add_argument("--max-ambient-degree", type=int,
                     default=ClosureLimits().max_ambient_degree,
                     help="ambient degree budget over the prime field")


def _field_from_args(args) -> gf.FieldCtx:
    modulus = None
    if args.modulus:
        try:
            modulus = [int(c) for c in args.modulus.split(",")]
        except ValueError as exc:
            raise InputError(f"invalid modulus {args.modulus!r}: {exc}") from None
    try:
        return gf.make_extension(args.p, args.s, modulus)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _limits_from_args(args) -> ClosureLimits:
    return ClosureLimits(max_size=args.max_s0,
                         max_ambient_degree=args.max_ambient_degree)


def _spec_from_args(ctx, args) -> KummerSpec:
    alpha = parse_element(ctx, args.alpha)
    f = parse_poly(ctx, args.f)
    try:
        return KummerSpec(ctx, args.m, alpha, f)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _report_text(report: tower.TowerReport) -> str:
    lines = [
        f"field: {report.spec.field.label}",
        f"spec: m={report.spec.m} alpha={report.spec.alpha} f={report.spec.f}",
        "checks:",
    ]
    for name, value in report.checks.to_json().items():
        lines.append(f"  {name}: {'pass' if value else 'FAIL'}")
    if report.shape_error:
        lines.append(f"shape error: {report.shape_error}")
    if report.closure is not None:
        cl = report.closure
        lines.append(f"closure: {cl.status} size={cl.size} "
                     f"ambient_degree={cl.ambient.s} generations={cl.generations}")
        lines.append("  S0 = {" + ", ".join(str(e) for e in cl.elements) + "}")
    if report.split_bound is not None:
        lines.append(f"split_bound: {report.split_bound}")
    if report.lambda_bound is not None:
        lines.append(f"lambda_bound: {report.lambda_bound}")
    if report.optimal is not None:
        lines.append(f"optimal: {report.optimal}")
    lines.append(f"canonical_key: {report.canonical_key.code}")
    lines.append(f"certified: {report.certified}")
    return "\n".join(lines)


def cmd_check(args) -> int:
    ctx = _field_from_args(args)
    spec = _spec_from_args(ctx, args)
    report = tower.certify(spec, _limits_from_args(args))
    if args.format == "json":
        print(json.dumps(report.to_json(), sort_keys=True, indent=2))
    else:
        print(_report_text(report))
    return 0 if report.certified else 2


def cmd_closure(args) -> int:
    ctx = _field_from_args(args)
    limits = _limits_from_args(args)
    if args.b1 or args.b2:
        if not (args.b1 and args.b2):
            raise InputError("--b1 and --b2 must be given together")
        b1 = parse_poly(ctx, args.b1)
        b2 = parse_poly(ctx, args.b2)
        try:
            rec = RecursionSpec(ctx, args.m, b1, b2)
        except ShapeError as exc:
            raise InputError(str(exc)) from None
    elif args.alpha and args.f:
        spec = _spec_from_args(ctx, args)
        try:
            rec = tower.to_recursion(spec)
        except ShapeError as exc:
            raise InputError(str(exc)) from None
        if not rec.coprime:
            raise InputError("b1 and b2 must be coprime polynomials")
    else:
        raise InputError("give either --b1/--b2 or --alpha/--f")
    result = tower.compute_closure(rec, limits)
    payload = result.to_json()
    payload["separable_b1"] = poly.is_separable(rec.b1)
    payload["separable_b2"] = rec.b2.degree >= 1 and poly.is_separable(rec.b2)
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(f"status: {result.status}")
        print(f"ambient: {result.ambient.label}")
        print(f"generations: {result.generations}  seed_size: {result.seed_size}")
        print(f"S0 ({result.size} elements): "
              + "{" + ", ".join(str(e) for e in result.elements) + "}")
        print(f"separable b1: {payload['separable_b1']}  "
              f"separable b2: {payload['separable_b2']}")
    return 0 if result.status == ClosureStatus.CLOSED else 3


def _manifest(args, cfg: SearchConfig, elapsed: float, digest: str) -> dict:
    return {
        "command": "search",
        "config": cfg.to_json(),
        "jobs": args.jobs,
        "version": __version__,
        "elapsed_s": round(elapsed, 3),
        "digest": digest,
    }


def cmd_search(args) -> int:
    ctx = _field_from_args(args)
    alpha_filter = None
    if args.alpha:
        alpha_filter = tuple(parse_element(ctx, text)
                             for text in args.alpha.split(","))
    cfg = SearchConfig(field=ctx, m=args.m, f_degree=args.deg_f,
                       alpha_filter=alpha_filter,
                       limits=_limits_from_args(args),
                       dedup=not args.no_dedup, parallelism=args.jobs)
    started = time.monotonic()
    outcome = run_search(cfg)
    elapsed = time.monotonic() - started
    canonical = outcome.to_json()
    digest = hashlib.sha256(canonical.encode("utf-8")).hexdigest()
    manifest = _manifest(args, cfg, elapsed, digest)

    if args.out:
        base, ext = os.path.splitext(args.out)
        json_path = args.out if ext == ".json" else base + ".json"
        csv_path = base + ".csv"
        try:
            with open(json_path, "w", encoding="utf-8") as fh:
                json.dump({"manifest": manifest, "outcome": outcome.to_json_obj()},
                          fh, sort_keys=True, indent=2)
                fh.write("\n")
            with open(csv_path, "w", encoding="utf-8") as fh:
                for key, value in sorted(manifest.items()):
                    if key != "config":
                        fh.write(f"# {key}: {value}\n")
                fh.write(outcome.to_csv())
        except OSError as exc:
            print(f"error: cannot write output: {exc}", file=sys.stderr)
            return 1

    if args.format == "json":
        print(json.dumps({"manifest": manifest, "outcome": outcome.to_json_obj()},
                         sort_keys=True, indent=2))
    elif args.format == "csv":
        print(outcome.to_csv(), end="")
    else:
        print(f"candidates: {outcome.total_candidates}  "
              f"passing: {outcome.passing_equations}  "
              f"classes: {len(outcome.classes)}  "
              f"budget-exhausted: {outcome.exceeded_budget}")
        for name, count in sorted(outcome.rejected_by.items()):
            print(f"  rejected {name}: {count}")
        if outcome.classes:
            print("classes (best lambda first):")
            for entry in outcome.classes:
                rep = entry.report
                print(f"  lambda>={rep.lambda_bound}  |S0|={rep.s0_size}  "
                      f"orbit={entry.count}  {entry.key.code}")
        print(f"digest: {digest}  elapsed: {elapsed:.2f}s")
    return 0


def cmd_equiv(args) -> int:
    ctx = _field_from_args(args)
    a = _spec_from_args(ctx, args)
    alpha2 = parse_element(ctx, args.alpha2)
    f2 = parse_poly(ctx, args.f2)
    try:
        b = KummerSpec(ctx, args.m, alpha2, f2)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    witness = tower.verify_equivalence(a, b)
    if witness is None:
        print("not related by scaling")
        return 2
    scaled = tower.transform(a, witness)
    print(f"witness c = {witness}")
    print(f"  c^-{args.m} * alpha = {scaled.alpha}")
    print(f"  f(c*T) = {scaled.f}")
    return 0


def cmd_reproduce(args) -> int:
    name = args.fixture
    if name not in fixtures.FIXTURES:
        print(f"unknown fixture {name!r}; available: "
              + ", ".join(sorted(fixtures.FIXTURES)), file=sys.stderr)
        return 1
    started = time.monotonic()
    ok, messages = fixtures.FIXTURES[name]()
    elapsed = time.monotonic() - started
    print(f"{'PASS' if ok else 'FAIL'} {name} ({elapsed:.2f}s)")
    for line in messages:
        print(line)
    return 0 if ok else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kts",
        description="Certify and search Kummer-type tower equations over finite fields.")
    parser.add_argument("--version", action="version", version=f"kts {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p_check = subs.add_parser("check", help="certify a single equation")
    _add_field_flags(p_check)
    p_check.add_argument("--m", type=int, required=True)
    p_check.add_argument("--alpha", type=str, required=True)
    p_check.add_argument("--f", type=str, required=True)
    _add_limit_flags(p_check)
    p_check.add_argument("--format", choices=("text", "json"), default="text")
    p_check.set_defaults(func=cmd_check)

    p_closure = subs.add_parser("closure", help="compute the closure set S0")
    _add_field_flags(p_closure)
    p_closure.add_argument("--m", type=int, required=True)
    p_closure.add_argument("--alpha", type=str, default=None)
    p_closure.add_argument("--f", type=str, default=None)
    p_closure.add_argument("--b1", type=str, default=None)
    p_closure.add_argument("--b2", type=str, default=None)
    _add_limit_flags(p_closure)
    p_closure.add_argument("--format", choices=("text", "json"), default="text")
    p_closure.set_defaults(func=cmd_closure)

    p_search = subs.add_parser("search", help="search all equations over a field")
    _add_field_flags(p_search)
    p_search.add_argument("--m", type=int, required=True)
    p_search.add_argument("--deg-f", type=int, required=True)
    p_search.add_argument("--alpha", type=str, default=None,
                          help="comma-separated alpha filter")
    _add_limit_flags(p_search)
    p_search.add_argument("--no-dedup", action="store_true",
                          help="certify every candidate instead of one per orbit")
    p_search.add_argument("--jobs", type=int, default=1)
    p_search.add_argument("--out", type=str, default=None,
                          help="write JSON and CSV result files")
    p_search.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p_search.set_defaults(func=cmd_search)

    p_equiv = subs.add_parser("equiv", help="find a scaling relating two equations")
    _add_field_flags(p_equiv)
    p_equiv.add_argument("--m", type=int, required=True)
    p_equiv.add_argument("--alpha", type=str, required=True)
    p_equiv.add_argument("--f", type=str, required=True)
    p_equiv.add_argument("--alpha2", type=str, required=True)
    p_equiv.add_argument("--f2", type=str, required=True)
    p_equiv.set_defaults(func=cmd_equiv)

    p_rep = subs.add_parser("reproduce", help="run a bundled golden fixture")
    p_rep.add_argument("fixture", type=str)
    p_rep.set_defaults(func=cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; fold into the input-error code
        return 1 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (InputError, ParseError, gf.ContextMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
