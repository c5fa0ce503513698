"""Command-line interface.

Subcommands:
  count     reproduce the class-count table (text + optional JSON)
  classify  list the classes of one family at one dimension
  build     write the HREP v1 file of a chosen realization
  verify    check an HREP file and print its realization report
  compare   decide normal isomorphism of two HREP files
  atlas     cross-family isomorphism matrix at one dimension

Exit codes: 0 success, 1 verification/assertion failure, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import io as afio
from .atlas import classify_family, count_table, intersection_report
from .genperm import g0_params, post_hrep, rss_hrep, uniform_weights
from .hl import hl_hrep
from .polygon import PolygonError, parse_signs, parse_triangulation
from .realization import (
    RealizationError,
    fans_linearly_isomorphic,
    normal_fan,
    verify_realization,
)
from .santos import make_seed_frame, santos_hrep
from .secondary import gkz_hrep, parabola_config

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_BAD_INPUT = 2


def _cmd_count(args) -> int:
    rows = count_table(args.n_max, enumerate_counts=not args.formulas_only)
    header = ["n", "type I", "type II"]
    print("  ".join(f"{h:>8}" for h in header))
    failures = 0
    for row in rows:
        print(f"{row['n']:>8}  {row['type1']:>8}  {row['type2']:>8}")
        if "type1_enumerated" in row:
            if (row["type1"], row["type2"]) != (
                row["type1_enumerated"],
                row["type2_enumerated"],
            ):
                failures += 1
                print(
                    f"    MISMATCH: enumerated ({row['type1_enumerated']}, "
                    f"{row['type2_enumerated']})"
                )
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2, sort_keys=True)
    return EXIT_FAILURE if failures else EXIT_OK


def _cmd_classify(args) -> int:
    classes = classify_family(args.family, args.n, cross_validate=args.n <= 5)
    for c in classes:
        print(f"{c.family}  {c.key}")
    print(f"total: {len(classes)}")
    return EXIT_OK


def _build_polytope(args):
    fam = args.family
    if fam == "hl":
        sigma = parse_signs(args.sigma) if args.sigma else None
        if sigma is None or len(sigma) != args.n - 1:
            raise afio.FormatError("hl needs --sigma of length n-1")
        return hl_hrep(sigma)
    if fam == "santos":
        if args.seed:
            t0 = parse_triangulation(args.seed)
            if t0.m != args.n + 3:
                raise afio.FormatError("seed polygon size must be n+3")
        else:
            raise afio.FormatError("santos needs --seed 'm: a-b, c-d, ...'")
        return santos_hrep(make_seed_frame(t0))
    if fam == "post":
        if args.weights:
            with open(args.weights) as fh:
                weights = afio.read_minkowski_weights(fh, args.n)
        else:
            weights = uniform_weights(args.n)
        return post_hrep(weights)
    if fam == "rss":
        if args.weights:
            with open(args.weights) as fh:
                params = afio.read_rss_params(fh, args.n)
        else:
            params = g0_params(args.n)
        return rss_hrep(params)
    if fam == "gkz":
        if args.points:
            with open(args.points) as fh:
                config = afio.read_points(fh)
        else:
            config = parabola_config(args.n + 3)
        return gkz_hrep(config)
    raise afio.FormatError(f"unknown family {fam}")


def _cmd_build(args) -> int:
    h = _build_polytope(args)
    with open(args.out, "w") as fh:
        afio.write_hrep(h, fh)
    print(f"wrote {args.out}: dim {h.dim}, polygon {h.m}, "
          f"{len(h.inequalities)} facets, {len(h.equalities)} equalities")
    return EXIT_OK


def _cmd_verify(args) -> int:
    with open(args.infile) as fh:
        h = afio.read_hrep(fh)
    report = verify_realization(h)
    print(report.to_text())
    return EXIT_OK if report.is_simple_associahedron else EXIT_FAILURE


def _cmd_compare(args) -> int:
    hs = []
    for path in (args.infile_a, args.infile_b):
        with open(path) as fh:
            hs.append(afio.read_hrep(fh))
    fans = [normal_fan(h) for h in hs]
    result = fans_linearly_isomorphic(fans[0], fans[1])
    if result is None:
        print("NOT normally isomorphic")
        return EXIT_FAILURE
    phi, lmap = result
    print("normally isomorphic")
    print("diagonal relabeling:")
    for d in sorted(phi):
        print(f"  {d[0]}-{d[1]} -> {phi[d][0]}-{phi[d][1]}")
    print("witness matrix rows:")
    for row in lmap.rows:
        print("  " + " ".join(str(c) for c in row))
    return EXIT_OK


def _cmd_atlas(args) -> int:
    report = intersection_report(args.n)
    print(report.to_text())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="assocfans",
        description="exact associahedron realizations, fans, and classification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="reproduce the class-count table")
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--json", help="also write rows as JSON to this path")
    p.add_argument("--formulas-only", action="store_true",
                   help="skip the enumeration cross-check")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("classify", help="list classes of one family")
    p.add_argument("--family", required=True,
                   choices=["hl", "santos", "gkz", "post", "rss"])
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("build", help="write an HREP v1 file")
    p.add_argument("--family", required=True,
                   choices=["hl", "santos", "gkz", "post", "rss"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sigma", help="sign string over +- (family hl)")
    p.add_argument("--seed", help="seed triangulation 'm: a-b, c-d, ...' (santos)")
    p.add_argument("--weights", help="weights file 'i j value' (post/rss)")
    p.add_argument("--points", help="points file 'x y' per line (gkz)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("verify", help="verify an HREP file")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("compare", help="compare two HREP files")
    p.add_argument("--in", dest="infiles", action="append", required=True,
                   help="give twice: the two HREP files")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("atlas", help="cross-family isomorphism report")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_atlas)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "compare":
        if len(args.infiles) != 2:
            parser.error("compare needs exactly two --in files")
        args.infile_a, args.infile_b = args.infiles
    try:
        return args.func(args)
    except (afio.FormatError, FileNotFoundError, PolygonError) as exc:
        print(f"bad input: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except (RealizationError, ValueError) as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
