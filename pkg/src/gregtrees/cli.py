"""Command-line interface.

Subcommands: ``poly`` (print or evaluate a family member), ``enum`` (stream a
tree family), ``stats`` (statistics of a tree document), ``bij`` (apply a
bijection to documents), ``verify`` (run the identity suite), and ``oeis``
(emit integer-triangle rows).  Exit codes: 0 success, 1 verification failure,
2 usage or document error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from . import bijections, enumeration, identities
from .families import seq_C, seq_H, seq_P, seq_Q, seq_R
from .poly import poly_to_text
from .tree import TreeError, build_tree, to_doc, to_dot, to_json

FAMILY_POLYS = {"C": seq_C, "P": seq_P, "Q": seq_Q, "R": seq_R, "H": seq_H}

USAGE_ERROR = 2


def _read_doc(path: Optional[str]):
    data = sys.stdin.read() if path in (None, "-") else open(path).read()
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise TreeError(f"invalid JSON document: {exc}") from exc


def _cmd_poly(args) -> int:
    poly = FAMILY_POLYS[args.family](args.n)
    if args.eval is not None:
        values = [Fraction(v) for v in args.eval.split(",")]
        if len(values) == 1 and args.family in ("C", "H"):
            point = [Fraction(0), values[0], Fraction(0), Fraction(0)]
        elif len(values) == 4:
            point = values
        else:
            raise TreeError("--eval takes 4 comma-separated rationals "
                            "(or 1, the y value, for families C and H)")
        result = poly.eval(point)
        if args.json:
            print(json.dumps({"family": args.family, "n": args.n,
                              "point": [str(v) for v in point], "value": str(result)}))
        else:
            print(result)
        return 0
    if args.json:
        print(json.dumps({"family": args.family, "n": args.n, "text": poly_to_text(poly),
                          "terms": [[list(e), str(c)] for e, c in sorted(poly.terms.items())]}))
    else:
        print(poly_to_text(poly))
    return 0


def _cmd_enum(args) -> int:
    if args.jobs > 1 and args.format != "count":
        raise TreeError("--jobs > 1 requires --format count")
    if args.format == "count":
        if args.jobs > 1:
            import multiprocessing

            units = enumeration.partition_units(args.family, args.n)
            with multiprocessing.Pool(args.jobs) as pool:
                total = sum(pool.starmap(
                    enumeration.count_unit,
                    [(args.family, args.n, unit) for unit in units]))
            print(total)
        else:
            print(sum(1 for _ in enumeration.FAMILIES[args.family](args.n)))
        return 0
    for t in enumeration.FAMILIES[args.family](args.n):
        if args.format == "jsonl":
            print(to_json(t))
        else:
            print(to_dot(t))
    return 0


def _cmd_stats(args) -> int:
    tree = build_tree(_read_doc(args.file))
    print(json.dumps(tree.stats().as_dict()))
    return 0


def _cmd_bij(args) -> int:
    tree = build_tree(_read_doc(args.file))
    if args.op == "phi":
        if args.selection is None:
            raise TreeError("--op phi requires --selection")
        sel = bijections.SelectionFunction.from_doc(_read_doc(args.selection))
        print(to_json(bijections.phi(tree, sel)))
    elif args.op == "psi":
        print(to_json(bijections.psi(tree)))
    elif args.op == "repr":
        print(to_json(bijections.repr_planar(tree)))
    elif args.op == "zeta":
        if not args.vertices:
            raise TreeError("--op zeta requires --vertices")
        labels = [int(v) for v in args.vertices.split(",")]
        print(to_json(bijections.zeta(tree, labels)))
    elif args.op == "decompose":
        if tree.is_ordered():
            cayley, elders = bijections.planar_decompose(tree)
            print(json.dumps({"tree": to_doc(cayley), "elders": sorted(elders)},
                             separators=(",", ":")))
        else:
            cayley, sel = bijections.greg_decompose(tree)
            print(json.dumps({"tree": to_doc(cayley), "selection": sel.to_doc()},
                             separators=(",", ":")))
    return 0


def _cmd_verify(args) -> int:
    names = args.only.split(",") if args.only else None
    reports = identities.run_suite(max_n=args.max_n, names=names,
                                   include_variants=not args.no_variants)
    if args.json:
        print(json.dumps([r.as_dict() for r in reports]))
    else:
        for r in reports:
            print(r)
        failed = sum(1 for r in reports if not r.passed)
        print(f"{len(reports) - failed}/{len(reports)} checks passed")
    return 1 if any(not r.passed for r in reports) else 0


def _cmd_oeis(args) -> int:
    rows: list[list] = []
    if args.id == "A217922":
        for n in range(1, args.rows + 1):
            rows.append(seq_C(n).as_univariate("y"))
    elif args.id == "A048159":
        for n in range(1, args.rows + 1):
            rows.append(seq_H(n).as_univariate("y"))
    else:  # A134991
        for n in range(2, args.rows + 1):
            coeffs = seq_R(n).subst_many({"x": 0, "z": 0, "t": 0}).as_univariate("y")
            rows.append([c for c in coeffs if c])
    for row in rows:
        print(" ".join(str(c) for c in row))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gregtrees",
        description="Tree polynomial families, exhaustive tree enumeration, "
                    "statistics, bijections, and identity verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", help="print or evaluate a family polynomial")
    p.add_argument("--family", required=True, choices=sorted(FAMILY_POLYS))
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--eval", help="comma-separated rational point, e.g. 1,1,1,1")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_poly)

    p = sub.add_parser("enum", help="stream or count a tree family")
    p.add_argument("--family", required=True, choices=sorted(enumeration.FAMILIES))
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--format", default="count", choices=["count", "jsonl", "dot"])
    p.add_argument("--jobs", type=int, default=1,
                   help="partitioned parallel streams (count format only)")
    p.set_defaults(fn=_cmd_enum)

    p = sub.add_parser("stats", help="statistics of a tree document")
    p.add_argument("file", nargs="?", help="JSON document path (default stdin)")
    p.set_defaults(fn=_cmd_stats)

    p = sub.add_parser("bij", help="apply a bijection to a tree document")
    p.add_argument("--op", required=True,
                   choices=["phi", "psi", "repr", "zeta", "decompose"])
    p.add_argument("--selection", help="selection document path (for phi)")
    p.add_argument("--vertices", help="comma-separated vertex labels (for zeta)")
    p.add_argument("file", nargs="?", help="JSON document path (default stdin)")
    p.set_defaults(fn=_cmd_bij)

    p = sub.add_parser("verify", help="run the identity verification suite")
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--only", help="comma-separated identity names")
    p.add_argument("--no-variants", action="store_true",
                   help="skip the known-discrepancy checks")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("oeis", help="emit integer-triangle rows")
    p.add_argument("--id", required=True, choices=["A217922", "A048159", "A134991"])
    p.add_argument("--rows", required=True, type=int)
    p.set_defaults(fn=_cmd_oeis)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "n", 1) < 1:
        parser.exit(USAGE_ERROR, "error: --n must be a positive integer\n")
    if getattr(args, "rows", 1) < 1:
        parser.exit(USAGE_ERROR, "error: --rows must be a positive integer\n")
    try:
        return args.fn(args)
    except (TreeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
