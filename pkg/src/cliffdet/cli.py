"""``cliff`` command-line front end.

Exit codes: 0 success, 1 singular input, 2 parse or usage error,
3 unsupported dimension, 4 a verification check failed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .algebra import Metric, random_multivector
from .errors import CliffordError, ParseError, Singular, UnsupportedDimension
from .literal import format_multivector, format_scalar, parse_metric, parse_multivector, parse_signed_grades

EXIT_OK, EXIT_SINGULAR, EXIT_USAGE, EXIT_DIMENSION, EXIT_CHECK = 0, 1, 2, 3, 4


def _metric(args) -> Metric:
    if getattr(args, "metric", None):
        metric = parse_metric(args.metric)
        if getattr(args, "dim", None) is not None and metric.dim != args.dim:
            raise ParseError(f"metric has {metric.dim} entries but --dim is {args.dim}", args.metric)
        return metric
    if getattr(args, "dim", None) is None:
        raise ParseError("give --metric or --dim")
    return Metric.euclidean(args.dim)


def _emit(text: str) -> None:
    sys.stdout.write(text + "\n")


# ---------------------------------------------------------------------------
# commands


def cmd_det(args) -> int:
    from .inverse import determinant, evaluate_expression

    A = parse_multivector(args.mv, _metric(args), args.ring)
    if args.expr:
        res = evaluate_expression(args.expr, A)
        if args.format == "json":
            _emit(json.dumps({"det": json.loads(format_scalar(res.value, "json")), "expression": res.expression, "sign": res.sign_convention}))
        else:
            _emit(format_scalar(res.value))
        return EXIT_OK
    value = determinant(A)
    _emit(json.dumps({"det": json.loads(format_scalar(value, "json"))}) if args.format == "json" else format_scalar(value))
    return EXIT_OK


def cmd_adj(args) -> int:
    from .inverse import det_adj

    A = parse_multivector(args.mv, _metric(args), args.ring)
    _, adj = det_adj(A, args.expr)
    _emit(format_multivector(adj, args.format))
    return EXIT_OK


def cmd_inv(args) -> int:
    from .inverse import inverse

    A = parse_multivector(args.mv, _metric(args), args.ring)
    _emit(format_multivector(inverse(A, args.expr), args.format))
    return EXIT_OK


def cmd_verify(args) -> int:
    from .oracle import oracle_check

    metric = _metric(args)
    rng = np.random.default_rng(args.seed)
    failures = 0
    signs: dict[int, int] = {}
    for i in range(args.samples):
        r = oracle_check(random_multivector(metric, rng, args.ring))
        failures += not r.passed
        signs[r.sign] = signs.get(r.sign, 0) + 1
        if args.format == "json":
            _emit(json.dumps({"sample": i, "det": str(r.clifford_det), "matrix_det": str(r.matrix_det), "exponent": r.exponent, "sign": r.sign, "passed": r.passed}))
    summary = {"dim": metric.dim, "metric": [str(g) for g in metric.entries], "samples": args.samples, "failures": failures, "signs": {str(k): v for k, v in sorted(signs.items())}}
    if args.format == "json":
        _emit(json.dumps({"summary": summary}))
    else:
        _emit(f"dim {metric.dim}: {args.samples - failures}/{args.samples} passed, signs {summary['signs']}")
    return EXIT_OK if failures == 0 else EXIT_CHECK


def cmd_expand(args) -> int:
    from .catalog import canonical_expression
    from .symbolic import coefficient_of, expand, term_count, to_native

    metric = _metric(args)
    expr = args.expr or canonical_expression(metric.dim)
    poly = expand(expr, metric.dim, metric, backend=args.backend)
    if args.coeff:
        c = coefficient_of(poly, args.coeff, metric.dim)
        _emit(json.dumps({"monomial": args.coeff, "coefficient": str(c)}) if args.format == "json" else str(c))
        return EXIT_OK
    terms, degree = term_count(poly)
    if args.count_only:
        _emit(json.dumps({"terms": terms, "order": degree}) if args.format == "json" else f"{terms} terms, order {degree}")
        return EXIT_OK
    text = to_native(poly).to_text(metric.dim)
    _emit(json.dumps({"terms": terms, "order": degree, "polynomial": text}) if args.format == "json" else text)
    return EXIT_OK


def cmd_search(args) -> int:
    from .search import dedup, search_nested, search_plain_products

    metric = _metric(args)
    common = dict(seed=args.seed, jobs=args.jobs, checkpoint=args.checkpoint, metric=metric)
    if args.family == "nested":
        report = search_nested(metric.dim, args.depth, **common)
    else:
        report = search_plain_products(metric.dim, args.length, huge=args.huge, **common)
    for v in report.verdicts:
        if args.format == "text":
            tag = "det" if v.det_valued else ("class " + str(v.value_class) if v.value_class is not None else "scalar")
            _emit(f"{v.text}  [{tag}]")
        else:
            _emit(json.dumps(v.to_json()))
    summary = dict(report.summary)
    det_hits = report.det_valued()
    if det_hits:
        summary["det_classes"] = len(dedup(det_hits, metric.dim))
    if args.format == "text":
        _emit("summary: " + ", ".join(f"{k}={v}" for k, v in summary.items()))
    else:
        _emit(json.dumps({"summary": summary}))
    return EXIT_OK


def cmd_group(args) -> int:
    from .group import cayley_table, cosets, normal_subgroup, op_label

    part = cosets(args.dim)
    if args.format == "json":
        out = {
            "dim": args.dim,
            "normal_subgroup": [op_label(S) for S in normal_subgroup(args.dim)],
            "cosets": {name: [op_label(S) for S in row] for name, row in zip(part.set_names, part.cosets)},
        }
        if args.cayley:
            t = cayley_table(args.dim)
            out["cayley"] = {"labels": list(t.labels), "rows": t.rows_as_labels(), "type": t.isomorphism_type()}
        _emit(json.dumps(out))
        return EXIT_OK
    width = max(len(op_label(S)) for row in part.cosets for S in row) + 2
    for name, row in zip(part.set_names, part.cosets):
        _emit(f"{name:<7}" + "".join(f"{op_label(S):>{width}}" for S in row))
    if args.cayley:
        t = cayley_table(args.dim)
        w = max(map(len, t.labels)) + 2
        _emit("")
        _emit(" " * w + "".join(f"{x:>{w}}" for x in t.labels))
        for label, row in zip(t.labels, t.rows_as_labels()):
            _emit(f"{label:>{w}}" + "".join(f"{x:>{w}}" for x in row))
        _emit(f"isomorphic to {t.isomorphism_type()}")
    return EXIT_OK


def cmd_tables(args) -> int:
    from .tables import class_count_table, contribution_table

    if args.table == "contributions":
        table = contribution_table(args.dim, parse_signed_grades(args.negate or ""))
    else:
        table = class_count_table(args.dim)
    _emit(json.dumps(table.to_json()) if args.format == "json" else table.to_text())
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _jobs_default() -> int:
    try:
        return max(1, int(os.environ.get("CLIFF_JOBS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cliff", description="Clifford determinants, inverses and their verification tools.")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp):
        sp.add_argument("--format", choices=("text", "json", "csv"), default="text")

    for name, fn, text in (
        ("det", cmd_det, "determinant of a multivector"),
        ("adj", cmd_adj, "adjugate of a multivector"),
        ("inv", cmd_inv, "inverse of a multivector"),
    ):
        sp = sub.add_parser(name, help=text)
        sp.add_argument("--metric", required=True, help="e.g. +,+,- or 1,1,-1")
        sp.add_argument("--mv", required=True, help="literal such as 1+2e1-3e12")
        sp.add_argument("--expr", help="catalog expression id (default: canonical)")
        sp.add_argument("--ring", choices=("rational", "float", "complex"), default="rational")
        fmt(sp)
        sp.set_defaults(func=fn)

    sp = sub.add_parser("verify", help="compare with the regular-representation matrix")
    sp.add_argument("--dim", type=int)
    sp.add_argument("--metric")
    sp.add_argument("--samples", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--ring", choices=("rational", "float"), default="rational")
    fmt(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("expand", help="symbolic expansion of a determinant expression")
    sp.add_argument("--dim", type=int)
    sp.add_argument("--metric")
    sp.add_argument("--expr")
    sp.add_argument("--count-only", action="store_true")
    sp.add_argument("--coeff", help="monomial such as 'a2 a3 a12 a13'")
    sp.add_argument("--backend", choices=("native", "flint", "auto"), default="auto")
    fmt(sp)
    sp.set_defaults(func=cmd_expand)

    sp = sub.add_parser("search", help="exhaustive search for scalar-valued expressions")
    sp.add_argument("family", choices=("nested", "product"))
    sp.add_argument("--dim", type=int)
    sp.add_argument("--metric")
    sp.add_argument("--depth", type=int, default=2)
    sp.add_argument("--length", type=int, default=4)
    sp.add_argument("--jobs", type=int, default=_jobs_default())
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--huge", action="store_true", help="allow the length-8 product search")
    sp.add_argument("--checkpoint")
    sp.add_argument("--format", choices=("text", "json"), default="json")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("group", help="cosets of the grade-negation group")
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--cayley", action="store_true")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_group)

    sp = sub.add_parser("tables", help="self-product contribution and class-count tables")
    sp.add_argument("table", choices=("contributions", "counts"))
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--negate", help="grades negated in the second factor, e.g. 12")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_tables)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Singular as exc:
        print(f"cliff: singular: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except UnsupportedDimension as exc:
        print(f"cliff: unsupported dimension: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except (ParseError, CliffordError, KeyError, ValueError) as exc:
        print(f"cliff: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
