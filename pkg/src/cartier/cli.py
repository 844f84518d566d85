"""Command line front end.

Exit codes: 0 success, 1 a mathematical expectation failed (inconsistent
routes, unstable basis, non-maximal curve, violated bound), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .ag_codes import bound_report, build_code
from .cartier_engine import (
    DEFAULT_H_RANGE,
    DEFAULT_Y_RESIDUE,
    GENUS_LIMIT,
    a_closed,
    a_number,
    closed_report,
    conjecture_check,
    rank_closed,
    rank_congruence,
)
from .curve_models import (
    ArtinSchreierCurve,
    GeneralizedHermitianCurve,
    is_maximal,
    rational_points,
)
from .errors import BasisNotStable, CartierError
from .gf_tower import ENUMERATION_LIMIT, is_prime


class UsageError(Exception):
    pass


def _curve(args) -> ArtinSchreierCurve:
    try:
        return ArtinSchreierCurve(args.p, args.s, args.t)
    except CartierError as exc:
        raise UsageError(str(exc)) from exc


def _render(payload, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    lines = []

    def walk(obj, indent=""):
        if isinstance(obj, dict):
            for k, v in obj.items():
                if isinstance(v, (dict, list)):
                    lines.append(f"{indent}{k}:")
                    walk(v, indent + "  ")
                else:
                    lines.append(f"{indent}{k}: {v}")
        elif isinstance(obj, list):
            for n, v in enumerate(obj):
                lines.append(f"{indent}[{n}]")
                walk(v, indent + "  ")
        else:
            lines.append(f"{indent}{obj}")

    walk(payload)
    return "\n".join(lines) + "\n"


def _table_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return buf.getvalue()


# -- subcommands --------------------------------------------------------------

def cmd_anumber(args) -> tuple[str, int]:
    curve = _curve(args)
    if args.format == "csv":
        raise UsageError("anumber supports json and pretty output")
    if args.t != 2 and args.method in ("congruence", "closed", "all"):
        raise UsageError("congruence and closed-formula routes exist only for t = 2")
    methods = ["nabla", "congruence", "closed"] if args.method == "all" else [args.method]
    reports, code = [], 0
    for method in methods:
        if method == "nabla":
            try:
                rep = a_number(curve, args.basis_mode, workers=args.workers)
            except BasisNotStable as exc:
                reports.append({"method": "nabla_matrix", "basis_mode": args.basis_mode,
                                "error": f"BasisNotStable: {exc}"})
                code = 1
                continue
            if args.t != 2:
                rep.notes["experimental"] = True
        elif method == "congruence":
            rep = rank_congruence(args.p, args.s, args.h_range, args.y_residue, args.basis_mode)
        else:
            rep = closed_report(args.p, args.s)
        reports.append(rep.as_dict())
    if len(methods) == 1:
        return _render(reports[0], args.format), code
    a_values = {r.get("a_number") for r in reports}
    consistent = code == 0 and len(a_values) == 1
    return _render({"reports": reports, "consistent": consistent}, args.format), 0 if consistent else 1


def cmd_rank_table(args) -> tuple[str, int]:
    try:
        s_list = [int(v) for v in args.s_list.split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError("--s-list must be comma separated integers") from exc
    if args.p_max < 3:
        raise UsageError("--p-max must be at least 3")
    for s in s_list:
        if s < 2 or s % 2:
            raise UsageError(f"s must be even and >= 2, got {s}")
    rows, code = [], 0
    for p in range(3, args.p_max + 1):
        if not is_prime(p):
            continue
        for s in s_list:
            g = (p ** (s // 2) - 1) ** 2 // 4
            row = {"p": p, "s": s, "genus": g, "rank_closed": rank_closed(p, s),
                   "a_closed": a_closed(p, s), "matrix_rank": ""}
            if g <= GENUS_LIMIT and p ** (2 * s) <= ENUMERATION_LIMIT:
                row["matrix_rank"] = a_number(ArtinSchreierCurve(p, s)).rank
                if row["matrix_rank"] != row["rank_closed"]:
                    code = 1
            rows.append(row)
    if args.format == "csv":
        return _table_csv(rows), code
    return _render(rows, args.format), code


def cmd_points(args) -> tuple[str, int]:
    hermitian = args.ell is not None
    if hermitian == (args.p is not None):
        raise UsageError("give either --p/--s or --ell/--r/--m")
    if hermitian:
        if args.r is None or args.m is None:
            raise UsageError("--ell needs --r and --m")
        try:
            curve = GeneralizedHermitianCurve(args.ell, args.r, args.m)
        except CartierError as exc:
            raise UsageError(str(exc)) from exc
        degree = args.degree or curve.field_degree
    else:
        if args.s is None:
            raise UsageError("--p needs --s")
        curve = _curve(args)
        degree = args.degree or curve.field_degree
    if degree % 2:
        raise UsageError("--degree must be even")
    if curve.p**degree > ENUMERATION_LIMIT:
        raise UsageError(f"field of size {curve.p**degree} exceeds {ENUMERATION_LIMIT}")
    if args.format == "csv":
        return rational_points(curve, degree).to_csv(), 0
    rep = is_maximal(curve, degree)
    payload = {"curve": str(curve), **rep.as_dict()}
    if hermitian:
        payload["expected_count"] = curve.expected_points
        expect_ok = rep.count == curve.expected_points and rep.maximal == (args.r == 1)
    else:
        expect_ok = rep.maximal
    return _render(payload, args.format), 0 if expect_ok else 1


def cmd_conjecture(args) -> tuple[str, int]:
    try:
        rep = conjecture_check(args.ell, args.r)
    except CartierError as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "csv":
        raise UsageError("conjecture supports json and pretty output")
    return _render(rep.as_dict(), args.format), 0 if rep.routes_agree else 1


def cmd_code(args) -> tuple[str, int]:
    curve = _curve(args)
    if args.m < 0:
        raise UsageError("--m must be non-negative")
    degree = args.degree or curve.field_degree
    if curve.p**degree > ENUMERATION_LIMIT:
        raise UsageError(f"field of size {curve.p**degree} exceeds {ENUMERATION_LIMIT}")
    try:
        code = build_code(curve, args.m, point_limit=args.n, degree=degree)
    except CartierError as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "csv":
        return code.to_csv(), 0
    rep = bound_report(curve, code)
    return _render(rep.as_dict(), args.format), 1 if rep.violations else 0


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cartier", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, formats=("json", "pretty")):
        sp.add_argument("--format", choices=formats, default=formats[0])
        sp.add_argument("--output", default=None, help="write to this file instead of stdout")

    sp = sub.add_parser("anumber", help="a-number of A_t by one or all routes")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--t", type=int, default=2)
    sp.add_argument("--basis-mode", choices=("valuation", "paper"), default="valuation")
    sp.add_argument("--method", choices=("nabla", "congruence", "closed", "all"), default="nabla")
    sp.add_argument("--h-range", choices=("half", "full"), default=DEFAULT_H_RANGE)
    sp.add_argument("--y-residue", choices=("nabla", "printed"), default=DEFAULT_Y_RESIDUE)
    sp.add_argument("--workers", type=int, default=None)
    common(sp)
    sp.set_defaults(func=cmd_anumber)

    sp = sub.add_parser("rank-table", help="closed-formula ranks with matrix cross-check")
    sp.add_argument("--p-max", type=int, required=True)
    sp.add_argument("--s-list", default="2,4")
    common(sp, ("csv", "json", "pretty"))
    sp.set_defaults(func=cmd_rank_table)

    sp = sub.add_parser("points", help="rational points and maximality")
    sp.add_argument("--p", type=int)
    sp.add_argument("--s", type=int)
    sp.add_argument("--t", type=int, default=2)
    sp.add_argument("--ell", type=int)
    sp.add_argument("--r", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--degree", type=int, default=None,
                    help="count over F_{p^degree}; default 2s (A_t) or 2r (generalized Hermitian)")
    common(sp, ("json", "pretty", "csv"))
    sp.set_defaults(func=cmd_points)

    sp = sub.add_parser("conjecture", help="a-number of y^2 = x + x^l + ... vs the conjectured value")
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_conjecture)

    sp = sub.add_parser("code", help="one-point code C(D, m P_inf) and its distance bounds")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--t", type=int, default=2)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, default=None, help="use only the first n affine points")
    sp.add_argument("--degree", type=int, default=None)
    common(sp, ("json", "pretty", "csv"))
    sp.set_defaults(func=cmd_code)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, code = args.func(args)
    except UsageError as exc:
        parser.exit(2, f"cartier {args.command}: error: {exc}\n")
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
