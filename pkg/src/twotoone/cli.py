"""Command line front end: twotoone <command> [flags].

Exit status is 0 on success, 1 when a table diff or verification finds a mismatch,
and 2 on usage, admissibility or capacity errors.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import codes, families, gf, polysolve, search
from .mappings import MappingSpec, is_two_to_one_count, is_two_to_one_derivative

OK, MISMATCH, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, data: dict, lines: list[str]):
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print("\n".join(lines))


def _field(args) -> gf.FieldCtx:
    return gf.make_field(args.k, args.l, args.modulus)


def _int(text: str) -> int:
    return int(text, 0)


def _family_c(fid, ctx, c):
    if c is not None:
        return c
    cs = families.admissible_c_values(fid, ctx)
    if not cs:
        raise UsageError(f"{families.FamilyId(fid).value} has no admissible c at (k, l) = ({ctx.k}, {ctx.l})")
    return cs[0]


# ---------------------------------------------------------------------------
# commands

def cmd_field_info(args) -> int:
    ctx = _field(args)
    data = ctx.to_json()
    _emit(args, data, [f"GF(2^{ctx.n}) as GF(q^l), q = 2^{ctx.k}, l = {ctx.l}",
                       f"modulus {bin(ctx.modulus)} ({ctx.modulus})", f"generator {ctx.generator}"])
    return OK


def cmd_check(args) -> int:
    if args.stdin:
        data = json.loads(sys.stdin.read())
        spec = MappingSpec.from_json(data.get("mapping", data))
    else:
        if args.k is None or args.l is None or args.c is None or not args.exponents:
            raise UsageError("check needs --k, --l, --c and --exponents (or --stdin)")
        spec = MappingSpec(_field(args), args.c, args.outer_d, tuple(args.exponents))
    count = is_two_to_one_count(spec)
    data = {"mapping": spec.to_json(), "two_to_one": count}
    if args.derivative:
        data["derivative_criterion"] = is_two_to_one_derivative(spec)
    _emit(args, data, [f"2-to-1: {str(count).lower()}"])
    return OK


def cmd_construct(args) -> int:
    ctx = _field(args)
    fid = families.FamilyId(args.family)
    c = _family_c(fid, ctx, args.c)
    spec = families.build(families.FamilyParams(fid, args.k, args.l, c), ctx)
    data = {"family": fid.value, "mapping": spec.to_json()}
    exps = " + ".join(f"x^{d}" for d in spec.trace_exponents)
    _emit(args, data, [f"{fid.value}: f(x) = {c}*x + Tr({exps}) over GF(2^{ctx.n})"])
    return OK


def cmd_verify_family(args) -> int:
    ctx = _field(args)
    fid = families.FamilyId(args.family)
    bad = families.structural_violations(fid, args.k, args.l)
    if bad:
        raise UsageError(f"{fid.value} at (k, l) = ({args.k}, {args.l}) requires: {', '.join(bad)}")
    report = families.verify_family(fid, args.k, args.l, ctx)
    data = report.to_json()
    _emit(args, data, [f"{fid.value} (k, l) = ({args.k}, {args.l}): {data['summary']}"])
    return OK if report.passed else MISMATCH


def _hit_line(h: search.SearchHit) -> str:
    exps = ", ".join(map(str, h.exponents))
    return f"  d = {h.outer_d}  exponents ({exps})  c: {h.c_range} [{len(h.cs)} values]"


def cmd_search(args) -> int:
    run = search.run_single_trace if args.form == "single" else search.run_double_trace
    result = run(args.k, args.l, jobs=args.jobs, long_run=args.long_run, modulus=args.modulus)
    data = result.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(data, fh, sort_keys=True, indent=1)
    lines = [f"{args.form}-trace search at (k, l) = ({args.k}, {args.l}): {len(result.hits)} hits"]
    lines += [_hit_line(h) for h in result.hits]
    _emit(args, data, lines)
    return OK


def cmd_diff_tables(args) -> int:
    result, diff = search.diff_tables(args.which, args.k, args.l, jobs=args.jobs, long_run=args.long_run)
    data = {"which": args.which, "k": args.k, "l": args.l, **diff.to_json()}
    lines = [f"table {args.which} at (k, l) = ({args.k}, {args.l}): {'match' if diff.empty else 'MISMATCH'}"]
    for tag, rows in (("missing", diff.missing), ("extra in results", diff.extra), ("c mismatch", diff.c_mismatch)):
        lines += [f"  {tag}: {json.dumps(r, sort_keys=True)}" for r in rows]
    _emit(args, data, lines)
    return OK if diff.empty else MISMATCH


def cmd_code(args) -> int:
    ctx = _field(args)
    fid = families.FamilyId(args.family)
    c = _family_c(fid, ctx, args.c)
    spec = families.build(families.FamilyParams(fid, args.k, args.l, c), ctx)
    method = None if args.minimal == "none" else args.minimal
    report = codes.build_code(ctx, spec, minimal_method=method)
    if args.emit_weights:
        codes.write_weights_csv(args.emit_weights, report.weight_distribution)
    data = {"family": fid.value, "mapping": spec.to_json(), **report.to_json()}
    try:
        data["closed_form"] = {str(w): m for w, m in codes.predicted_distribution(fid, args.k, args.l).items()}
    except ValueError:
        data["closed_form"] = None
    lines = [f"[{report.length}, {report.dimension}, {report.min_distance}] code, d_K = {report.d_K}",
             "weights: " + ", ".join(f"{w}:{m}" for w, m in report.weight_distribution.items()),
             f"self-orthogonal: {report.self_orthogonal}  minimal: {report.minimal} ({report.minimal_method})"]
    _emit(args, data, lines)
    return OK


def cmd_classify(args) -> int:
    ctx = _field(args)
    if args.degree == "cubic":
        pattern = polysolve.cubic_classify(ctx, args.a, args.b)
        data = {"polynomial": {"a": args.a, "b": args.b}, "pattern": list(pattern)}
    else:
        pattern = polysolve.quartic_classify(ctx, args.a2, args.a1, args.a0)
        data = {"polynomial": {"a2": args.a2, "a1": args.a1, "a0": args.a0}, "pattern": list(pattern)}
    data["field"] = ctx.to_json()
    _emit(args, data, [f"factorisation pattern {tuple(pattern)}"])
    return OK


# ---------------------------------------------------------------------------
# parser

def _common(p, field_required=True):
    p.add_argument("--k", type=int, required=field_required)
    p.add_argument("--l", type=int, required=field_required)
    p.add_argument("--modulus", type=_int, default=None, help="irreducible polynomial as an integer bit mask")
    p.add_argument("--json", action="store_true", help="machine-readable output with sorted keys")


def _search_flags(p):
    p.add_argument("--jobs", type=int, default=None, help=f"worker processes (default: ${search.JOBS_ENV} or CPU count)")
    p.add_argument("--long-run", action="store_true", help="allow k*l = 12")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twotoone", description="2-to-1 mappings c*x^d + Tr(...) over GF(2^n)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field-info", help="show the field construction")
    _common(p)
    p.set_defaults(func=cmd_field_info)

    p = sub.add_parser("check", help="test whether a mapping is 2-to-1")
    _common(p, field_required=False)
    p.add_argument("--c", type=_int)
    p.add_argument("--outer-d", type=int, default=1)
    p.add_argument("--exponents", type=int, nargs="+")
    p.add_argument("--stdin", action="store_true", help="read a mapping as JSON from standard input")
    p.add_argument("--derivative", action="store_true", help="also run the derivative criterion")
    p.set_defaults(func=cmd_check)

    ids = [f.value for f in families.FamilyId]
    for name, func, helptext in (("construct", cmd_construct, "build a family member"),
                                 ("code", cmd_code, "weight distribution of the code of a family member")):
        p = sub.add_parser(name, help=helptext)
        _common(p)
        p.add_argument("--family", required=True, choices=ids)
        p.add_argument("--c", type=_int, default=None, help="coefficient (default: smallest admissible)")
        if name == "code":
            p.add_argument("--emit-weights", metavar="CSV")
            p.add_argument("--minimal", choices=["auto", "exhaustive", "none"], default="auto")
        p.set_defaults(func=func)

    p = sub.add_parser("verify-family", help="check a family for every admissible c")
    _common(p)
    p.add_argument("--family", required=True, choices=ids)
    p.set_defaults(func=cmd_verify_family)

    p = sub.add_parser("search", help="exhaustive search")
    p.add_argument("form", choices=["single", "double"])
    _common(p)
    _search_flags(p)
    p.add_argument("--out", help="also write the JSON result to a file")
    p.set_defaults(func=cmd_search)
    for form in ("single", "double"):
        p = sub.add_parser(f"search-{form}", help=f"same as 'search {form}'")
        _common(p)
        _search_flags(p)
        p.add_argument("--out")
        p.set_defaults(func=cmd_search, form=form)

    p = sub.add_parser("diff-tables", help="compare a search with the packaged table")
    p.add_argument("--which", required=True, choices=["3-1", "4-1"])
    _common(p)
    _search_flags(p)
    p.set_defaults(func=cmd_diff_tables)

    p = sub.add_parser("classify", help="factorisation pattern of x^3 + a x + b or x^4 + a2 x^2 + a1 x + a0")
    p.add_argument("degree", choices=["cubic", "quartic"])
    _common(p)
    for name in ("a", "b", "a2", "a1", "a0"):
        p.add_argument(f"--{name}", type=_int, default=0)
    p.set_defaults(func=cmd_classify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args)
    except (UsageError, ValueError, gf.CapacityError, search.LongRunRequired, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
