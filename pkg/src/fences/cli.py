"""Command line interface: ``fences rank-poly|cd|sweep|export|verify``.

Machine output (JSON, JSON lines, DOT, CSV) goes to stdout or ``--output``;
human summaries go to stderr.  Exit codes: 0 success, 1 a check failed,
2 usage or parse error, 3 enumeration limit exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .chains import search_centered_cd, validate_cd
from .conjectures import (
    CD_KIND,
    FamilySpec,
    construct_centered_cd,
    estimated_ideal_count,
    predict_shape,
    run_check,
    summarize,
    sweep,
)
from .constructions import (
    cd_d_divided,
    cd_three_segment,
    cd_two_segment,
    d_divided_fence_cd,
    lex_cd,
    lift_ncd,
    seed_for_lift,
    trivial_cd,
)
from .lattice import build_lattice, rank_sequence
from .polynomial import rank_poly_explicit, rank_poly_recursive, shape_classify
from .poset import (
    DEFAULT_LIMIT,
    CompositionError,
    LimitExceeded,
    build_d_divided,
    build_fence,
    fence_size,
    parse_composition,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _err(*args):
    print(*args, file=sys.stderr)


def _composition(text: str):
    try:
        return parse_composition(text)
    except CompositionError as exc:
        raise UsageError(f"bad composition {text!r} at position {exc.position}: {exc}") from exc


def _check_limit(n: int, limit: int, estimate=None):
    if limit > DEFAULT_LIMIT and estimate is not None:
        _err(f"estimated ideal count: {estimate()}")
    if n > limit:
        raise LimitExceeded(f"{n} elements exceeds the enumeration limit {limit} (use --limit)")


def _target(args):
    """``(poset, alpha_or_None, (n, d)_or_None)`` from ``kind values...``."""
    if args.kind == "fence":
        if len(args.values) != 1:
            raise UsageError("fence takes one composition, e.g. 2,3,1")
        alpha = _composition(args.values[0])
        return build_fence(alpha), alpha, None
    if len(args.values) != 2:
        raise UsageError("ddivided takes two integers N D")
    try:
        n, d = (int(v) for v in args.values)
    except ValueError as exc:
        raise UsageError(f"ddivided expects integers, got {args.values}") from exc
    if n < 1 or d < 1:
        raise UsageError("ddivided needs N, D >= 1")
    return build_d_divided(n, d), None, (n, d)


def _write(args, text: str):
    if getattr(args, "output", None):
        try:
            Path(args.output).write_text(text)
        except OSError as exc:
            raise UsageError(f"cannot write {args.output}: {exc}") from exc
    else:
        sys.stdout.write(text)


# -- subcommands --------------------------------------------------------------

def cmd_rank_poly(args) -> int:
    alpha = _composition(args.composition)
    methods = ["brute", "recursive", "explicit"] if args.method == "all" else [args.method]
    if "explicit" in methods and len(alpha) % 2 == 0:
        if args.method == "explicit":
            raise UsageError("the explicit formula needs an odd number of parts")
        methods.remove("explicit")
    results = {}
    for method in methods:
        if method == "brute":
            _check_limit(fence_size(alpha), args.limit, lambda: estimated_ideal_count(alpha))
            results[method] = list(rank_sequence(build_lattice(build_fence(alpha), args.limit)))
        elif method == "recursive":
            results[method] = list(rank_poly_recursive(alpha))
        else:
            results[method] = list(rank_poly_explicit(alpha))
    values = list(results.values())
    agree = all(v == values[0] for v in values)
    coeffs = values[0]
    flags = shape_classify(coeffs)
    out = "[" + ",".join(map(str, coeffs)) + "]\n"
    summary = {"shape": flags.classify(), "flags": flags.__dict__, "methods": methods, "agree": agree}
    if not agree:
        summary["results"] = results
    out += json.dumps(summary, separators=(",", ":")) + "\n"
    _write(args, out)
    _err(f"agree: {str(agree).lower()}")
    return EXIT_OK if agree else EXIT_FAIL


def _build_cd(args, P, alpha, nd):
    construction = args.construction
    if nd is not None:
        if construction not in ("auto", "ddivided", "lex"):
            raise UsageError(f"construction {construction!r} does not apply to a d-divided poset")
        return lex_cd(P, args.order) if construction == "lex" else cd_d_divided(*nd, limit=args.limit)
    s = len(alpha)
    if construction == "auto":
        kind = CD_KIND[predict_shape(alpha)]
        cd = construct_centered_cd(alpha, kind, args.limit)
        if cd is None:
            _err("no centered construction applies; falling back to the lexicographic CD")
            cd = lex_cd(P, args.order, limit=args.limit)
        return cd
    if construction == "two":
        if s != 2:
            raise UsageError("the two-segment construction needs exactly two parts")
        return cd_two_segment(*alpha)
    if construction == "three":
        if s != 3:
            raise UsageError("the three-segment construction needs exactly three parts")
        return cd_three_segment(*alpha, limit=args.limit)
    if construction == "ddivided":
        try:
            return d_divided_fence_cd(alpha, args.limit)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    if construction == "lex":
        return lex_cd(P, args.order, limit=args.limit)
    if construction == "lift":
        lifted = seed_for_lift(alpha)
        if lifted is None:
            raise UsageError("lifting needs a part larger than the sum of the others")
        seed, t, steps = lifted
        kind = CD_KIND[predict_shape(seed)]
        if len(seed) == 1:
            base = trivial_cd(seed)
        elif len(seed) == 2:
            base = cd_two_segment(*seed)
        elif len(seed) == 3:
            base = cd_three_segment(*seed, limit=args.limit)
        else:
            base = search_centered_cd(build_lattice(build_fence(seed), args.limit), kind)
            if base is None:
                raise UsageError(f"no {kind} decomposition of the seed {seed} found")
        cur = seed
        for _ in range(steps):
            base = lift_ncd(cur, t, base, args.limit)
            cur = cur[: t - 1] + (cur[t - 1] + 1,) + cur[t:]
        return base
    raise UsageError(f"unknown construction {construction!r}")


def cmd_cd(args) -> int:
    P, alpha, nd = _target(args)
    _check_limit(P.n, args.limit, (lambda: estimated_ideal_count(alpha)) if alpha else None)
    cd = _build_cd(args, P, alpha, nd)
    report = validate_cd(build_lattice(cd.poset, args.limit), cd)
    doc = cd.to_dict()
    doc.update(construction=cd.construction, valid=report.valid, nested=report.nested, violations=report.violations)
    _write(args, json.dumps(doc, separators=(",", ":")) + "\n")
    _err(f"{cd.construction}: {len(cd.chains)} chains, {report.classification}, valid: {str(report.valid).lower()}")
    return EXIT_OK if report.valid else EXIT_FAIL


def _checks(text: str) -> tuple[str, ...]:
    names = tuple(c.strip() for c in text.split(",") if c.strip())
    known = {"mgo", "heavy", "centered", "centered:construct", "centered:search", "lex"}
    bad = [c for c in names if c not in known]
    if bad or not names:
        raise UsageError(f"unknown checks {bad}; choose from {sorted(known)}")
    return names


def cmd_sweep(args) -> int:
    checks = _checks(",".join(args.check))
    if args.max_n is None and (args.max_segments < 1 or args.max_part < 1):
        raise UsageError("--max-segments and --max-part must be positive")
    spec = FamilySpec(
        max_segments=args.max_segments,
        max_part=args.max_part,
        checks=checks,
        min_segments=args.min_segments,
        max_n=args.max_n,
        lex_scope=args.scope,
        resume_after=_composition(args.resume_after) if args.resume_after else None,
        jobs=args.jobs,
    )
    reports = sweep(spec)
    lines = "".join(r.to_json() + "\n" for r in reports)
    _write(args, lines)
    summary = summarize(reports)
    _err(json.dumps(summary["counts"], sort_keys=True))
    if args.summary:
        try:
            Path(args.summary).write_text(json.dumps(summary, sort_keys=True) + "\n")
        except OSError as exc:
            raise UsageError(f"cannot write {args.summary}: {exc}") from exc
    return EXIT_OK if summary["ok"] else EXIT_FAIL


def cmd_export(args) -> int:
    P, alpha, nd = _target(args)
    if args.format == "dot":
        if args.lattice:
            _check_limit(P.n, args.limit)
            text = lattice_dot(build_lattice(P, args.limit))
        else:
            text = P.to_dot()
    else:
        _check_limit(P.n, args.limit)
        ranks = list(rank_sequence(build_lattice(P, args.limit)))
        if args.format == "json":
            head = {"alpha": list(alpha)} if alpha else {"n": nd[0], "d": nd[1]}
            text = json.dumps(dict(head, ranks=ranks), separators=(",", ":")) + "\n"
        else:
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(["rank", "count"])
            writer.writerows(enumerate(ranks))
            text = buf.getvalue()
    _write(args, text)
    return EXIT_OK


def lattice_dot(L) -> str:
    P = L.poset
    name = lambda I: "{" + ",".join(map(str, P.labels_of(I))) + "}"
    lines = [f'digraph "L({P.name})" {{', "  rankdir=BT;"]
    for I in L.ideals:
        lines.append(f'  "{name(I)}" [rank={I.bit_count()}];')
    for I in L.ideals:
        for J in L.covers_up[I]:
            lines.append(f'  "{name(I)}" -> "{name(J)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    alpha = _composition(args.composition)
    checks = _checks(",".join(args.check))
    reports = [run_check(name, alpha, args.scope) for name in checks]
    _write(args, "".join(r.to_json() + "\n" for r in reports))
    for r in reports:
        _err(f"{r.target}: {r.verdict}")
    return EXIT_FAIL if any(r.verdict == "fail" for r in reports) else EXIT_OK


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fences", description="Fence posets, ideal lattices and their chain decompositions.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--limit", type=int, default=DEFAULT_LIMIT, help="maximum poset size for exhaustive enumeration")
        p.add_argument("-o", "--output", help="write machine output here instead of stdout")

    p = sub.add_parser("rank-poly", help="rank generating function of L(alpha)")
    p.add_argument("composition")
    p.add_argument("--method", choices=["brute", "recursive", "explicit", "all"], default="recursive")
    common(p)
    p.set_defaults(func=cmd_rank_poly)

    p = sub.add_parser("cd", help="build and validate a chain decomposition")
    p.add_argument("kind", choices=["fence", "ddivided"])
    p.add_argument("values", nargs="+")
    p.add_argument("--construction", choices=["auto", "two", "three", "ddivided", "lex", "lift"], default="auto")
    p.add_argument("--order", choices=["sorted", "word"], default="sorted", help="lexicographic order for lex")
    common(p)
    p.set_defaults(func=cmd_cd)

    p = sub.add_parser("sweep", help="run conjecture checks over a family of compositions")
    p.add_argument("--max-segments", type=int, default=3)
    p.add_argument("--min-segments", type=int, default=1)
    p.add_argument("--max-part", type=int, default=4)
    p.add_argument("--max-n", type=int, help="all fences with at most this many elements")
    p.add_argument("--check", action="append", default=None, help="mgo, heavy, centered, centered:search, lex")
    p.add_argument("--scope", choices=["natural", "linear_extensions", "all"], default="all")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--resume-after", help="skip compositions up to and including this one")
    p.add_argument("--summary", help="write the summary JSON here")
    common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("export", help="DOT Hasse diagrams and rank data")
    p.add_argument("kind", choices=["fence", "ddivided"])
    p.add_argument("values", nargs="+")
    p.add_argument("--format", choices=["dot", "json", "csv"], default="dot")
    p.add_argument("--lattice", action="store_true", help="draw the ideal lattice instead of the poset")
    common(p)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("verify", help="run conjecture checks on one composition")
    p.add_argument("composition")
    p.add_argument("--check", action="append", default=None)
    p.add_argument("--scope", choices=["natural", "linear_extensions", "all"], default="all")
    common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "check", "unset") is None:
        args.check = ["mgo", "heavy"]
    try:
        return args.func(args)
    except UsageError as exc:
        _err(f"error: {exc}")
        return EXIT_USAGE
    except LimitExceeded as exc:
        _err(f"error: {exc}")
        return EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())
