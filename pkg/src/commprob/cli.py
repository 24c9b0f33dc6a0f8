"""Command-line front end.

Exit codes: 0 success, 1 failed internal check, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import constructor
from .algebra import commuting_probability, format_rational, parse_rational, profile
from .finite import (
    DEFAULT_MAX_ORDER,
    InsufficientSamples,
    NotPolynomial,
    OrderCapExceeded,
    algebraic_group,
    enumerate_group,
    group_order,
    growth_degree,
)
from .finite.classes import class_data, commuting_pairs, partitions, regular_elements
from .parser import ParseError, format_group_expr, parse_group_expr
from .tables import simple_rows, unipotent_rows


class UsageError(Exception):
    pass


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _emit(args, obj: dict, text: str) -> None:
    if args.json:
        print(json.dumps(obj))
    else:
        print(text)


def cmd_pg(args) -> int:
    g = parse_group_expr(args.expr)
    prof = profile(g)
    p = commuting_probability(g)
    text = f"dim={prof.dim} r={prof.regular_rank} p={format_rational(p)}"
    if args.approx:
        text += f" (~{float(p):.6f})"
    text += (
        f"\nreductive={_yes(prof.is_reductive)} nilpotent={_yes(prof.is_nilpotent)}"
        f" abelian={_yes(prof.is_abelian)}"
    )
    _emit(
        args,
        {
            "expr": format_group_expr(g),
            "dim": prof.dim,
            "regular_rank": prof.regular_rank,
            "p": format_rational(p),
            "is_reductive": prof.is_reductive,
            "is_nilpotent": prof.is_nilpotent,
            "is_abelian": prof.is_abelian,
        },
        text,
    )
    return 0


def _target(text: str) -> Fraction:
    t = parse_rational(text)
    if not Fraction(1, 2) < t <= 1:
        raise UsageError(
            f"target {format_rational(t)} is unattainable: the commuting probability of a "
            "connected linear algebraic group always lies in (1/2, 1]"
        )
    return t


def cmd_construct(args) -> int:
    t = _target(args.target)
    build = constructor.construct_nilpotent if args.nilpotent else constructor.construct_reductive
    g = build(t)
    p = commuting_probability(g)
    expr = format_group_expr(g)
    _emit(
        args,
        {"target": format_rational(t), "group": expr, "p": format_rational(p), "nilpotent": args.nilpotent},
        f"{expr}  p={format_rational(p)}",
    )
    return 0 if p == t else 1


def cmd_limit(args) -> int:
    alpha = parse_rational(args.alpha)
    eps = parse_rational(args.eps)
    if not Fraction(1, 2) <= alpha <= 1 or eps <= 0:
        raise UsageError("need 1/2 <= alpha <= 1 and eps > 0")
    g = constructor.approach_target(alpha, eps)
    p = commuting_probability(g)
    gap = abs(p - alpha)
    _emit(
        args,
        {
            "alpha": format_rational(alpha),
            "eps": format_rational(eps),
            "group": format_group_expr(g),
            "p": format_rational(p),
            "distance": format_rational(gap),
        },
        f"{format_group_expr(g)}  p={format_rational(p)}  |p-alpha|={format_rational(gap)}",
    )
    return 0 if gap <= eps else 1


def cmd_table(args) -> int:
    rows = simple_rows(args.max_rank) if args.which == "simple" else unipotent_rows(args.max_rank)
    cells = [
        [r.group, str(r.dim), str(r.rank), r.p if isinstance(r.p, str) else format_rational(r.p)]
        for r in rows
    ]
    if args.approx:
        for c, r in zip(cells, rows):
            c.append("" if isinstance(r.p, str) else f"{float(r.p):.6f}")
    header = ["group", "dim", "rank", "p"] + (["approx"] if args.approx else [])
    if args.json:
        for c in cells:
            print(json.dumps(dict(zip(header, c))))
    elif args.csv:
        print(",".join(header))
        for c in cells:
            print(",".join(f'"{x}"' if "," in x else x for x in c))
    else:
        print(" | ".join(header))
        print(" | ".join("---" for _ in header))
        for c in cells:
            print(" | ".join(c))
    return 0


def _qlist(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad prime list {text!r}") from None


def cmd_verify(args) -> int:
    primes = _qlist(args.qlist)
    g = algebraic_group(args.family, args.n)
    gname = format_group_expr(g)
    prof = profile(g)
    want_p = args.p or not (args.degrees or args.classes)
    ok = True

    def record(q, metric, value, text, **extra):
        obj = {"group": gname, "q": q, "metric": metric, "value": value}
        obj.update(extra)
        _emit(args, obj, text)

    for q in primes:
        t = enumerate_group(args.family, args.n, q, max_order=args.max_order)
        label = t.name
        k = len(class_data(t).conjugacy)
        good = t.order == group_order(args.family, args.n, q)
        ok &= good
        record(q, "order", t.order, f"{label} order={t.order} {'PASS' if good else 'FAIL'}")
        record(q, "class_count", k, f"{label} class_count={k}")
        if want_p:
            pairs = commuting_pairs(t)
            good = pairs == k * t.order
            ok &= good
            p = Fraction(pairs, t.order**2)
            record(q, "commuting_pairs", pairs,
                   f"{label} pairs={pairs} k|G|={k * t.order} {'PASS' if good else 'FAIL'}",
                   status="PASS" if good else "FAIL")
            record(q, "p", format_rational(p), f"{label} p={format_rational(p)} (k={k}, |G|={t.order})")
        if args.classes:
            parts = partitions(t)
            chain = [parts[a].refines(parts[b]) for a, b in (("conjugacy", "z"), ("z", "iz"), ("iz", "dz"))]
            good = all(chain)
            ok &= good
            for kind, part in parts.items():
                record(q, f"{kind}_classes", len(part), f"{label} {kind}_classes={len(part)}")
            reg = len(regular_elements(t))
            record(q, "regular_elements", reg, f"{label} regular_elements={reg}")
            record(q, "refinement_chain", "PASS" if good else "FAIL",
                   f"{label} conjugacy<=z<=iz<=dz {'PASS' if good else 'FAIL'}")

    if args.degrees:
        for counter, expected in (("order", prof.dim), ("class_count", prof.regular_rank)):
            try:
                deg = growth_degree(args.family, args.n, counter, primes, max_order=args.max_order)
            except (NotPolynomial, InsufficientSamples) as exc:
                record(None, f"{counter}_degree", None, f"{counter} degree=? expected={expected} SKIP ({exc})",
                       expected=expected, status="SKIP")
                continue
            good = deg == expected
            ok &= good
            status = "PASS" if good else "FAIL"
            record(None, f"{counter}_degree", deg, f"{counter} degree={deg} expected={expected} {status}",
                   expected=expected, status=status)
    return 0 if ok else 1


def cmd_classes(args) -> int:
    t = enumerate_group(args.family, args.n, args.q, max_order=args.max_order)
    parts = partitions(t)
    report = {"group": t.name, "order": t.order}
    lines = [f"{t.name} |G|={t.order}"]
    for kind, part in parts.items():
        sizes = sorted(part.block_sizes())
        report[kind] = {"blocks": len(part), "sizes": sizes, "unresolved": sorted(part.unresolved)}
        extra = f" unresolved={sorted(part.unresolved)}" if part.unresolved else ""
        lines.append(f"{kind:>9}: {len(part)} blocks, sizes {sizes}{extra}")
    reg = regular_elements(t)
    report["regular_elements"] = len(reg)
    lines.append(f"regular elements: {len(reg)}")
    chain = all(parts[a].refines(parts[b]) for a, b in (("conjugacy", "z"), ("z", "iz"), ("iz", "dz")))
    report["refinement_chain"] = chain
    lines.append(f"conjugacy <= z <= iz <= dz: {'PASS' if chain else 'FAIL'}")
    if args.json:
        print(json.dumps(report))
    else:
        print("\n".join(lines))
    return 0 if chain else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output (JSON lines)")
    common.add_argument("--max-order", type=int, default=argparse.SUPPRESS,
                        help=f"largest finite group to enumerate (default {DEFAULT_MAX_ORDER})")

    parser = argparse.ArgumentParser(
        prog="commprob", description="Commuting probability of algebraic groups.", parents=[common]
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pg", parents=[common], help="dimension, regular rank and p(G) of an expression")
    p.add_argument("expr")
    p.add_argument("--approx", action="store_true")
    p.set_defaults(func=cmd_pg)

    p = sub.add_parser("construct", parents=[common], help="a group with the given p(G)")
    p.add_argument("target", help="rational in (1/2, 1], e.g. 3/4")
    p.add_argument("--nilpotent", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("limit", parents=[common], help="a group with |p(G) - alpha| <= eps")
    p.add_argument("alpha")
    p.add_argument("eps")
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("table", parents=[common], help="p(G) for simple groups or their unipotent radicals")
    p.add_argument("which", choices=["simple", "unipotent"])
    p.add_argument("--max-rank", type=int, default=8)
    p.add_argument("--csv", action="store_true")
    p.add_argument("--approx", action="store_true")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="brute-force checks on finite groups")
    p.add_argument("family", choices=["GL", "SL", "B", "U"])
    p.add_argument("n", type=int)
    p.add_argument("qlist", help="comma-separated primes, e.g. 2,3,5")
    p.add_argument("--p", action="store_true", help="commuting pairs and finite p")
    p.add_argument("--degrees", action="store_true", help="growth degrees of order and class count")
    p.add_argument("--classes", action="store_true", help="partition sizes and refinement chain")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classes", parents=[common], help="conjugacy / z / iz / dz partitions")
    p.add_argument("family", choices=["GL", "SL", "B", "U"])
    p.add_argument("n", type=int)
    p.add_argument("q", type=int)
    p.set_defaults(func=cmd_classes)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.json = getattr(args, "json", False)
    args.max_order = getattr(args, "max_order", DEFAULT_MAX_ORDER)
    try:
        return args.func(args)
    except (ParseError, UsageError, OrderCapExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
