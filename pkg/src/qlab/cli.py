"""Command-line front end: ``expand``, ``verify``, ``oracle`` and ``list``.

Exit codes: 0 when every requested check passes, 1 when a check fails,
2 on a usage or parameter error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Sequence

from qlab.closedforms import ClosedForm, ClosedFormId, closed_form
from qlab.doubleseries import Family, FamilyId, SeriesId, double_series, family_series
from qlab.hyperg import lambert_theta
from qlab.partitions import enumerate_representations, representation_count
from qlab.registry import DEFAULT_ORDER_CAP, ORACLE_CAP, Severity, find, list_identities, verify_all
from qlab.series import LaurentSeries

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _family_by_name(name: str) -> Family | None:
    key = name.replace("′", "'").upper()
    for fam in Family:
        if fam.value == key or fam.name == key:
            return fam
    return None


def resolve_series(name: str, m: int | None) -> Callable[[int], LaurentSeries]:
    """Map a CLI series name to an ``order -> series`` builder."""
    low = name.strip().lower()
    if low in ("f1", "f2", "g"):
        sid = SeriesId.parse(low)
        return lambda order: double_series(sid, order)
    if low == "lambert":
        return lambert_theta
    fam = _family_by_name(name.strip())
    if fam is not None:
        if m is None:
            raise UsageError(f"series {name} needs --m")
        try:
            fid = FamilyId(fam, m)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return lambda order: family_series(fid, order)
    try:
        tag = ClosedForm(low)
    except ValueError:
        known = ["f1", "f2", "g", "lambert", "A", "A'", "B", "B'"] + [t.value for t in ClosedForm]
        raise UsageError(f"unknown series {name!r}; choose from: {', '.join(known)}") from None
    try:
        cid = ClosedFormId(tag, m)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return lambda order: closed_form(cid, order)


def _check_order(order: int, cap: int) -> None:
    if order < 0:
        raise UsageError(f"order must be nonnegative, got {order}")
    if order > cap:
        raise UsageError(f"order {order} exceeds the safety cap {cap} (raise it with --order-cap)")


def cmd_expand(args) -> int:
    build = resolve_series(args.series, args.m)
    _check_order(args.order, args.order_cap)
    s = build(args.order)
    coeffs = s.coefficients(0, args.order)
    if args.format == "json":
        print(_dump({"series": args.series, "order": args.order, "coeffs": [str(c) for c in coeffs]}))
    else:
        print(s)
        for e, c in enumerate(coeffs):
            print(f"{e:>6}  {c}")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.all == bool(args.id):
        raise UsageError("give exactly one of --id PATTERN or --all")
    if args.order is not None:
        _check_order(args.order, args.order_cap)
    ids = None
    if args.id:
        matched = find(args.id)
        if not matched:
            raise UsageError(f"no identity matches {args.id!r}")
        ids = [r.id for r in matched]
    summary = verify_all(args.order, ids=ids, jobs=args.jobs, order_cap=args.order_cap)
    if args.format == "json":
        print(_dump({
            "reports": [r.to_json() for r in summary.reports],
            "summary": {
                "passed": summary.passed,
                "hard_failed": summary.hard_failed,
                "info_failed": summary.info_failed,
                "wall_ms": summary.wall_ms,
            },
        }))
    else:
        for r in summary.reports:
            print(r)
        print(summary)
    return EXIT_OK if summary.ok else EXIT_FAIL


def cmd_oracle(args) -> int:
    try:
        sid = SeriesId.parse(args.series)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.max_n < 0:
        raise UsageError("--max-n must be nonnegative")
    if args.max_n > args.cap:
        raise UsageError(f"--max-n {args.max_n} exceeds the oracle cap {args.cap} (raise it with --cap)")
    if args.list_reps is not None and not 0 <= args.list_reps <= args.cap:
        raise UsageError(f"--list-reps must lie in 0..{args.cap}")
    series = double_series(sid, args.max_n)
    rows = []
    for n in range(1, args.max_n + 1):
        oracle, coeff = representation_count(sid, n), series.coeff_at(n)
        rows.append({"n": n, "oracle": oracle, "series": coeff, "match": oracle == coeff})
    reps = enumerate_representations(sid, args.list_reps) if args.list_reps is not None else None
    ok = all(r["match"] for r in rows)
    if args.format == "json":
        out = {
            "series": sid.name.lower(),
            "max_n": args.max_n,
            "rows": [{k: (v if k == "match" else str(v)) for k, v in r.items()} for r in rows],
            "ok": ok,
        }
        if reps is not None:
            out["reps"] = [
                {"sign": str(r.sign), "n": str(r.n), "k": str(r.k),
                 "evens": [str(p) for p in r.evens], "odds": [str(p) for p in r.odds]}
                for r in reps
            ]
        print(_dump(out))
    else:
        print(f"{'n':>4} {'oracle':>10} {'series':>10}  match")
        for r in rows:
            print(f"{r['n']:>4} {r['oracle']:>10} {r['series']:>10}  {'yes' if r['match'] else 'NO'}")
        if reps is not None:
            print(f"\nrepresentations of {args.list_reps} ({len(reps)}):")
            for r in reps:
                print(f"  {r}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_list(args) -> int:
    items = list_identities()
    if args.format == "json":
        print(_dump(items))
    else:
        for it in items:
            flags = "" if it["severity"] == Severity.HARD.value else " [info]"
            print(f"{it['id']:<32} {it['kind']:<9} {it['default_order']:>4}{flags}  {it['anchor']}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")
    fmt.add_argument("--order-cap", type=int, default=DEFAULT_ORDER_CAP, help="largest order accepted")

    p = argparse.ArgumentParser(prog="qlab", description="Exact q-series expansion and identity checks.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("expand", parents=[fmt], help="print the coefficients of a series")
    e.add_argument("--series", required=True, help="f1, f2, g, theta, lambert, A, A', B, B' or a closed-form tag")
    e.add_argument("--order", type=int, required=True)
    e.add_argument("--m", type=int, help="family or closed-form parameter")
    e.set_defaults(func=cmd_expand)

    v = sub.add_parser("verify", parents=[fmt], help="verify catalogued identities")
    v.add_argument("--id", help="exact id or glob pattern")
    v.add_argument("--all", action="store_true")
    v.add_argument("--order", type=int, help="override each record's default order")
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", parents=[fmt], help="compare the representation oracle to the series")
    o.add_argument("--series", required=True, choices=("f1", "f2", "g"))
    o.add_argument("--max-n", type=int, required=True)
    o.add_argument("--list-reps", type=int, metavar="N", help="also list the representations of N")
    o.add_argument("--cap", type=int, default=ORACLE_CAP, help="largest --max-n accepted")
    o.set_defaults(func=cmd_oracle)

    li = sub.add_parser("list", parents=[fmt], help="dump the identity catalog")
    li.set_defaults(func=cmd_list)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"qlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
