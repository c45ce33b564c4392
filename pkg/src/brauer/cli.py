"""Command line interface.

Exit codes: 0 on success (an isomorphism search that finds nothing is
still success), 1 when a user-supplied object fails verification, 2 on
usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import canonical, classify, diagrams, green, hd


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _out(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _load_params(n: int, args) -> canonical.ParamTable | None:
    if n <= 3:
        return None
    if getattr(args, "params", None):
        return canonical.ParamTable.from_text(n, _read_text(args.params))
    if getattr(args, "profile", "regular") == "alternating":
        return canonical.ParamTable.alternating(n)
    return canonical.ParamTable.regular(n)


def cmd_mul(args) -> int:
    a = diagrams.parse_diagram(args.a, args.n)
    b = diagrams.parse_diagram(args.b, a.n)
    result = diagrams.compose(a, b)
    _out(
        args,
        {
            "product": diagrams.format_diagram(result.product),
            "circles": result.circles,
        },
        f"{diagrams.format_diagram(result.product)}\ncircles: {result.circles}",
    )
    return 0


def cmd_info(args) -> int:
    a = diagrams.parse_diagram(args.diagram, args.n)
    data = {
        "n": a.n,
        "rank": diagrams.rank(a),
        "corank": diagrams.corank(a),
        "stable_rank": diagrams.stable_rank(a),
        "idempotent": diagrams.mul(a, a) == a,
        "left_cups": [list(c) for c in green.left_cups(a)],
        "right_cups": [list(c) for c in green.right_cups(a)],
        "mirror": diagrams.format_diagram(diagrams.involution(a)),
    }
    text = "\n".join(f"{k}: {v}" for k, v in data.items())
    _out(args, data, text)
    return 0


def cmd_canonical(args) -> int:
    n = args.n
    params = _load_params(n, args)
    try:
        cs = canonical.build_canonical(n, params)
    except canonical.BuildConflict as exc:
        print(f"invalid parameter table: {exc}", file=sys.stderr)
        return 1
    if args.kind == "L":
        cs = classify.l_cross_section(cs)
    if args.verify:
        report = canonical.verify_cross_section(n, cs, cs.kind, full=True)
        if not report.ok:
            print(report.summary(), file=sys.stderr)
            return 1
    print(cs.to_text())
    return 0


def cmd_verify(args) -> int:
    cs = canonical.CrossSection.from_text(_read_text(args.file))
    report = canonical.verify_cross_section(cs.n, cs, cs.kind, full=not args.fast)
    payload = {
        "ok": report.ok,
        "missing": len(report.missing_keys),
        "duplicated": len(report.duplicate_keys),
        "closure_violations": len(report.closure_violations),
    }
    _out(args, payload, report.summary())
    return 0 if report.ok else 1


def cmd_enumerate(args) -> int:
    n = args.n
    if args.what == "canonical":
        sections = classify.enumerate_canonical(n)
    else:
        if n > 5 and not args.elements:
            count = classify.cross_section_count(n)
            _out(args, {"n": n, "count": count}, f"count: {count}")
            return 0
        sections = classify.enumerate_all(n)
    if args.elements:
        for cs in sections:
            print(cs.to_text())
            print()
    else:
        _out(args, {"n": n, "count": len(sections)}, f"count: {len(sections)}")
    return 0


def cmd_classify(args) -> int:
    report = classify.classify(args.n)
    if args.json:
        print(report.to_json())
    else:
        print(f"n={report.n} total={report.total} orbits={len(report.orbits)}")
        for k, o in enumerate(report.orbits, 1):
            print(
                f"orbit {k}: size={o['size']} "
                f"stabilizer_order={o['stabilizer_order']} "
                f"stabilizer={','.join(o['stabilizer'])}"
            )
    return 0


def cmd_iso(args) -> int:
    a = canonical.CrossSection.from_text(_read_text(args.a))
    b = canonical.CrossSection.from_text(_read_text(args.b))
    result = classify.find_isomorphism(a, b)
    if args.json:
        print(result.to_json())
    else:
        print("isomorphic" if result.found else "not isomorphic")
    return 0


def cmd_hsection(args) -> int:
    report = hd.h_cross_section_check(args.n)
    payload = {
        "n": report.n,
        "exists": report.exists,
        "certificate": report.certificate,
    }
    lines = [f"exists: {report.exists}", report.certificate]
    if report.section is not None and args.elements:
        payload["section"] = [diagrams.format_diagram(d) for d in report.section]
        lines += [diagrams.format_diagram(d) for d in report.section]
    _out(args, payload, "\n".join(lines))
    return 0


def cmd_dsection(args) -> int:
    n = args.n
    if args.gamma:
        gamma = hd.parse_is_section(_read_text(args.gamma))
    else:
        gamma = hd.chain_d_section(n // 2)
    try:
        section = hd.d_from_is(gamma, n)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    ok, msg = hd.verify_d_cross_section(n, section)
    if not ok:
        print(f"FAIL: {msg}", file=sys.stderr)
        return 1
    for d in section:
        print(diagrams.format_diagram(d))
    return 0


def cmd_render(args) -> int:
    a = diagrams.parse_diagram(args.diagram, args.n)
    print(diagrams.render_ascii(a))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="brauer", description="Brauer diagram monoid toolbox"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func)
        p.add_argument("--json", action="store_true", help="JSON output")
        return p

    p = add("mul", cmd_mul, "compose two diagrams")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("a")
    p.add_argument("b")

    p = add("info", cmd_info, "rank, cups, and other facts about a diagram")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("diagram")

    p = add("canonical", cmd_canonical, "build a canonical cross-section")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--profile", choices=("regular", "alternating"),
                   default="regular")
    p.add_argument("--params", help="parameter table file (- for stdin)")
    p.add_argument("--kind", choices=("R", "L"), default="R")
    p.add_argument("--verify", action="store_true",
                   help="run full verification before printing")

    p = add("verify", cmd_verify, "verify a cross-section file")
    p.add_argument("file", help="cross-section file (- for stdin)")
    p.add_argument(
        "--fast",
        action="store_true",
        help="check closure only against corank-2 members",
    )

    p = add("enumerate", cmd_enumerate, "enumerate cross-sections")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--what", choices=("canonical", "all"), default="all")
    p.add_argument(
        "--elements", action="store_true", help="print sections, not just counts"
    )

    p = add("classify", cmd_classify, "orbit decomposition under conjugation")
    p.add_argument("--n", type=int, required=True)

    p = add("iso", cmd_iso, "test two cross-section files for isomorphism")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)

    p = add("hsection", cmd_hsection, "H-cross-section existence")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--elements", action="store_true")

    p = add("dsection", cmd_dsection, "build and verify a D-cross-section")
    p.add_argument("--n", type=int, required=True)
    p.add_argument(
        "--gamma", help="partial-injection section file to lift (- for stdin)"
    )

    p = add("render", cmd_render, "ASCII picture of a diagram")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("diagram")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
