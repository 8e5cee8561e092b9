"""Command-line interface.

Exit codes: 0 success, 1 infeasible / no kolam / failed check,
2 usage error, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .enumeration import count_with_symmetry, generate_with_symmetry, tile_multiset_of
from .errors import CapExceededError, SikkuError
from .feasibility import Infeasible, compose_from_multiset, feasibility_report
from .fileio import dumps_kolam, kolam_to_dict, loads_kolam, multiset_from_dict
from .render import RenderStyle, render_svg, style_with
from .service import TOTAL_CAP, serve_forever
from .strands import trace
from .symmetry import TABLE_LABELS, stabilizer
from .template import Template, Variant, build
from .tiles import TileKind, TileMultiset
from .verify import run_verification

_GROUP_CHOICES = list(TABLE_LABELS)


def _add_template_args(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("--template", choices=["1r", "2r"], required=required, default=None)
    parser.add_argument("-k", type=int, required=required)
    parser.add_argument("-l", type=int, required=required)


def _template_from_args(args: argparse.Namespace) -> Template:
    return build(Variant(args.template), args.k, args.l)


def cmd_count(args: argparse.Namespace) -> int:
    template = _template_from_args(args)
    report = count_with_symmetry(template, args.group)
    if report.no_kolam:
        print("no kolam")
        return 1
    print(f"E_s={report.es} count={report.count_str}")
    return 0


def _table_rows(max_size: int) -> list[tuple[int, int]]:
    rows = []
    for c in range(1, max_size + 1):
        rows.append((c, c))
        if c + 1 <= max_size:
            rows.append((c, c + 1))
    return rows


def cmd_table(args: argparse.Namespace) -> int:
    width = 7
    header = "  k x l " + "".join(f"{label:>{width}}" for label in TABLE_LABELS)
    for variant in Variant:
        print(f"{variant.value.upper()} exponents of the kolam count per point group")
        print(header)
        for k, l in _table_rows(args.max):
            template = build(variant, k, l)
            cells = []
            for label in TABLE_LABELS:
                report = count_with_symmetry(template, label)
                cells.append("-" if report.no_kolam else str(report.es))
            print(f"  {k}x{l:<5}" + "".join(f"{c:>{width}}" for c in cells))
    return 0


def cmd_enumerate(args: argparse.Namespace) -> int:
    template = _template_from_args(args)
    report = count_with_symmetry(template, args.group)
    if report.no_kolam:
        print("no kolam", file=sys.stderr)
        return 1
    limit = args.limit
    if limit is None:
        if report.count > TOTAL_CAP and not args.force:
            print(
                f"census of {report.count_str} exceeds cap {TOTAL_CAP}; "
                "pass --limit or --force",
                file=sys.stderr,
            )
            return 3
        limit = report.count
    kolams = generate_with_symmetry(template, args.group, offset=args.offset, limit=limit)
    if args.format == "jsonl":
        for k in kolams:
            record = kolam_to_dict(k)
            record["stabilizer"] = stabilizer(k).token()
            print(json.dumps(record, sort_keys=True))
        return 0
    out_dir = Path(args.out or ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    for i, k in enumerate(kolams):
        path = out_dir / f"kolam-{args.offset + i:06d}.svg"
        path.write_text(render_svg(k), encoding="utf-8")
    print(f"wrote {len(kolams)} files to {out_dir}")
    return 0


def _load_kolam_file(path: str):
    return loads_kolam(Path(path).read_text(encoding="utf-8"))


def cmd_classify(args: argparse.Namespace) -> int:
    kolam = _load_kolam_file(args.input)
    print(stabilizer(kolam).token())
    return 0


def cmd_trace(args: argparse.Namespace) -> int:
    kolam = _load_kolam_file(args.input)
    result = trace(kolam)
    payload = {
        "loop_count": result.loop_count,
        "loops": [[p.token() for p in loop.ports] for loop in result.loops],
        "multiset": tile_multiset_of(kolam).to_dict(),
    }
    print(json.dumps(payload))
    return 0


def cmd_render(args: argparse.Namespace) -> int:
    kolam = _load_kolam_file(args.input)
    style = style_with(
        RenderStyle(),
        tile_size=args.tile_size,
        show_grid=not args.no_grid,
        show_dots=not args.no_dots,
        show_crossing_marks=args.crossing_marks,
    )
    Path(args.output).write_text(render_svg(kolam, style), encoding="utf-8")
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    multiset = TileMultiset(
        circle=args.circle, drop=args.drop, eye=args.eye,
        door=args.door, fan=args.fan, diamond=args.diamond,
    )
    template = None
    if args.template is not None:
        if args.k is None or args.l is None:
            print("-k and -l are required with --template", file=sys.stderr)
            return 2
        template = build(Variant(args.template), args.k, args.l)
    report = feasibility_report(multiset, template)
    print(json.dumps(report.to_dict()))
    return 0 if report.ok else 1


def cmd_compose(args: argparse.Namespace) -> int:
    template = _template_from_args(args)
    multiset = multiset_from_dict(json.loads(args.multiset))
    result = compose_from_multiset(template, multiset)
    if isinstance(result, Infeasible):
        print(json.dumps({"infeasible": result.to_dict()}))
        return 1
    print(dumps_kolam(result))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    results = run_verification(args.max_edges)
    failed = 0
    for r in results:
        status = "ok" if r.ok else "FAIL"
        print(f"{status:4} {r.name}: {r.detail}")
        failed += 0 if r.ok else 1
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 1


def cmd_serve(args: argparse.Namespace) -> int:
    ui_dir = args.ui_dir
    if ui_dir is None:
        bundled = Path.cwd() / "frontend" / "dist"
        ui_dir = str(bundled) if bundled.is_dir() else None
    serve_forever(args.host, args.port, ui_dir)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sikku",
        description="Square-tile sikku kolam engine: count, enumerate, check, trace, render, serve.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="independently specifiable edges and kolam count for a group")
    _add_template_args(p)
    p.add_argument("--group", choices=_GROUP_CHOICES, required=True)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("table", help="exponent grid per template size and point group")
    p.add_argument("--max", type=int, default=5)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("enumerate", help="generate kolams with a given symmetry")
    _add_template_args(p)
    p.add_argument("--group", choices=_GROUP_CHOICES, required=True)
    p.add_argument("--offset", type=int, default=0)
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--format", choices=["jsonl", "svg-dir"], default="jsonl")
    p.add_argument("--out", default=None, help="output directory for svg-dir format")
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("classify", help="stabilizer point group of a kolam file")
    p.add_argument("-i", "--input", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("trace", help="closed-loop report of a kolam file")
    p.add_argument("-i", "--input", required=True)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("render", help="render a kolam file to SVG")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--tile-size", type=float, default=100.0)
    p.add_argument("--no-grid", action="store_true")
    p.add_argument("--no-dots", action="store_true")
    p.add_argument("--crossing-marks", action="store_true")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("check", help="feasibility of a tile multiset")
    for kind in TileKind:
        p.add_argument(f"--{kind.value}", type=int, default=0)
    _add_template_args(p, required=False)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("compose", help="search a crossing assignment realizing a multiset")
    _add_template_args(p)
    p.add_argument("--multiset", required=True, help='JSON like {"door": 4}')
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("verify", help="run the brute-force consistency suite")
    p.add_argument("--max-edges", type=int, default=12)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8008)
    p.add_argument("--ui-dir", default=None)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceededError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 3
    except SikkuError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def console() -> None:  # pragma: no cover - thin wrapper
    sys.exit(main())
