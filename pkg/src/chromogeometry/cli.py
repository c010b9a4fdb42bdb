"""Command-line front end.

Exit codes: 0 success, 1 query errors present, 2 law failures, 3 parse errors.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .explorer import DEFAULT_HEIGHT, LawId, law_set_hash, verify
from .field import CharacteristicTwo, parse_field_spec
from .render import DEFAULT_SAMPLES, EmptyWindow, render_svg
from .scene import ParseError, dumps, load_scene, run_scene

EXIT_OK, EXIT_QUERY_ERRORS, EXIT_LAW_FAILURES, EXIT_PARSE = 0, 1, 2, 3


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _analyze(args, svg_path: str | None, emit_report: bool = True) -> int:
    try:
        scene = load_scene(args.scene)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    report = run_scene(scene)
    text = report.dumps()
    if svg_path:
        try:
            svg = render_svg(scene, report, args.samples)
        except EmptyWindow as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_PARSE
        _write(svg, svg_path)
    if emit_report:
        _write(text, args.out)
    return EXIT_QUERY_ERRORS if report.has_errors else EXIT_OK


def cmd_run(args) -> int:
    return _analyze(args, args.svg)


def cmd_render(args) -> int:
    return _analyze(args, args.svg, emit_report=args.out is not None)


def cmd_verify(args) -> int:
    try:
        f = parse_field_spec(args.field)
    except CharacteristicTwo as exc:
        print(f"error: {exc}; fields of characteristic 2 are not supported", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if args.trials < 1:
        print("error: --trials must be at least 1", file=sys.stderr)
        return EXIT_PARSE
    laws = list(LawId) if args.law == "all" else [LawId(args.law)]
    reports = [verify(law, f, args.trials, args.seed, args.height, args.jobs).to_json() for law in laws]
    _write(dumps({"law_set": law_set_hash(), "reports": reports}), args.out)
    return EXIT_LAW_FAILURES if any(r["failures"] for r in reports) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chromo", description="Exact chromogeometry: blue, red and green metrics.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__} (law set {law_set_hash()})")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="evaluate a scene's queries and print the exact report")
    run.add_argument("scene")
    run.add_argument("--out", help="report file (default stdout)")
    run.add_argument("--svg", help="also write an SVG figure")
    run.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="curve samples per scan")
    run.set_defaults(func=cmd_run)

    render = sub.add_parser("render", help="draw a scene as SVG")
    render.add_argument("scene")
    render.add_argument("--svg", required=True, help="SVG output file")
    render.add_argument("--out", default=None, help="also write the report here")
    render.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    render.set_defaults(func=cmd_render)

    ver = sub.add_parser("verify-laws", help="randomized search for counterexamples to the colored laws")
    ver.add_argument("--law", default="all", choices=["all"] + [l.value for l in LawId])
    ver.add_argument("--field", default="q", help="'q' for bounded-height rationals or 'fp:P'")
    ver.add_argument("--trials", type=int, default=1000)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--height", type=int, default=DEFAULT_HEIGHT, help="bound on rational numerators/denominators")
    ver.add_argument("--jobs", type=int, default=1, help="worker processes; results do not depend on it")
    ver.add_argument("--out", default=None)
    ver.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage, which would read as a law failure
        return EXIT_PARSE if exc.code == 2 else (exc.code or 0)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
