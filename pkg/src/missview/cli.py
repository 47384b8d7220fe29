"""Command-line interface: stats, render, synth, serve.

Exit codes: 0 success, 1 usage error, 2 data error. Payload goes to stdout,
diagnostics to stderr. The MISSVIEW_STYLE environment variable names a
default render style file.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import scene as scene_mod
from .ingest import IngestConfig, ParseError, parse_table, write_table
from .stats import DEFAULT_BINS, randomness_report
from .svg import RenderStyle, render
from .synth import (
    ConditionalRemoval,
    InjectionPlan,
    Mcar,
    PlanError,
    apply_plan,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


def _load_dataset(path: str, args):
    cfg = IngestConfig(
        delimiter=getattr(args, "delimiter", ","),
        missing_tokens=tuple(getattr(args, "missing_tokens", "NaN,NA,").split(",")),
    )
    with open(path, "r", encoding="utf-8") as fh:
        return parse_table(fh, cfg)


def _print_table_report(report: dict, top_k: int = 10):
    print(f"{'variable':<24} {'kind':<12} {'AM':>8} {'recorded':>9}")
    for v in report["variables"]:
        print(f"{v['name']:<24} {v['kind']:<12} {v['am']:>8.4f} {v['n_recorded']:>9}")
    pairs = sorted(report["pairs"], key=lambda p: -abs(p["deviation"]))[:top_k]
    if pairs:
        print()
        print(f"{'pair':<36} {'JM':>8} {'expected':>9} {'deviation':>10}")
        for p in pairs:
            name = f"{p['a']} / {p['b']}"
            print(
                f"{name:<36} {p['jm']:>8.4f} {p['expected_jm']:>9.4f} "
                f"{p['deviation']:>+10.4f}"
            )


def cmd_stats(args) -> int:
    try:
        ds = _load_dataset(args.input, args)
    except (OSError, ParseError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA
    if args.select is not None and args.select not in ds.variable_names:
        print(f"error: unknown variable {args.select!r}", file=sys.stderr)
        return EXIT_DATA
    report = randomness_report(ds, bins=args.bins, select=args.select)
    if args.format == "json":
        json.dump(report, sys.stdout, indent=2)
        print()
    else:
        _print_table_report(report)
    return EXIT_OK


def cmd_render(args) -> int:
    try:
        ds = _load_dataset(args.input, args)
    except (OSError, ParseError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA
    if args.select is not None and args.select not in ds.variable_names:
        print(f"error: unknown variable {args.select!r}", file=sys.stderr)
        return EXIT_DATA
    style_path = args.style or os.environ.get("MISSVIEW_STYLE")
    if style_path:
        try:
            with open(style_path, "r", encoding="utf-8") as fh:
                style = RenderStyle.from_json(fh.read())
        except (OSError, json.JSONDecodeError) as e:
            print(f"error: cannot load style: {e}", file=sys.stderr)
            return EXIT_USAGE
    else:
        style = RenderStyle()
    try:
        built = scene_mod.build_scene(
            ds,
            args.layout,
            selection=args.select,
            arc_mode="all" if args.arcs == "all" else "selected",
            attach_glyphs=args.attach_glyphs,
            bins=args.bins,
        )
    except (ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA
    svg = render(built, style)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    print(f"wrote {args.out}", file=sys.stderr)
    return EXIT_OK


def _parse_rate(text: str, context: str) -> float:
    try:
        rate = float(text)
    except ValueError:
        raise PlanError(f"bad rate in {context!r}")
    if not 0.0 <= rate <= 1.0:
        raise PlanError(f"rate {rate} in {context!r} outside [0, 1]")
    return rate


def _parse_mcar_spec(spec: str, variable_names: list[str]) -> list[Mcar]:
    """Mini-grammar: comma-separated NAME=rate, `*` matches every variable.

    Rates given explicitly on the command line are accepted anywhere in
    [0, 1]; the study-procedure ranges only constrain plan files.
    """
    steps = []
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise PlanError(f"bad mcar spec entry {part!r}, expected NAME=rate")
        name, _, rate_text = part.partition("=")
        name = name.strip()
        rate = _parse_rate(rate_text, part)
        targets = variable_names if name == "*" else [name]
        for target in targets:
            if target not in variable_names:
                raise PlanError(f"unknown variable {target!r}")
            steps.append(Mcar(variable=target, rate=rate, allow_out_of_range=True))
    return steps


def cmd_synth(args) -> int:
    try:
        ds = _load_dataset(args.input, args)
    except (OSError, ParseError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA
    try:
        if args.plan:
            with open(args.plan, "r", encoding="utf-8") as fh:
                plan = InjectionPlan.from_json(fh.read())
        else:
            steps = []
            if args.mcar:
                steps.extend(_parse_mcar_spec(args.mcar, ds.variable_names))
            if args.cm:
                bits = args.cm.split(",")
                if len(bits) != 3:
                    raise PlanError("--cm expects X1,X2,RATE")
                steps.append(
                    ConditionalRemoval(
                        x1=bits[0].strip(),
                        x2=bits[1].strip(),
                        rate=_parse_rate(bits[2], args.cm),
                        allow_out_of_range=True,
                    )
                )
            if not steps:
                print("error: nothing to do (need --plan, --mcar, or --cm)", file=sys.stderr)
                return EXIT_USAGE
            plan = InjectionPlan(seed=args.seed, steps=tuple(steps))
        out_ds, manifest = apply_plan(ds, plan)
    except (OSError, PlanError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(write_table(out_ds))
    if args.manifest:
        with open(args.manifest, "w", encoding="utf-8") as fh:
            fh.write(manifest.to_json())
    print(
        f"wrote {args.out} ({len(manifest.removed_cells())} cells removed)",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    app = create_app(data_dir=args.data)
    try:
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    except (OSError, SystemExit) as e:
        print(f"error: cannot serve: {e}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="missview",
        description="Missing-data profiling and glyph visualization toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p):
        p.add_argument("input", help="delimited input file")
        p.add_argument("--delimiter", default=",")
        p.add_argument(
            "--missing-tokens",
            dest="missing_tokens",
            default="NaN,NA,",
            help="comma-separated missing-value tokens",
        )

    p = sub.add_parser("stats", help="print missingness diagnostics")
    add_io(p)
    p.add_argument("--bins", type=int, default=DEFAULT_BINS)
    p.add_argument("--select", default=None)
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("render", help="render a view to SVG")
    add_io(p)
    p.add_argument("--layout", choices=("linear", "radial", "heatmap", "pc"), required=True)
    p.add_argument("--select", default=None)
    p.add_argument("--arcs", choices=("selected", "all"), default="selected")
    p.add_argument("--attach-glyphs", action="store_true")
    p.add_argument("--bins", type=int, default=DEFAULT_BINS)
    p.add_argument("--style", default=None, help="render style JSON file")
    p.add_argument("--out", required=True, help="output SVG path")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("synth", help="inject controlled missingness")
    add_io(p)
    p.add_argument("--plan", default=None, help="injection plan JSON file")
    p.add_argument("--mcar", default=None, help='random removal spec, e.g. "A=0.3,*=0.1"')
    p.add_argument("--cm", default=None, help="conditional removal X1,X2,RATE")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--manifest", default=None, help="ground-truth manifest JSON path")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--data", default=None, help="directory of CSV files to preload")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8800)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
