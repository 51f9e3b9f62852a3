"""Command-line pipeline: analyze function files, run paths, render, search.

Exit codes: 0 success, 1 malformed input, 2 genericity failure, 3 invariance
violation on a path. Reports embed the configuration, seed, tolerances and
library version; identical invocations produce byte-identical files.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .diagram import build_diagram, validate_diagram
from .errors import (
    GenericityError,
    HoloknotError,
    InvarianceViolation,
    NormalizationFailed,
    UnresolvedEvent,
)
from .generate import generate_range, search_distinguishing_pair
from .invariants import split_invariants
from .isotopy import braid_normalize, check_split_via_braid, detect_events, interpolate, monitor_invariants
from .legendrian import braid_bound_check, front_census, front_invariants, genus_bound_check
from .oracle import identify, jones_in_a, to_crossing_code
from .render import render_svg
from .serialize import dumps_report, load_function, write_json
from .trig import DEFAULT_TOL, TrigPolynomial

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_GENERICITY = 2
EXIT_INVARIANCE = 3


def _config_dict(args) -> dict:
    return {
        "version": __version__,
        "grid": args.grid,
        "tol": args.tol,
        "seed": args.seed,
        "threads": int(os.environ.get("HOLOKNOT_THREADS", "1")),
    }


def _tolerances(args):
    if args.tol is None:
        return DEFAULT_TOL
    return replace(
        DEFAULT_TOL,
        morse_margin=args.tol,
        value_gap=args.tol,
        immersion=args.tol,
    )


def _out_path(args, default_name: str) -> Path:
    out = Path(args.out) if args.out else Path(".")
    if out.is_dir() or args.out is None or args.out.endswith(os.sep):
        out.mkdir(parents=True, exist_ok=True)
        return out / default_name
    out.parent.mkdir(parents=True, exist_ok=True)
    return out


def _analyze(f: TrigPolynomial, args) -> dict:
    tol = _tolerances(args)
    d = build_diagram(f, grid_size=args.grid, tol=tol)
    inv = split_invariants(d)
    report = inv.to_dict()
    validation = validate_diagram(d, f)
    report["diagram_valid"] = validation.ok
    fronts = {}
    for variant in ("plus", "minus"):
        counts = front_census(d, variant)
        w_xy, s_xy = front_invariants(counts)
        fronts[variant] = {**counts.to_dict(), "W_xy": w_xy, "S_xy": s_xy}
    report["fronts"] = fronts
    code = to_crossing_code(d, f)
    entry = identify(code)
    report["jones"] = str(jones_in_a(code))
    if entry is None:
        report["knot"] = {"name": "unknown"}
    else:
        report["knot"] = entry.to_dict()
        report["bounds"] = {
            "genus": genus_bound_check(d, entry.genus).to_dict(),
            "braid": braid_bound_check(d, entry.braid_index).to_dict(),
        }
    return report


def cmd_invariants(args) -> int:
    f = load_function(args.function)
    report = _analyze(f, args)
    report["config"] = _config_dict(args)
    path = _out_path(args, Path(args.function).stem + ".invariants.json")
    write_json(report, path)
    print(path)
    return EXIT_OK


def cmd_path(args) -> int:
    f = load_function(args.start)
    g = load_function(args.end)
    tol = _tolerances(args)
    path = interpolate(f, g)
    events = detect_events(path, tol)
    trace = monitor_invariants(path, tol, events=events)
    report = {"config": _config_dict(args), "trace": trace.to_dict()}
    out = _out_path(args, "path_trace.json")
    write_json(report, out)
    print(out)
    return EXIT_OK


def cmd_render(args) -> int:
    f = load_function(args.function)
    tol = _tolerances(args)
    d = build_diagram(f, grid_size=args.grid, tol=tol)
    svg = render_svg(f, d, scale=args.render_scale)
    out = _out_path(args, Path(args.function).stem + ".svg")
    out.write_text(svg)
    print(out)
    return EXIT_OK


def cmd_generate(args) -> int:
    f = generate_range(args.whitney, args.self_linking, seed=args.seed)
    report = _analyze(f, args)
    report["config"] = _config_dict(args)
    report["function"] = f.to_dict()
    out = _out_path(args, f"generated_w{args.whitney}_s{args.self_linking}.json")
    write_json(report, out)
    print(out)
    return EXIT_OK


def cmd_search_pair(args) -> int:
    pair = search_distinguishing_pair(
        args.whitney,
        args.self_linking,
        budget_seconds=args.budget,
        seed=args.seed,
        knot_class=args.knot_class,
    )
    if pair is None:
        print("no distinguishing pair found within budget", file=sys.stderr)
        return EXIT_GENERICITY
    report = {"config": _config_dict(args), **pair.to_dict()}
    out = _out_path(args, "distinguished_pair.json")
    write_json(report, out)
    print(out)
    return EXIT_OK


def cmd_normalize(args) -> int:
    f = load_function(args.function)
    tol = _tolerances(args)
    check = check_split_via_braid(f, tol=tol, seed=args.seed)
    report = {"config": _config_dict(args), **check.to_dict()}
    out = _out_path(args, Path(args.function).stem + ".normalized.json")
    write_json(report, out)
    print(out)
    return EXIT_OK


def cmd_selftest(args) -> int:
    from . import fixtures
    from .oracle import table_self_test

    failures: list[str] = []

    def check(name, fn):
        try:
            fn()
            print(f"ok   {name}")
        except Exception as exc:  # report-style: collect everything
            failures.append(f"{name}: {exc}")
            print(f"FAIL {name}: {exc}")

    def unknot_case():
        f = TrigPolynomial(0.0, (0.0,), (1.0,))
        d = build_diagram(f)
        inv = split_invariants(d)
        assert (inv.whitney, inv.self_linking, inv.components) == (-1, 0, ())
        counts = front_census(d, "plus")
        assert counts.as_tuple() == (1, 1, 1, 0, 0)

    def braided_unknot_case():
        f = fixtures.braided_unknot()
        d = build_diagram(f)
        inv = split_invariants(d)
        assert inv.whitney == -4 and inv.self_linking == -1
        assert inv.components == (-2, 1)
        entry = identify(to_crossing_code(d, f))
        assert entry is not None and entry.name == "unknot"

    def oracle_case():
        assert table_self_test() == []

    check("unknot baseline", unknot_case)
    check("braided unknot fixture", braided_unknot_case)
    check("oracle table", oracle_case)
    return EXIT_OK if not failures else EXIT_INVARIANCE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="holoknot",
        description="Invariants of framed holonomic knots from circle functions",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--grid", type=int, default=None, help="scan grid size")
        p.add_argument("--tol", type=float, default=None, help="genericity margin threshold")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", type=str, default=None, help="output file or directory")

    p = sub.add_parser("invariants", help="full invariant report of a function file")
    p.add_argument("function")
    common(p)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("path", help="event trace of the line between two functions")
    p.add_argument("start")
    p.add_argument("end")
    common(p)
    p.set_defaults(func=cmd_path)

    p = sub.add_parser("render", help="SVG drawing of the diagram")
    p.add_argument("function")
    p.add_argument("--render-scale", type=float, default=160.0)
    common(p)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("generate", help="construct a function with given (W, S)")
    p.add_argument("whitney", type=int)
    p.add_argument("self_linking", type=int)
    common(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("search-pair", help="find a split-invariant-distinguished pair")
    p.add_argument("whitney", type=int)
    p.add_argument("self_linking", type=int)
    p.add_argument("--knot-class", type=str, default=None)
    p.add_argument("--budget", type=float, default=600.0)
    common(p)
    p.set_defaults(func=cmd_search_pair)

    p = sub.add_parser("normalize", help="braid-normalize and check the split identity")
    p.add_argument("function")
    common(p)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("selftest", help="quick built-in acceptance checks")
    common(p)
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FileNotFoundError, ValueError, KeyError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InvarianceViolation, UnresolvedEvent, NormalizationFailed) as exc:
        print(f"invariance failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANCE
    except GenericityError as exc:
        print(f"genericity failure: {exc}", file=sys.stderr)
        return EXIT_GENERICITY
    except HoloknotError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GENERICITY


if __name__ == "__main__":
    sys.exit(main())
