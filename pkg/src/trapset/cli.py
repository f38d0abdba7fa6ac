"""Command-line entry point: ``trapset <command> ...``.

Exit codes: 0 success, 1 error, 2 verification failure (or a negative
check), 3 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .families import FAMILIES, generate, scene_of
from .geometry import ConvexPoly, GeometryError, format_q
from .io import DocumentError, SceneDocument, decode_rational, load
from .scene import Scene2, scene_components
from .svg import render_svg
from .trap2d import (
    LINE_TRAPPED,
    RAY_TRAPPED,
    NonTermination,
    NotTrapped,
    Status,
    certify_trap_radius,
    classify_point,
    region_components,
    trap_region,
    weakly_convex,
    weakly_semiconvex,
)
from .trapnd import NdStatus, classify_point_nd

EXIT_OK, EXIT_ERROR, EXIT_FAIL, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_point(text: str, dim: Optional[int] = None) -> tuple:
    parts = [p.strip() for p in text.split(",")]
    if dim is not None and len(parts) != dim:
        raise UsageError(f"--point needs {dim} comma-separated rationals, got {text!r}")
    try:
        return tuple(decode_rational(p, "--point") for p in parts)
    except DocumentError as exc:
        raise UsageError(str(exc)) from None


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _planar(doc: SceneDocument, cmd: str) -> Scene2:
    if doc.dim != 2:
        raise UsageError(f"{cmd} works on planar scenes; this document has dim={doc.dim}")
    return Scene2(doc.polygons)


def _cell_json(rc) -> str:
    areas = {}
    for status in Status:
        if status is Status.ON_BOUNDARY:
            continue
        areas[status.value] = format_q(rc.area([status]))
    doc = {
        "cells": [{"label": lab.value, "vertices": [[format_q(c) for c in v] for v in cell.vertices]}
                  for cell, lab in zip(rc.cells, rc.labels)],
        "areas": areas,
    }
    return json.dumps(doc, indent=2) + "\n"


# --------------------------------------------------------------------------
# commands


def cmd_generate(args) -> int:
    try:
        doc = generate(args.family, args.mode or "lines", args.seed, args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(doc.to_json(), args.out)
    return EXIT_OK


def cmd_classify(args) -> int:
    doc = load(args.scene)
    y = parse_point(args.point, doc.dim)
    if doc.dim == 2:
        c = classify_point(Scene2(doc.polygons), y)
        print(c)
        return EXIT_OK
    con = scene_of(doc)
    c = classify_point_nd(con.scene, y, samples=args.samples, seed=args.seed, budget=args.floor_budget)
    print(c if not c.detail else f"{c}: {c.detail}")
    return EXIT_INCONCLUSIVE if c.status is NdStatus.INCONCLUSIVE else EXIT_OK


def cmd_region(args) -> int:
    s = _planar(load(args.scene), "region")
    rc = trap_region(s)
    _emit(_cell_json(rc), args.out)
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(render_svg(rc))
    return EXIT_OK


def cmd_check(args) -> int:
    s = _planar(load(args.scene), "check")
    mode = args.mode or "ray"
    ok, cex = (weakly_semiconvex if mode == "ray" else weakly_convex)(s)
    name = "weakly 1-semiconvex" if mode == "ray" else "weakly 1-convex"
    if ok:
        print(f"{name}: true")
        return EXIT_OK
    print(f"{name}: false at ({format_q(cex.x)},{format_q(cex.y)})")
    return EXIT_FAIL


def cmd_components(args) -> int:
    s = _planar(load(args.scene), "components")
    labels = RAY_TRAPPED if (args.mode or "line") == "ray" else LINE_TRAPPED
    print(f"scene components: {len(scene_components(s))}")
    comps = region_components(trap_region(s), labels)
    print(f"trapped components: {len(comps)}")
    for i, c in enumerate(comps):
        print(f"  {i}: area {format_q(c.area)}, hull area {format_q(c.hull_area)}, "
              f"{'convex' if c.convex else 'not convex'}")
    return EXIT_OK


def cmd_certify(args) -> int:
    s = _planar(load(args.scene), "certify")
    y = parse_point(args.point, 2)
    cert = certify_trap_radius(s, y, args.mode or "ray")
    problems = cert.check(s)
    print(f"radius {format_q(cert.radius)} (~{float(cert.radius):.6g}), "
          f"clearance {format_q(cert.clearance)}, {len(cert.witnesses)} squares")
    for p in problems:
        print(f"  invalid: {p}")
    return EXIT_FAIL if problems else EXIT_OK


def cmd_verify(args) -> int:
    from .verify import run_suite

    report = run_suite(args.seed)
    sys.stdout.write(report.to_text())
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
    return report.exit_code()


def cmd_render(args) -> int:
    s = _planar(load(args.scene), "render-svg")
    text = render_svg(trap_region(s) if s.polys else None, s)
    _emit(text, args.svg or args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trapset", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, scene=True, point=False):
        p = sub.add_parser(name, help=help_)
        if scene:
            p.add_argument("--scene", required=True, help="scene JSON document")
        if point:
            p.add_argument("--point", required=True, help="comma-separated rationals, e.g. 1/2,-3")
        p.set_defaults(func=fn)
        return p

    g = add("generate", cmd_generate, "write a scene document for a named family", scene=False)
    g.add_argument("--family", required=True, choices=FAMILIES)
    g.add_argument("--mode", help="cut mode for planar families: rays, lines or none")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--k", type=int, default=3, help="parameter of the generalized-polygon family")
    g.add_argument("--out")

    c = add("classify", cmd_classify, "classify one point", point=True)
    c.add_argument("--samples", type=int, default=256)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--floor-budget", type=int, default=None)

    r = add("region", cmd_region, "exact labelled cell decomposition (JSON)")
    r.add_argument("--out")
    r.add_argument("--svg")

    k = add("check", cmd_check, "decide weak 1-semiconvexity (ray) or weak 1-convexity (line)")
    k.add_argument("--mode", choices=("ray", "line"))

    m = add("components", cmd_components, "scene components and trapped components")
    m.add_argument("--mode", choices=("ray", "line"))

    f = add("certify", cmd_certify, "openness certificate around a trapped point", point=True)
    f.add_argument("--mode", choices=("ray", "line"))

    v = add("verify-theorems", cmd_verify, "run the acceptance suite", scene=False)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out", help="write the JSON report here")

    s = add("render-svg", cmd_render, "SVG picture of the labelled region")
    s.add_argument("--svg")
    s.add_argument("--out")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DocumentError, UsageError, NotTrapped, NonTermination, GeometryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
