"""Executable acceptance checks on the example families.

Each ``criterion_*`` function returns a :class:`CriterionResult`; failures
carry concrete counterexamples.  Timings go to the text report only, so the
JSON report is byte-identical across runs with the same seed.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional

from gmpy2 import mpq

from .constructions import (
    CutSceneSpec,
    SpatialConstruction,
    make_cut_scene_2d,
    make_E3_bounded,
    make_E3_stacked,
    make_En_product,
    no_ray_condition,
    random_cut_spec,
    random_point,
    random_point_in,
)
from .geometry import ConvexPoly, Location, Point2, format_q
from .scene import scene_components
from .trap2d import (
    LINE_TRAPPED,
    RAY_TRAPPED,
    RegionCells,
    Status,
    certify_trap_radius,
    classify_point,
    escape_ray_collection,
    region_components,
    trap_region,
    weakly_convex,
    weakly_semiconvex,
)
from .trapnd import NdStatus, classify_point_nd, hull_volume, in_closure, vec

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


def fmt_point(p) -> str:
    return "(" + ",".join(format_q(c) for c in p) + ")"


@dataclass
class CriterionResult:
    id: int
    name: str
    status: str
    counts: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)
    seconds: float = 0.0

    def as_dict(self) -> dict:
        return {"id": self.id, "name": self.name, "status": self.status,
                "counts": self.counts, "counterexamples": self.counterexamples[:20]}


@dataclass
class VerificationReport:
    seed: int
    entries: list[CriterionResult]

    @property
    def status(self) -> str:
        states = {e.status for e in self.entries}
        if FAIL in states:
            return FAIL
        if INCONCLUSIVE in states:
            return INCONCLUSIVE
        return PASS

    def exit_code(self) -> int:
        return {PASS: 0, FAIL: 2, INCONCLUSIVE: 3}[self.status]

    def to_json(self) -> str:
        doc = {"seed": self.seed, "status": self.status, "criteria": [e.as_dict() for e in self.entries]}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = []
        for e in self.entries:
            counts = ", ".join(f"{k}={v}" for k, v in sorted(e.counts.items()))
            lines.append(f"[{e.status.upper():>12}] {e.id:>2}. {e.name} ({counts}) {e.seconds:.1f}s")
            for c in e.counterexamples[:5]:
                lines.append(f"               counterexample: {c}")
        lines.append(f"overall: {self.status}")
        return "\n".join(lines) + "\n"


def _result(cid: int, name: str, failures: list, counts: dict, inconclusive: int = 0) -> CriterionResult:
    status = FAIL if failures else (INCONCLUSIVE if inconclusive else PASS)
    return CriterionResult(cid, name, status, counts, failures)


class Suite:
    """Shared scenes and regions for the criteria, built lazily once."""

    def __init__(self, seed: int = 0):
        self.seed = seed

    def rng(self, salt: int) -> random.Random:
        return random.Random(self.seed * 7919 + salt)

    @cached_property
    def base_lines(self):
        return make_cut_scene_2d(CutSceneSpec(mode="lines"), seed=self.seed)

    @cached_property
    def base_rays(self):
        return make_cut_scene_2d(CutSceneSpec(mode="rays"), seed=self.seed)

    @cached_property
    def base_none(self):
        return make_cut_scene_2d(CutSceneSpec(mode="none"), seed=self.seed)

    @cached_property
    def region_lines(self) -> RegionCells:
        return trap_region(self.base_lines.scene)

    @cached_property
    def region_rays(self) -> RegionCells:
        return trap_region(self.base_rays.scene)

    @cached_property
    def random_scenes(self):
        out = []
        for i in range(5):
            mode = "rays" if i % 2 == 0 else "lines"
            sides = 4 if i in (1, 2) else 3
            spec = random_cut_spec(self.seed * 101 + i, mode, sides)
            out.append(make_cut_scene_2d(spec, seed=self.seed))
        return out

    @cached_property
    def random_regions(self) -> list[RegionCells]:
        return [trap_region(cs.scene) for cs in self.random_scenes]

    def scenes_2d(self):
        """(name, cut scene, region) for every planar test scene."""
        out = [("base-lines", self.base_lines, self.region_lines),
               ("base-rays", self.base_rays, self.region_rays)]
        for i, (cs, rc) in enumerate(zip(self.random_scenes, self.random_regions)):
            out.append((f"random-{i}-{cs.spec.mode}", cs, rc))
        return out

    @cached_property
    def weak(self) -> dict:
        """Scene name -> (weakly semiconvex, weakly convex), exact."""
        return {name: (weakly_semiconvex(cs.scene)[0], weakly_convex(cs.scene)[0])
                for name, cs, _ in self.scenes_2d()}

    @cached_property
    def e3(self) -> SpatialConstruction:
        return make_E3_bounded(self.base_lines)

    @cached_property
    def e3_stacked(self) -> SpatialConstruction:
        return make_E3_stacked(self.base_lines)

    @cached_property
    def e4(self) -> SpatialConstruction:
        return make_En_product(self.e3, 4)


# --------------------------------------------------------------------------
# planar criteria


def _trapped_equals_P(rc: RegionCells, P: ConvexPoly, labels) -> tuple:
    """Area of the symmetric difference between the labelled cells and P, plus offending cells."""
    sym = mpq(0)
    bad = []
    inside = mpq(0)
    for cell, lab in zip(rc.cells, rc.labels):
        c = cell.centroid()
        in_p = P.contains(c)
        trapped = lab in labels
        if in_p and trapped:
            inside += cell.area()
        elif trapped:
            sym += cell.area()
            bad.append(c)
        elif in_p:
            bad.append(c)
    sym += P.area() - inside
    return sym, bad


def _region_criterion(cid: int, name: str, cs, rc: RegionCells, extra=None) -> CriterionResult:
    failures = []
    counts = {"cells": len(rc)}
    for tag, labels in (("diamond", RAY_TRAPPED), ("triangle", LINE_TRAPPED)):
        sym, bad = _trapped_equals_P(rc, cs.spec.P, labels)
        counts[f"symdiff_area_{tag}"] = format_q(sym)
        if sym != 0:
            failures.extend(f"{tag}: cell at {fmt_point(p)}" for p in bad)
            if not bad:
                failures.append(f"{tag}: symmetric difference area {format_q(sym)}")
    in_e = rc.area([Status.IN_E])
    counts["in_e_area"] = format_q(in_e)
    if in_e != cs.spec.D.area() - cs.spec.P.area():
        failures.append(f"InE area {format_q(in_e)} != area(D) - area(P)")
    if extra:
        extra(failures, counts)
    return _result(cid, name, failures, counts)


def criterion_1(suite: Suite) -> CriterionResult:
    return _region_criterion(1, "default region, lines mode: E^diamond = E^triangle = P",
                             suite.base_lines, suite.region_lines)


def criterion_2(suite: Suite) -> CriterionResult:
    def components(failures, counts):
        n = len(scene_components(suite.base_rays.scene))
        counts["components"] = n
        if n != 3:
            failures.append(f"{n} components instead of 3")

    return _region_criterion(2, "default region, rays mode: trapped = P and three components",
                             suite.base_rays, suite.region_rays, components)


def _perimeter(y: Point2, r) -> list[Point2]:
    return [Point2(y.x + sx * r, y.y + sy * r)
            for sx in (-1, 0, 1) for sy in (-1, 0, 1) if (sx, sy) != (0, 0)]


def criterion_3(suite: Suite, count: int = 100) -> CriterionResult:
    failures = []
    certs = 0
    min_eps = None
    rng = suite.rng(3)
    for cs in (suite.base_lines, suite.base_rays):
        s = cs.scene
        for _ in range(count):
            y = random_point_in(rng, cs.spec.P)
            for mode, ok in (("ray", RAY_TRAPPED), ("line", LINE_TRAPPED)):
                try:
                    cert = certify_trap_radius(s, y, mode)
                except Exception as exc:  # any failure to certify is a counterexample
                    failures.append(f"{mode} {fmt_point(y)}: {exc}")
                    continue
                certs += 1
                problems = cert.check(s)
                if problems:
                    failures.append(f"{mode} {fmt_point(y)}: {problems[0]}")
                min_eps = cert.radius if min_eps is None else min(min_eps, cert.radius)
                for p in _perimeter(y, cert.radius / 2):
                    if classify_point(s, p).status not in ok:
                        failures.append(f"{mode} {fmt_point(y)}: perimeter point {fmt_point(p)} not trapped")
    counts = {"certificates": certs, "min_radius": f"{float(min_eps):.3e}" if min_eps is not None else "none"}
    return _result(3, "openness: certified radius around trapped points", failures, counts)


def criterion_4(suite: Suite) -> CriterionResult:
    failures = []
    samples = 0
    witnesses = 0
    for name, cs, rc in suite.scenes_2d():
        semi, convex = suite.weak[name]
        # rays need E weakly semiconvex, lines need E weakly convex
        for mode in [m for m, ok in (("ray", semi), ("line", convex)) if ok]:
            rep = escape_ray_collection(cs.scene, rc, mode=mode)
            samples += len(rep.samples)
            witnesses += len(rep.witnesses)
            if not rep.miss_e:
                failures.append(f"{name}/{mode}: a witness meets E")
            if not rep.miss_trapped:
                failures.append(f"{name}/{mode}: a witness meets the trapped region")
            for y, d, why in rep.probe_failures[:3]:
                failures.append(f"{name}/{mode}: probe from {fmt_point(y)} along {d}: {why}")
    if samples < 50:
        failures.append(f"only {samples} boundary samples")
    return _result(4, "weak semiconvexity / convexity of the trapped regions", failures,
                   {"samples": samples, "witnesses": witnesses})


def criterion_5(suite: Suite, count: int = 1000) -> CriterionResult:
    failures = []
    agree = skipped = 0
    rng = suite.rng(5)
    for cs, rc in ((suite.base_rays, suite.region_rays),):
        box = cs.scene.bbox
        for _ in range(count):
            p = random_point(rng, box.min, box.max)
            lab = rc.label_at(p)
            if lab is None:
                skipped += 1
                continue
            direct = classify_point(cs.scene, p).status
            if direct is lab:
                agree += 1
            else:
                failures.append(f"{fmt_point(p)}: cell {lab.value}, direct {direct.value}")
    return _result(5, "oracle equivalence: cell label = direct classification", failures,
                   {"agree": agree, "skeleton": skipped})


def criterion_6(suite: Suite) -> CriterionResult:
    failures = []
    comps = 0
    for name, cs, rc in suite.scenes_2d():
        for c in region_components(rc, LINE_TRAPPED):
            comps += 1
            if not c.convex:
                failures.append(f"{name}: component of area {format_q(c.area)} has hull area {format_q(c.hull_area)}")
    return _result(6, "components of E^triangle are convex", failures,
                   {"scenes": len(suite.scenes_2d()), "components": comps})


def criterion_7(suite: Suite) -> CriterionResult:
    failures = []
    checked = 0
    for name, cs, rc in suite.scenes_2d():
        if suite.weak[name][0] and rc.indices(RAY_TRAPPED):
            checked += 1
            n = len(scene_components(cs.scene))
            if n < 3:
                failures.append(f"{name}: only {n} components")
    ok, cex = weakly_convex(suite.base_none.scene)
    if ok:
        failures.append("control without cuts reported weakly convex")
    elif suite.base_none.spec.P.locate(cex) is not Location.BOUNDARY:
        failures.append(f"control counterexample {fmt_point(cex)} is not on the boundary of P")
    counts = {"scenes_checked": checked, "control": "weakly_convex=false at " + fmt_point(cex) if cex else "none"}
    return _result(7, "at least three components; no-cut control is not weakly convex", failures, counts)


# --------------------------------------------------------------------------
# spatial criteria


def _prism_point(rng: random.Random, prism, den: int = 1 << 16):
    b = random_point_in(rng, prism.base)
    t = mpq(rng.randrange(1, den), den)
    a = prism.axis
    return (b.x + t * a[0], b.y + t * a[1], prism.z0 + t * a[2])


def _outside_point(rng: random.Random, con: SpatialConstruction, lo, hi, den: int = 1 << 16):
    while True:
        p = tuple(l + (h - l) * mpq(rng.randrange(1, den), den) for l, h in zip(lo, hi))
        if not in_closure(con.scene, p) and not con.predicted_closure_contains(p):
            return p


def _evidence(s, points, samples, seed, failures, label, budget=None, homes=None):
    counts = {"trapped": 0, "witnesses": 0, "max_floors": 0}
    for i, y in enumerate(points):
        home = homes[i] if homes else None
        c = classify_point_nd(s, y, samples=samples, seed=seed + i, budget=budget, home=home)
        if c.status is NdStatus.EVIDENCE_TRAPPED and c.samples == samples:
            counts["trapped"] += 1
            counts["witnesses"] += len(c.witnesses)
            counts["max_floors"] = max([counts["max_floors"]] + [w.floors for w in c.witnesses])
        else:
            failures.append(f"{label} {fmt_point(y)}: {c} {c.detail}".rstrip())
    return counts


def _freedom(s, points, failures, label):
    free = 0
    for y in points:
        c = classify_point_nd(s, y, samples=0)
        if c.status is NdStatus.CERTIFIED_FREE:
            free += 1
        else:
            failures.append(f"{label} {fmt_point(y)}: {c}")
    return free


def criterion_8(suite: Suite, count: int = 200, samples: int = 256) -> CriterionResult:
    con = suite.e3
    rng = suite.rng(8)
    failures: list = []
    homes = [con.predicted[rng.randrange(2)] for _ in range(count)]
    inside = [_prism_point(rng, h) for h in homes]
    counts = _evidence(con.scene, inside, samples, suite.seed, failures, "inside", homes=homes)
    outside = [_outside_point(rng, con, (-8, -8, -4), (12, 8, 4)) for _ in range(count)]
    counts["free"] = _freedom(con.scene, outside, failures, "outside")
    counts.pop("max_floors")
    return _result(8, "bounded E^3: trapped set is P- u P+", failures, counts)


def criterion_9(suite: Suite) -> CriterionResult:
    con = suite.e3
    up, down = con.predicted
    pts = up.vertices() + down.vertices()
    hull = hull_volume(pts)
    union = up.volume() + down.volume()
    failures = []
    if hull == union:
        failures.append("hull volume equals the union volume")
    c = up.base.centroid()
    shared = vec((c.x, c.y, 0))
    if not (up.contains(shared) and down.contains(shared)):
        failures.append(f"prisms do not share the base point {fmt_point(shared)}")
    return _result(9, "3D trapped set is connected and non-convex", failures,
                   {"hull_volume": format_q(hull), "union_volume": format_q(union)})


def criterion_10(suite: Suite, count: int = 100, samples: int = 128, budget: int = 8) -> CriterionResult:
    con = suite.e3_stacked
    rng = suite.rng(10)
    failures: list = []
    if not no_ray_condition(con.base.spec.P, con.axis):
        failures.append(f"axis {fmt_point(con.axis)} fails the zig-zag condition")
    floor0 = con.predicted_floor(0)[0]
    inside = [_prism_point(rng, floor0) for _ in range(count)]
    counts = _evidence(con.scene, inside, samples, suite.seed, failures, "floor0",
                       budget=budget, homes=[floor0] * count)
    counts["budget"] = budget
    return _result(10, "stacked E^3: no ray escapes the lowest trapped prism", failures, counts)


def criterion_11(suite: Suite, count: int = 50, samples: int = 64) -> CriterionResult:
    con = suite.e4
    rng = suite.rng(11)
    failures: list = []
    inside = []
    for _ in range(count):
        prism = con.inner.predicted[rng.randrange(2)]
        p = _prism_point(rng, prism)
        w = mpq(rng.randrange(1, 1 << 16), 1 << 15) - 1
        inside.append(p + (w,))
    counts = _evidence(con.scene, inside, samples, suite.seed, failures, "inside")
    counts.pop("max_floors")
    outside = [_outside_point(rng, con, (-8, -8, -4, -2), (12, 8, 4, 2)) for _ in range(count)]
    counts["free"] = _freedom(con.scene, outside, failures, "outside")
    return _result(11, "n = 4 product: trapped set is the product prediction", failures, counts)


CRITERIA: list[Callable[[Suite], CriterionResult]] = [
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
    criterion_7, criterion_8, criterion_9, criterion_10, criterion_11,
]


def run_criteria(seed: int = 0, only: Optional[set] = None, suite: Optional[Suite] = None) -> list[CriterionResult]:
    suite = suite or Suite(seed)
    out = []
    for i, fn in enumerate(CRITERIA, start=1):
        if only is not None and i not in only:
            continue
        t0 = time.perf_counter()
        res = fn(suite)
        res.seconds = time.perf_counter() - t0
        out.append(res)
    return out


def criterion_12(first: VerificationReport) -> CriterionResult:
    """Re-run everything from scratch and compare the JSON bytes."""
    again = VerificationReport(first.seed, run_criteria(first.seed))
    a = VerificationReport(first.seed, [e for e in first.entries if e.id != 12]).to_json()
    b = again.to_json()
    failures = [] if a == b else ["second run produced a different report"]
    return _result(12, "determinism: identical reports for identical seeds", failures,
                   {"bytes": len(a)})


def run_suite(seed: int = 0, determinism: bool = True) -> VerificationReport:
    report = VerificationReport(seed, run_criteria(seed))
    if determinism:
        t0 = time.perf_counter()
        res = criterion_12(report)
        res.seconds = time.perf_counter() - t0
        report.entries.append(res)
    return report
