"""Open planar sets given as finite unions of open convex polygons."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from gmpy2 import mpq

from .geometry import (
    AABB,
    ONE,
    ZERO,
    ConvexPoly,
    Line2,
    Location,
    Point2,
    Ray2,
    Scalar,
    line_coefficients,
    line_from_coefficients,
    polys_interiors_intersect,
    ray_hit_parameter,
)


class Membership(enum.Enum):
    IN_E = "InE"
    ON_BOUNDARY = "OnBoundary"
    OUTSIDE = "Outside"


class Scene2:
    """The open set E as a union of (possibly overlapping) open convex polygons.

    Closures touching along an edge do not connect the union; non-convex
    components must be supplied as overlapping convex pieces.
    """

    def __init__(self, polys: Iterable[ConvexPoly] = (), bbox: Optional[AABB] = None):
        self.polys: tuple[ConvexPoly, ...] = tuple(polys)
        if bbox is None:
            bbox = default_bbox(self.polys)
        for q in self.polys:
            for v in q.vertices:
                if not bbox.contains_strictly(v):
                    raise ValueError(f"bbox {bbox} does not strictly contain vertex {v}")
        self.bbox = bbox

    def __len__(self) -> int:
        return len(self.polys)

    def __repr__(self) -> str:
        return f"Scene2({len(self.polys)} polys, bbox={self.bbox.min}..{self.bbox.max})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Scene2) and self.polys == other.polys and self.bbox == other.bbox

    def vertices(self) -> list[Point2]:
        seen: dict = {}
        for q in self.polys:
            for v in q.vertices:
                seen.setdefault(v, None)
        return list(seen)

    def area(self) -> Scalar:
        """Sum of piece areas (the area of E only if pieces do not overlap)."""
        return sum((q.area() for q in self.polys), ZERO)


def default_bbox(polys: Sequence[ConvexPoly]) -> AABB:
    pts = [v for q in polys for v in q.vertices]
    if not pts:
        return AABB(Point2(mpq(-1), mpq(-1)), Point2(ONE, ONE))
    box = AABB.around(pts)
    extent = max(box.max.x - box.min.x, box.max.y - box.min.y)
    margin = max(extent / 4, ONE)
    return AABB.around(pts, margin)


def scene_contains(s: Scene2, p: Sequence) -> Membership:
    boundary = False
    for q in s.polys:
        loc = q.locate(p)
        if loc is Location.INTERIOR:
            return Membership.IN_E
        if loc is Location.BOUNDARY:
            boundary = True
    return Membership.ON_BOUNDARY if boundary else Membership.OUTSIDE


def ray_hits_scene(s: Scene2, r: Ray2) -> bool:
    return any(ray_hit_parameter(r, q) is not None for q in s.polys)


def line_hits_scene(s: Scene2, line: Line2) -> bool:
    return any(q.line_interval(line.origin, line.dir) is not None for q in s.polys)


def first_hit(s: Scene2, r: Ray2):
    """Earliest open chord of the ray inside a piece: (poly index, t_in, t_out)."""
    best = None
    for i, q in enumerate(s.polys):
        iv = q.line_interval(r.origin, r.dir)
        if iv is None:
            continue
        lo, hi = iv
        start = ZERO if lo is None or lo < 0 else lo
        if hi is not None and hi <= start:
            continue
        if best is None or start < best[1]:
            best = (i, start, hi)
    return best


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            if ri < rj:
                self.parent[rj] = ri
            else:
                self.parent[ri] = rj

    def groups(self) -> list[list[int]]:
        out: dict = {}
        for i in range(len(self.parent)):
            out.setdefault(self.find(i), []).append(i)
        return sorted(out.values())


def scene_components(s: Scene2) -> list[list[int]]:
    """Partition of piece indices into connected components of the open union."""
    uf = _UnionFind(len(s.polys))
    bounds = [q.bounds() for q in s.polys]
    for i in range(len(s.polys)):
        for j in range(i + 1, len(s.polys)):
            bi, bj = bounds[i], bounds[j]
            if bi.max.x <= bj.min.x or bj.max.x <= bi.min.x or bi.max.y <= bj.min.y or bj.max.y <= bi.min.y:
                continue
            if uf.find(i) != uf.find(j) and polys_interiors_intersect(s.polys[i], s.polys[j]):
                uf.union(i, j)
    return uf.groups()


@dataclass(frozen=True)
class BoundaryFragment:
    """Closed piece [t0, t1] of edge ``edge`` of piece ``poly`` lying in the boundary of E."""

    poly: int
    edge: int
    start: Point2
    end: Point2

    @property
    def is_point(self) -> bool:
        return self.start == self.end

    def at(self, t) -> Point2:
        return Point2(self.start.x + t * (self.end.x - self.start.x),
                      self.start.y + t * (self.end.y - self.start.y))


def scene_boundary_fragments(s: Scene2) -> list[BoundaryFragment]:
    out = []
    for pi, q in enumerate(s.polys):
        for ei, (a, b) in enumerate(q.edges()):
            d = (b[0] - a[0], b[1] - a[1])
            covered = []
            for pj, other in enumerate(s.polys):
                if pj != pi:
                    iv = other.line_interval(a, d)
                    if iv is not None:
                        covered.append(iv)
            for t0, t1 in uncovered_pieces(covered):
                p0 = Point2(a[0] + t0 * d[0], a[1] + t0 * d[1])
                p1 = Point2(a[0] + t1 * d[0], a[1] + t1 * d[1])
                out.append(BoundaryFragment(pi, ei, p0, p1))
    return out


def uncovered_pieces(open_intervals):
    """Closed pieces of [0, 1] left uncovered by open intervals.

    Interval ends may be ``None`` (infinite).  Pieces may be single points.
    """
    ivs = []
    for lo, hi in open_intervals:
        if (hi is not None and hi <= 0) or (lo is not None and lo >= 1):
            continue
        ivs.append((lo, hi))
    ivs.sort(key=lambda iv: (iv[0] is not None, iv[0] if iv[0] is not None else 0))
    merged: list = []
    for lo, hi in ivs:
        if merged:
            plo, phi = merged[-1]
            if phi is None:
                continue
            if lo is None or lo < phi:
                merged[-1] = (plo, None if hi is None else max(phi, hi))
                continue
        merged.append((lo, hi))
    pieces = []
    cursor = ZERO
    for lo, hi in merged:
        if lo is not None and lo >= cursor:
            pieces.append((cursor, lo))
        if hi is None:
            return pieces
        cursor = max(cursor, hi)
    if cursor <= ONE:
        pieces.append((cursor, ONE))
    return pieces


def candidate_lines(s: Scene2) -> list[Line2]:
    return [line_from_coefficients(c) for c in candidate_line_coefficients(s)]


def candidate_line_coefficients(s: Scene2) -> list[tuple[int, int, int]]:
    """Lines through all vertex pairs plus all edge lines, deduplicated."""
    verts = s.vertices()
    seen: dict = {}
    for q in s.polys:
        for a, b in q.edges():
            seen.setdefault(line_coefficients(a, b), None)
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            seen.setdefault(line_coefficients(verts[i], verts[j]), None)
    return list(seen)
