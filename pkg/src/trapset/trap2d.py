"""Exact classification of planar points against an open polygonal set.

A point y outside the closure of E is *trapped for rays* when every ray from y
meets E, and *trapped for lines* when every line through y does.  The set of
directions whose ray from y meets E is a finite union of open arcs, one per
convex piece, so both questions reduce to arc coverage.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from gmpy2 import mpq

from .arcs import Arc, ArcSet
from .geometry import (
    ZERO,
    ConvexPoly,
    Dir2,
    GeometryError,
    Line2,
    Point2,
    Ray2,
    Scalar,
    clip_halfplane,
    convex_hull,
    dir_from_pseudo_angle,
    line_coefficients,
    linf_dist_point_poly,
    linf_dist_point_segment,
    orient,
    pseudo_angle,
    ray_hits_poly_interior,
)
from .scene import (
    Membership,
    Scene2,
    _UnionFind,
    candidate_line_coefficients,
    first_hit,
    line_hits_scene,
    ray_hits_scene,
    scene_boundary_fragments,
    scene_contains,
)


class KernelError(AssertionError):
    """An exact self-check failed; indicates a bug, never bad input."""


class NotTrapped(ValueError):
    pass


class NonTermination(RuntimeError):
    pass


class Status(enum.Enum):
    IN_E = "InE"
    ON_BOUNDARY = "OnBoundaryE"
    TRAPPED_BOTH = "TrappedBoth"
    TRAPPED_LINES_ONLY = "TrappedLinesOnly"
    FREE = "Free"


RAY_TRAPPED = frozenset({Status.TRAPPED_BOTH})
LINE_TRAPPED = frozenset({Status.TRAPPED_BOTH, Status.TRAPPED_LINES_ONLY})


@dataclass(frozen=True)
class Classification:
    status: Status
    witness: Optional[Dir2] = None

    def __str__(self) -> str:
        if self.witness is None:
            return self.status.value
        return f"{self.status.value} {self.witness}"


def _poly_arc(q: ConvexPoly, y: Sequence):
    """Open arc of directions from y entering q: None (full), () (none) or (s, e)."""
    verts = q.vertices
    n = len(verts)
    yx, yy = y[0], y[1]
    zeros = []
    outside = False
    for i, (v, ex, ey) in enumerate(q._edges):
        s = ex * (yy - v[1]) - ey * (yx - v[0])
        if s < 0:
            outside = True
            break
        if s == 0:
            zeros.append(i)
    if not outside:
        if not zeros:
            return None
        if len(zeros) == 1:
            _, ex, ey = q._edges[zeros[0]]
            return pseudo_angle((ex, ey)), pseudo_angle((-ex, -ey))
        # at a vertex: zeros are consecutive edges (i-1, i) around vertex i
        i = zeros[1] if zeros[1] == (zeros[0] + 1) % n else zeros[0]
        v = verts[i]
        nxt, prv = verts[(i + 1) % n], verts[i - 1]
        return (pseudo_angle((nxt[0] - v[0], nxt[1] - v[1])),
                pseudo_angle((prv[0] - v[0], prv[1] - v[1])))
    right = left = verts[0]
    for w in verts:
        if orient(y, right, w) < 0:
            right = w
        if orient(y, left, w) > 0:
            left = w
    return (pseudo_angle((right[0] - yx, right[1] - yy)),
            pseudo_angle((left[0] - yx, left[1] - yy)))


def blocked_arcs(s: Scene2, y: Sequence) -> ArcSet:
    """Directions whose ray from y meets E."""
    pairs = []
    for q in s.polys:
        arc = _poly_arc(q, y)
        if arc is None:
            return ArcSet.full_circle()
        pairs.append(arc)
    return ArcSet(pairs)


def classify_point(s: Scene2, y: Sequence) -> Classification:
    y = Point2(y[0], y[1])
    m = scene_contains(s, y)
    if m is Membership.IN_E:
        return Classification(Status.IN_E)
    if m is Membership.ON_BOUNDARY:
        return Classification(Status.ON_BOUNDARY)
    blocked = blocked_arcs(s, y)
    return _classify_from_arcs(s, y, blocked)


def _classify_from_arcs(s: Scene2, y: Point2, blocked: ArcSet) -> Classification:
    if blocked.is_full():
        return Classification(Status.TRAPPED_BOTH)
    sym = blocked.symmetrized()
    if sym.is_full():
        d = blocked.complement_representative()
        if ray_hits_scene(s, Ray2(y, d)):
            raise KernelError(f"escape ray {d} from {y} meets E")
        return Classification(Status.TRAPPED_LINES_ONLY, d)
    d = sym.complement_representative()
    if line_hits_scene(s, Line2(y, d)):
        raise KernelError(f"escape line {d} through {y} meets E")
    return Classification(Status.FREE, d)


# --------------------------------------------------------------------------
# region subdivision


@dataclass
class Facet:
    """Positive-length segment shared by two cells."""

    cells: tuple[int, int]
    start: Point2
    end: Point2

    @property
    def midpoint(self) -> Point2:
        return Point2((self.start.x + self.end.x) / 2, (self.start.y + self.end.y) / 2)


@dataclass
class RegionCells:
    """Open convex cells of a BSP over the candidate lines, with labels."""

    scene: Scene2
    cells: list[ConvexPoly]
    labels: list[Status]
    lines: list[tuple[int, int, int]]
    _tree: list = field(default_factory=list, repr=False)
    _facets: Optional[list[Facet]] = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.cells)

    def locate(self, p: Sequence) -> Optional[int]:
        """Index of the open cell containing p, or None on the skeleton."""
        node = self._tree[0]
        while node[0] is not None:
            a, b, c = node[0]
            v = a * p[0] + b * p[1] + c
            if v == 0:
                return None
            node = self._tree[node[2] if v > 0 else node[1]]
        idx = node[3]
        return idx if self.cells[idx].contains(p) else None

    def label_at(self, p: Sequence) -> Optional[Status]:
        i = self.locate(p)
        return None if i is None else self.labels[i]

    def area(self, labels: Iterable[Status]) -> Scalar:
        wanted = set(labels)
        return sum((c.area() for c, lab in zip(self.cells, self.labels) if lab in wanted), ZERO)

    def indices(self, labels: Iterable[Status]) -> list[int]:
        wanted = set(labels)
        return [i for i, lab in enumerate(self.labels) if lab in wanted]

    def facets(self) -> list[Facet]:
        if self._facets is None:
            self._facets = _shared_facets(self.cells)
        return self._facets


def trap_region(s: Scene2, lines: Optional[list] = None) -> RegionCells:
    """Split the bounding box by every candidate line and label each leaf."""
    if lines is None:
        lines = candidate_line_coefficients(s)
    root = list(s.bbox.as_poly().vertices)
    tree: list = [[None, -1, -1, -1]]
    cells: list[ConvexPoly] = []
    labels: list[Status] = []
    stack = [(0, root, lines)]
    while stack:
        node_id, verts, pending = stack.pop()
        crossing = []
        for ln in pending:
            a, b, c = ln
            has_pos = has_neg = False
            for v in verts:
                val = a * v[0] + b * v[1] + c
                if val > 0:
                    has_pos = True
                elif val < 0:
                    has_neg = True
                if has_pos and has_neg:
                    crossing.append(ln)
                    break
        if not crossing:
            cell = ConvexPoly(verts)
            tree[node_id][3] = len(cells)
            cells.append(cell)
            labels.append(_label(s, cell.centroid()))
            continue
        a, b, c = crossing[0]
        neg, pos = clip_halfplane(verts, a, b, c)
        neg_id, pos_id = len(tree), len(tree) + 1
        tree.append([None, -1, -1, -1])
        tree.append([None, -1, -1, -1])
        tree[node_id][0] = (a, b, c)
        tree[node_id][1] = neg_id
        tree[node_id][2] = pos_id
        rest = crossing[1:]
        stack.append((pos_id, pos, rest))
        stack.append((neg_id, neg, rest))
    return RegionCells(s, cells, labels, list(lines), tree)


def _label(s: Scene2, p: Point2) -> Status:
    status = classify_point(s, p).status
    if status is Status.ON_BOUNDARY:
        raise KernelError(f"cell sample {p} lies on the boundary of E")
    return status


def _shared_facets(cells: Sequence[ConvexPoly]) -> list[Facet]:
    groups: dict = {}
    for ci, cell in enumerate(cells):
        for a, b in cell.edges():
            key = line_coefficients(a, b)
            A, B, C = key
            sa = -B * a[0] + A * a[1]
            sb = -B * b[0] + A * b[1]
            lo, hi = (sa, sb) if sa < sb else (sb, sa)
            cen = cell.centroid()
            side = A * cen[0] + B * cen[1] + C > 0
            groups.setdefault(key, ([], []))[1 if side else 0].append((lo, hi, ci))
    facets = []
    for key, (neg, pos) in groups.items():
        if not neg or not pos:
            continue
        A, B, C = key
        neg.sort()
        pos.sort()
        i = j = 0
        while i < len(neg) and j < len(pos):
            lo = max(neg[i][0], pos[j][0])
            hi = min(neg[i][1], pos[j][1])
            if lo < hi:
                facets.append(Facet((neg[i][2], pos[j][2]), _on_line(key, lo), _on_line(key, hi)))
            if neg[i][1] < pos[j][1]:
                i += 1
            else:
                j += 1
    return facets


def _on_line(key, s):
    """Point of line a*x + b*y + c = 0 with coordinate s along (-b, a)."""
    a, b, c = key
    n2 = mpq(a * a + b * b)
    # foot of the origin plus s along the unit-free direction
    fx, fy = -a * c / n2, -b * c / n2
    return Point2(fx + (-b) * s / n2, fy + a * s / n2)


@dataclass
class RegionComponent:
    cells: list[int]
    area: Scalar
    hull_area: Scalar

    @property
    def convex(self) -> bool:
        return self.area == self.hull_area


def region_components(rc: RegionCells, labels) -> list[RegionComponent]:
    """Components of the union of cells carrying any of ``labels``.

    Two cells connect when they share a facet whose midpoint carries a wanted
    label too; convexity is decided by exact hull-area equality.
    """
    if isinstance(labels, Status):
        labels = {labels}
    wanted = set(labels)
    idx = [i for i, lab in enumerate(rc.labels) if lab in wanted]
    if not idx:
        return []
    pos = {c: k for k, c in enumerate(idx)}
    uf = _UnionFind(len(idx))
    for f in rc.facets():
        i, j = f.cells
        if i in pos and j in pos:
            if classify_point(rc.scene, f.midpoint).status in wanted:
                uf.union(pos[i], pos[j])
    out = []
    for group in uf.groups():
        members = [idx[k] for k in group]
        area = sum((rc.cells[c].area() for c in members), ZERO)
        hull = convex_hull([v for c in members for v in rc.cells[c].vertices])
        out.append(RegionComponent(members, area, hull.area()))
    return out


# --------------------------------------------------------------------------
# weak convexity


def _boundary_probes(s: Scene2, lines=None) -> list[Point2]:
    if lines is None:
        lines = candidate_line_coefficients(s)
    seen: dict = {}
    for frag in scene_boundary_fragments(s):
        p0, p1 = frag.start, frag.end
        if p0 == p1:
            seen.setdefault(p0, None)
            continue
        dx, dy = p1.x - p0.x, p1.y - p0.y
        ts = {ZERO, mpq(1)}
        for a, b, c in lines:
            k = a * dx + b * dy
            if k == 0:
                continue
            t = -(a * p0.x + b * p0.y + c) / k
            if 0 < t < 1:
                ts.add(t)
        ts = sorted(ts)
        for t in ts:
            seen.setdefault(frag.at(t), None)
        for t0, t1 in zip(ts, ts[1:]):
            seen.setdefault(frag.at((t0 + t1) / 2), None)
    return list(seen)


def weakly_semiconvex(s: Scene2, lines=None) -> tuple[bool, Optional[Point2]]:
    """Does every boundary point of E admit a ray missing E?"""
    for p in _boundary_probes(s, lines):
        if blocked_arcs(s, p).is_full():
            return False, p
    return True, None


def weakly_convex(s: Scene2, lines=None) -> tuple[bool, Optional[Point2]]:
    """Does every boundary point of E admit a line missing E?"""
    for p in _boundary_probes(s, lines):
        if blocked_arcs(s, p).symmetrized().is_full():
            return False, p
    return True, None


# --------------------------------------------------------------------------
# openness certificates


@dataclass(frozen=True)
class WitnessSquare:
    center: Point2
    half_side: Scalar
    arc: Arc


@dataclass
class Certificate:
    """Finitely many squares in E whose direction shadows from ``center`` cover
    the circle (up to antipodes in line mode), and the resulting radius."""

    center: Point2
    radius: Scalar
    clearance: Scalar
    witnesses: list[WitnessSquare]
    mode: str

    def covered(self) -> ArcSet:
        arcs = ArcSet.from_arcs(w.arc for w in self.witnesses)
        return arcs.symmetrized() if self.mode == "line" else arcs

    def check(self, s: Scene2) -> list[str]:
        """Exact re-verification; returns a list of violated invariants."""
        problems = []
        if not self.radius > 0:
            problems.append("radius is not positive")
        if self.radius > self.clearance:
            problems.append("radius exceeds clearance")
        if _clearance_from_closure(s, self.center) != self.clearance:
            problems.append("clearance mismatch")
        frags = scene_boundary_fragments(s)
        for w in self.witnesses:
            if scene_contains(s, w.center) is not Membership.IN_E:
                problems.append(f"square center {w.center} not in E")
            elif _clearance_in_e(frags, w.center) < w.half_side + self.radius:
                problems.append(f"fattened square at {w.center} leaves E")
            if _square_arc(self.center, w.center, w.half_side) != w.arc:
                problems.append(f"arc of square at {w.center} is wrong")
        if not self.covered().is_full():
            problems.append("square shadows do not cover the circle")
        return problems


def _clearance_from_closure(s: Scene2, y) -> Scalar:
    if not s.polys:
        raise NotTrapped("empty scene")
    return min(linf_dist_point_poly(y, q) for q in s.polys)


def _clearance_in_e(frags, x) -> Scalar:
    return min(linf_dist_point_segment(x, f.start, f.end) for f in frags)


def _square_arc(y: Point2, center: Point2, half: Scalar) -> Arc:
    corners = [Point2(center.x + sx * half, center.y + sy * half)
               for sx, sy in ((-1, -1), (1, -1), (1, 1), (-1, 1))]
    right = left = corners[0]
    for w in corners:
        if orient(y, right, w) < 0:
            right = w
        if orient(y, left, w) > 0:
            left = w
    return Arc(Dir2.of(right.x - y.x, right.y - y.y), Dir2.of(left.x - y.x, left.y - y.y))


def simplest_between(lo, hi) -> Scalar:
    """The rational with the smallest denominator strictly between lo < hi."""
    lo, hi = mpq(lo), mpq(hi)
    fl = lo.numerator // lo.denominator
    if fl + 1 < hi:
        return mpq(fl + 1)
    # lo < fl + 1 <= ... : both share integer part fl; recurse on reciprocals
    a, b = lo - fl, hi - fl
    if a == 0:
        # need 0 < r < b
        n = 1
        while mpq(1, n) >= b:
            n += 1
        return mpq(fl) + mpq(1, n)
    return mpq(fl) + 1 / simplest_between(1 / b, 1 / a)


def _best_square(s: Scene2, frags, y: Point2, d: Dir2):
    """Widest clearance square centred at a chord midpoint of the ray y + t d."""
    best = None
    for q in s.polys:
        iv = q.line_interval(y, d)
        if iv is None:
            continue
        lo, hi = iv
        if hi is not None and hi <= 0:
            continue
        lo = ZERO if lo is None or lo < 0 else lo
        t = lo + 1 if hi is None else (lo + hi) / 2
        x = Point2(y.x + t * d.dx, y.y + t * d.dy)
        half = _clearance_in_e(frags, x) / 2
        if best is None or half > best[1]:
            best = (x, half)
    return best


def certify_trap_radius(s: Scene2, y: Sequence, mode: str = "ray",
                        initial: int = 64, max_rounds: int = 40) -> Certificate:
    """Build an l-infinity openness certificate around a trapped point."""
    if mode not in ("ray", "line"):
        raise ValueError(f"mode must be 'ray' or 'line', got {mode!r}")
    y = Point2(y[0], y[1])
    status = classify_point(s, y).status
    ok = RAY_TRAPPED if mode == "ray" else LINE_TRAPPED
    if status not in ok:
        raise NotTrapped(f"{y} is {status.value}, not trapped in {mode} mode")
    eps1 = _clearance_from_closure(s, y)
    frags = scene_boundary_fragments(s)
    covered = ArcSet.empty()
    squares: list[WitnessSquare] = []
    pending = [mpq(4 * k, initial) for k in range(initial)]
    for _ in range(max_rounds):
        for theta in pending:
            d = dir_from_pseudo_angle(theta)
            if covered.contains(d):
                continue
            best = _best_square(s, frags, y, d)
            if best is None and mode == "line":
                d = -d
                best = _best_square(s, frags, y, d)
            if best is None:
                raise KernelError(f"trapped point {y} has unblocked direction {d}")
            x, half = best
            arc = _square_arc(y, x, half)
            squares.append(WitnessSquare(x, half, arc))
            piece = ArcSet.from_arc(arc.start, arc.end)
            covered = covered.union(piece.symmetrized() if mode == "line" else piece)
        if covered.is_full():
            radius = min([eps1] + [w.half_side for w in squares])
            return Certificate(y, radius, eps1, squares, mode)
        pending = []
        for u, v in covered._complement_pseudo():
            pending.append(u)
            if u != v:
                hi = v if v > u else v + 4
                pending.append(simplest_between(u, hi) % 4)
                pending.append(v)
    raise NonTermination(
        f"no finite cover after {max_rounds} refinement rounds at {y}; "
        f"uncovered: {covered.complement_components()}"
    )


# --------------------------------------------------------------------------
# escape collections


@dataclass
class EscapeReport:
    mode: str
    samples: list[Point2]
    witnesses: list  # Ray2 or Line2
    miss_e: bool
    miss_trapped: bool
    trapped_probes: int
    probe_failures: list

    @property
    def ok(self) -> bool:
        return self.miss_e and self.miss_trapped and not self.probe_failures


def trapped_boundary_samples(rc: RegionCells, mode: str = "ray") -> list[Point2]:
    """Midpoints of facets separating trapped cells from the rest."""
    trapped = RAY_TRAPPED if mode == "ray" else LINE_TRAPPED
    out: dict = {}
    for f in rc.facets():
        i, j = f.cells
        if (rc.labels[i] in trapped) != (rc.labels[j] in trapped):
            out.setdefault(f.midpoint, None)
    return list(out)


def escape_ray_collection(s: Scene2, rc: RegionCells, samples=None, mode: str = "ray",
                          probe_dirs: int = 8) -> EscapeReport:
    """Escape rays (lines) from boundary samples of the trapped region.

    Every witness is checked to miss E and every trapped cell.  The probes then
    check that a ray from inside the trapped region meets E at a point that is
    neither trapped nor on any emitted witness, so the union of witnesses and
    the trapped region contains no ray (line) starting in the trapped region.
    """
    trapped = RAY_TRAPPED if mode == "ray" else LINE_TRAPPED
    if samples is None:
        samples = trapped_boundary_samples(rc, mode)
    trapped_cells = [rc.cells[i] for i in rc.indices(trapped)]
    witnesses = []
    miss_e = miss_trapped = True
    for x in samples:
        blocked = blocked_arcs(s, x)
        arcs = blocked if mode == "ray" else blocked.symmetrized()
        if arcs.is_full():
            raise KernelError(f"boundary sample {x} of the trapped region is trapped")
        d = arcs.complement_representative()
        if mode == "ray":
            w = Ray2(x, d)
            hits_e = ray_hits_scene(s, w)
            hits_t = any(ray_hits_poly_interior(w, c) for c in trapped_cells)
        else:
            w = Line2(x, d)
            hits_e = line_hits_scene(s, w)
            hits_t = any(c.line_interval(w.origin, w.dir) is not None for c in trapped_cells)
        miss_e &= not hits_e
        miss_trapped &= not hits_t
        witnesses.append(w)
    failures = []
    probes = 0
    if witnesses:
        for cell in trapped_cells:
            y = cell.centroid()
            for k in range(probe_dirs):
                d = dir_from_pseudo_angle(mpq(4 * k, probe_dirs))
                probes += 1
                p = _hit_point(s, y, d, mode)
                if p is None:
                    failures.append((y, d, "no hit"))
                    continue
                if scene_contains(s, p) is not Membership.IN_E:
                    failures.append((y, d, "hit point not in E"))
                elif _label_or_classify(rc, p) in trapped:
                    failures.append((y, d, "hit point trapped"))
                elif any(_on_witness(w, p) for w in witnesses):
                    failures.append((y, d, "hit point on a witness"))
    return EscapeReport(mode, list(samples), witnesses, miss_e, miss_trapped, probes, failures)


def _label_or_classify(rc: RegionCells, p) -> Status:
    lab = rc.label_at(p)
    return classify_point(rc.scene, p).status if lab is None else lab


def _hit_point(s: Scene2, y: Point2, d: Dir2, mode: str) -> Optional[Point2]:
    for direction in ((d,) if mode == "ray" else (d, -d)):
        hit = first_hit(s, Ray2(y, direction))
        if hit is not None:
            _, t_in, t_out = hit
            t = (t_in + t_out) / 2
            return Point2(y.x + t * direction.dx, y.y + t * direction.dy)
    return None


def _on_witness(w, p) -> bool:
    o, d = w.origin, w.dir
    if orient(o, (o.x + d.dx, o.y + d.dy), p) != 0:
        return False
    if isinstance(w, Line2):
        return True
    return (p[0] - o.x) * d.dx + (p[1] - o.y) * d.dy >= 0
