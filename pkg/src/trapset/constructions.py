"""Generators for the example families, each paired with its predicted trapped set.

Planar family: an open convex D, an open convex polygon P with closure inside
D, and cuts along the side lines of P (whole lines, or one ray per side
continuing the side past its head vertex).  E = (D minus closure(P)) minus the
cuts is emitted as an overlapping cover of open convex pieces.

Spatial families are described by solids from :mod:`trapset.trapnd`.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from gmpy2 import mpq

from .geometry import (
    ONE,
    ZERO,
    ConvexPoly,
    GeometryError,
    Location,
    Point2,
    Q,
    Scalar,
    clip_halfplane,
    convex_hull,
    cross,
    line_coefficients,
    line_intersection,
    orient,
    segment_param_on_line,
)
from .scene import Membership, Scene2, scene_contains

MODES = ("rays", "lines", "none")


class ConstructionError(ValueError):
    pass


def square(r) -> ConvexPoly:
    r = Q(r)
    return ConvexPoly([(-r, -r), (r, -r), (r, r), (-r, r)])


DEFAULT_D = square(4)
DEFAULT_P = ConvexPoly([(-2, -1), (2, -1), (0, 2)])


@dataclass(frozen=True)
class CutSceneSpec:
    """Inputs of the planar family.

    ``glue`` is the starting relative half-width of fallback glue triangles;
    it is halved until the triangle sits inside its chunks.
    """

    D: ConvexPoly = DEFAULT_D
    P: ConvexPoly = DEFAULT_P
    mode: str = "lines"
    glue: Scalar = mpq(1, 8)

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConstructionError(f"mode must be one of {MODES}, got {self.mode!r}")
        for v in self.P.vertices:
            if not self.D.contains(v):
                raise ConstructionError(f"closure(P) is not inside D: vertex {v}")


@dataclass
class CutScene:
    spec: CutSceneSpec
    scene: Scene2
    chunks: list[ConvexPoly]
    glue: list[ConvexPoly]
    kept: list[tuple[Point2, Point2]]

    @property
    def predicted(self) -> ConvexPoly:
        return self.spec.P

    def removed(self, p: Sequence) -> bool:
        return on_cut(self.spec, p)

    def oracle(self, p: Sequence) -> bool:
        """Direct set-formula membership in E."""
        return cut_scene_oracle(self.spec, p)


def side_lines(P: ConvexPoly):
    """(tail, head) vertex pairs of the sides, counterclockwise."""
    return P.edges()


def on_cut(spec: CutSceneSpec, p: Sequence) -> bool:
    if spec.mode == "none":
        return False
    for a, b in side_lines(spec.P):
        if orient(a, b, p) != 0:
            continue
        if spec.mode == "lines":
            return True
        # removed ray: from the head vertex onward
        if segment_param_on_line(p, a, b) >= 1:
            return True
    return False


def cut_scene_oracle(spec: CutSceneSpec, p: Sequence) -> bool:
    return spec.D.contains(p) and spec.P.locate(p) is Location.OUTSIDE and not on_cut(spec, p)


def _chunks(D: ConvexPoly, P: ConvexPoly) -> list[ConvexPoly]:
    cells = [list(D.vertices)]
    for a, b in side_lines(P):
        A, B, C = line_coefficients(a, b)
        nxt = []
        for c in cells:
            for part in clip_halfplane(c, A, B, C):
                if len(part) >= 3 and _area2(part) != 0:
                    nxt.append(part)
        cells = nxt
    polys = [ConvexPoly(_dedupe(c)) for c in cells]
    return [q for q in polys if not P.contains(q.centroid())]


def _area2(verts) -> Scalar:
    n = len(verts)
    return sum((cross(verts[i][0], verts[i][1], verts[(i + 1) % n][0], verts[(i + 1) % n][1])
                for i in range(n)), ZERO)


def _dedupe(verts):
    out = []
    for v in verts:
        if not out or out[-1] != v:
            out.append(v)
    if len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return out


def _kept_segments(spec: CutSceneSpec) -> tuple[list, list]:
    """Open segments of side lines lying in E, and kept crossing points.

    Segments are split at every crossing with another side line so that each
    one borders exactly one chunk on either side.
    """
    D, P = spec.D, spec.P
    sides = side_lines(P)
    segs = []
    crossings: dict = {}
    for i, (a, b) in enumerate(sides):
        d = (b[0] - a[0], b[1] - a[1])
        lo, hi = D.line_interval(a, d)
        if spec.mode == "lines":
            continue
        pieces = [(lo, ZERO)]
        if spec.mode == "none":
            pieces.append((ONE, hi))
        cuts = []
        for j, (c, e) in enumerate(sides):
            if j == i:
                continue
            x = line_intersection(a, d, c, (e[0] - c[0], e[1] - c[1]))
            if x is None:
                continue
            t = segment_param_on_line(x, a, b)
            if lo < t < hi and not (0 <= t <= 1):
                cuts.append(t)
                if not on_cut(spec, x):
                    crossings.setdefault(x, None)
        for s, e in pieces:
            ts = sorted({s, e} | {t for t in cuts if s < t < e})
            for t0, t1 in zip(ts, ts[1:]):
                p0 = Point2(a[0] + t0 * d[0], a[1] + t0 * d[1])
                p1 = Point2(a[0] + t1 * d[0], a[1] + t1 * d[1])
                mid = Point2((p0.x + p1.x) / 2, (p0.y + p1.y) / 2)
                if cut_scene_oracle(spec, mid):
                    segs.append((p0, p1))
    return segs, list(crossings)


def _sides_of(chunks, a, b):
    """The chunks whose closures contain the open segment (a, b), left then right."""
    mid = Point2((a.x + b.x) / 2, (a.y + b.y) / 2)
    left = right = None
    for q in chunks:
        if q.locate(mid) is not Location.BOUNDARY:
            continue
        side = orient(a, b, q.centroid())
        if side > 0:
            left = q
        elif side < 0:
            right = q
    if left is None or right is None:
        raise ConstructionError(f"kept segment {a}..{b} is not bordered by two chunks")
    return left, right


def _in_closure(q: ConvexPoly, p) -> bool:
    return q.locate(p) is not Location.OUTSIDE


def _glue_pair(spec: CutSceneSpec, chunks, a: Point2, b: Point2) -> list[ConvexPoly]:
    """Glue across the open segment (a, b) between its two bordering chunks.

    Preferred: one quadrilateral a, cR, b, cL with corners taken from the two
    chunks and the segment as a diagonal (no new vertices, hence no new
    candidate lines).  Fallback: two thin triangles with apexes at a and b.
    """
    left, right = _sides_of(chunks, a, b)
    d = (b.x - a.x, b.y - a.y)
    best = None
    for cl in left.vertices:
        if orient(a, b, cl) <= 0:
            continue
        for cr in right.vertices:
            if orient(a, b, cr) >= 0:
                continue
            x = line_intersection(a, d, cl, (cr.x - cl.x, cr.y - cl.y))
            mu = segment_param_on_line(x, a, b)
            if 0 < mu < 1:
                # most central crossing keeps the quadrilateral fat
                key = abs(mu - mpq(1, 2))
                if best is None or key < best[0]:
                    best = (key, cl, cr)
    if best is not None:
        return [ConvexPoly([a, best[2], b, best[1]])]
    out = []
    n = (-d[1], d[0])
    for apex, frac in ((a, mpq(3, 4)), (b, mpq(1, 4))):
        m = Point2(a.x + frac * d[0], a.y + frac * d[1])
        w = Q(spec.glue)
        while True:
            cl = Point2(m.x + w * n[0], m.y + w * n[1])
            cr = Point2(m.x - w * n[0], m.y - w * n[1])
            if _in_closure(left, cl) and _in_closure(right, cr):
                out.append(ConvexPoly.from_points([apex, cl, cr]))
                break
            w /= 2
            if w < mpq(1, 2 ** 40):
                raise ConstructionError(f"glue for {a}..{b} thinner than the floor")
    return out


def _diamond(spec: CutSceneSpec, chunks, q: Point2, segs) -> ConvexPoly:
    """Small polygon around a kept crossing point, split by the lines through it."""
    arms = []
    for a, b in segs:
        if a == q:
            arms.append(b)
        elif b == q:
            arms.append(a)
    if len(arms) < 4:
        raise ConstructionError(f"crossing {q} has {len(arms)} kept arms")
    delta = ONE
    while delta > mpq(1, 2 ** 40):
        # l1-normalised arm directions keep all points on one diamond
        pts = []
        for e in arms:
            dx, dy = e.x - q.x, e.y - q.y
            s = abs(dx) + abs(dy)
            scale = min(delta / s, mpq(1, 2))
            pts.append(Point2(q.x + scale * dx, q.y + scale * dy))
        pts.sort(key=lambda p: _angle_key(q, p))
        ok = True
        for i in range(len(pts)):
            u, v = pts[i], pts[(i + 1) % len(pts)]
            if not any(_in_closure(c, u) and _in_closure(c, v) and _in_closure(c, q) for c in chunks):
                ok = False
                break
        if ok:
            return convex_hull(pts)
        delta /= 2
    raise ConstructionError(f"no diamond fits at crossing {q}")


def _angle_key(q, p):
    from .geometry import pseudo_angle

    return pseudo_angle((p[0] - q[0], p[1] - q[1]))


def make_cut_scene_2d(spec: CutSceneSpec = CutSceneSpec(), validate: bool = True,
                      samples: int = 2000, seed: int = 0) -> CutScene:
    """Convex cover of (D minus closure(P)) minus the cuts; trapped set predicted = P."""
    chunks = _chunks(spec.D, spec.P)
    segs, crossings = _kept_segments(spec)
    glue: list[ConvexPoly] = []
    for a, b in segs:
        glue.extend(_glue_pair(spec, chunks, a, b))
    for q in crossings:
        glue.append(_diamond(spec, chunks, q, segs))
    scene = Scene2(chunks + glue)
    out = CutScene(spec, scene, chunks, glue, segs)
    if validate:
        bad = validate_cover(out, samples=samples, seed=seed)
        if bad is not None:
            raise ConstructionError(f"cover disagrees with the set formula at {bad}")
    return out


def validate_cover(cs: CutScene, samples: int = 2000, seed: int = 0) -> Optional[Point2]:
    """First point where the emitted cover and the set formula disagree, else None.

    Random points hit the cuts with probability zero, so points on every side
    line, on kept segments and at crossings are added on purpose.
    """
    rng = random.Random(seed)
    box = cs.scene.bbox
    pts = [random_point(rng, box.min, box.max) for _ in range(samples)]
    for a, b in side_lines(cs.spec.P):
        d = (b[0] - a[0], b[1] - a[1])
        lo, hi = cs.spec.D.line_interval(a, d)
        for _ in range(40):
            t = lo - 1 + (hi - lo + 2) * mpq(rng.randrange(1, 4096), 4096)
            pts.append(Point2(a[0] + t * d[0], a[1] + t * d[1]))
        pts.extend([a, b])
    for a, b in cs.kept:
        for k in range(1, 8):
            t = mpq(k, 8)
            pts.append(Point2(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)))
        pts.extend([a, b])
    for g in cs.glue:
        pts.extend(g.vertices)
    for p in pts:
        if (scene_contains(cs.scene, p) is Membership.IN_E) != cs.oracle(p):
            return p
    return None


def random_point(rng: random.Random, lo: Sequence, hi: Sequence, den: int = 1 << 20) -> Point2:
    return Point2(lo[0] + (hi[0] - lo[0]) * mpq(rng.randrange(1, den), den),
                  lo[1] + (hi[1] - lo[1]) * mpq(rng.randrange(1, den), den))


def random_point_in(rng: random.Random, q: ConvexPoly, den: int = 1 << 16) -> Point2:
    """Rational point strictly inside q (positive barycentric weights on a fan triangle)."""
    vs = q.vertices
    k = rng.randrange(1, len(vs) - 1)
    w = [rng.randrange(1, den) for _ in range(3)]
    s = sum(w)
    tri = (vs[0], vs[k], vs[k + 1])
    return Point2(sum(mpq(wi, s) * p.x for wi, p in zip(w, tri)),
                  sum(mpq(wi, s) * p.y for wi, p in zip(w, tri)))


def random_cut_spec(seed: int, mode: str = "rays", sides: int = 3) -> CutSceneSpec:
    """A random member of the planar family with small rational coordinates."""
    rng = random.Random(seed)
    while True:
        r = rng.randrange(5, 9)
        m = rng.randrange(5, 9)
        ring = []
        for k in range(m):
            ang = 2 * math.pi * (k + rng.random() * 0.6) / m
            ring.append((round(r * math.cos(ang)), round(r * math.sin(ang))))
        pts = [(Fraction(rng.randrange(-8, 9), 4), Fraction(rng.randrange(-8, 9), 4))
               for _ in range(sides)]
        try:
            D = convex_hull(ring)
            P = convex_hull(pts)
        except GeometryError:
            continue
        if len(P) != sides or P.area() < 1:
            continue
        try:
            return CutSceneSpec(D, P, mode)
        except ConstructionError:
            continue


def make_generalized_polygon(k: int) -> ConvexPoly:
    """Hull of 2k+2 rational points of the unit circle at angles 0, pi, +-pi/2^j.

    Points come from the tangent half-angle parametrisation, so the polygon is
    exact and strictly convex.
    """
    if k < 1:
        raise ConstructionError("k must be at least 1")
    pts = [Point2(ONE, ZERO), Point2(-ONE, ZERO)]
    for j in range(1, k + 1):
        u = Fraction(math.tan(math.pi / 2 ** (j + 1))).limit_denominator(10 ** 6)
        u = mpq(u.numerator, u.denominator)
        den = 1 + u * u
        for sign in (1, -1):
            pts.append(Point2((1 - u * u) / den, sign * 2 * u / den))
    return convex_hull(pts)


# --------------------------------------------------------------------------
# spatial families


def _trapnd():
    from . import trapnd

    return trapnd


def closures_disjoint(p: ConvexPoly, q: ConvexPoly) -> bool:
    """Exact test that closure(p) and closure(q) share no point (strict separating edge)."""
    for a, b in ((p, q), (q, p)):
        for v, w in a.edges():
            if all(orient(v, w, x) < 0 for x in b.vertices):
                return True
    return False


def _check_axis(axis) -> tuple:
    axis = tuple(Q(c) for c in axis)
    if len(axis) != 3:
        raise ConstructionError("axis must have three coordinates")
    # angle with the vertical unit vector strictly inside (0, pi/2)
    if axis[2] <= 0 or (axis[0] == 0 and axis[1] == 0):
        raise ConstructionError(f"axis {axis} must lean: positive height and nonzero horizontal part")
    return axis


@dataclass
class SpatialConstruction:
    """A scene of solids together with its predicted trapped set."""

    scene: object  # trapnd.PrismScene
    predicted: list
    rho: Scalar
    axis: tuple
    base: Optional[CutScene] = None
    predicted_floor: Optional[object] = None
    inner: Optional["SpatialConstruction"] = None
    kind: str = ""

    def in_predicted(self, p) -> bool:
        p = tuple(Q(c) for c in p)
        if any(s.contains(p) for s in self.predicted):
            return True
        if self.predicted_floor is not None:
            k = self.scene.floor_index(p[-1])
            return any(s.contains(p) for j in (k, k + 1) for s in self.predicted_floor(j))
        return False

    def predicted_closure_contains(self, p) -> bool:
        p = tuple(Q(c) for c in p)
        return any(s.closure_contains(p) for s in self.predicted)


DEFAULT_AXIS = (2, 0, 2)
STACKED_AXIS = (6, 0, 2)


def make_E3_bounded(base: Optional[CutScene] = None, axis=DEFAULT_AXIS) -> SpatialConstruction:
    """Mirror pair of oblique prisms over E^2 plus two capping boxes.

    The upward prisms use t in [0, 1) and the downward ones their mirror, so
    the shared base z = 0 belongs to both and the union is open there.  The
    caps are D+ x (rho, 3/2 rho) and its mirror, with D+ the shadow of D + axis.
    """
    tn = _trapnd()
    if base is None:
        base = make_cut_scene_2d(CutSceneSpec(mode="lines"))
    a_up = _check_axis(axis)
    a_down = (a_up[0], a_up[1], -a_up[2])
    rho = a_up[2]
    half_open = tn.Interval(ZERO, ONE, True, False)
    solids = []
    for i, q in enumerate(base.scene.polys):
        solids.append(tn.Prism3(q, ZERO, a_up, half_open, f"up:{i}"))
        solids.append(tn.Prism3(q, ZERO, a_down, half_open, f"down:{i}"))
    d_plus = base.spec.D.translated(a_up[0], a_up[1])
    cap = tn.Interval(ZERO, rho / 2)
    solids.append(tn.Prism3(d_plus, rho, (ZERO, ZERO, ONE), cap, "cap+"))
    solids.append(tn.Prism3(d_plus, -rho, (ZERO, ZERO, -ONE), cap, "cap-"))
    P = base.spec.P
    predicted = [tn.Prism3(P, ZERO, a_up, half_open, "up:P"),
                 tn.Prism3(P, ZERO, a_down, half_open, "down:P")]
    scene = tn.PrismScene(3, solids, name="E3-bounded")
    return SpatialConstruction(scene, predicted, rho, a_up, base, kind="E3-bounded")


def make_E3_stacked(base: Optional[CutScene] = None, axis=STACKED_AXIS) -> SpatialConstruction:
    """Unbounded zig-zag stack of mirror prisms, floors built on demand.

    Floor 2k is the downward prism (t open at both ends) lifted by 2k*rho and
    floor 2k+1 the upward one (t closed) lifted by 2k*rho; a capping box sits
    below floor 0.  The trapped column contains no ray when the two axes are
    not parallel and closure(P) misses closure(P) + horizontal part of axis.
    """
    tn = _trapnd()
    if base is None:
        base = make_cut_scene_2d(CutSceneSpec(mode="lines"))
    a_up = _check_axis(axis)
    a_down = (a_up[0], a_up[1], -a_up[2])
    rho = a_up[2]
    P = base.spec.P
    if not no_ray_condition(P, a_up):
        raise ConstructionError(f"axis {a_up} lets the trapped column contain a vertical ray")
    pieces = base.scene.polys
    open_t = tn.Interval(ZERO, ONE)
    closed_t = tn.Interval(ZERO, ONE, True, True)

    def floor(k: int, polys, label):
        lift = (k // 2) * 2 * rho
        if k % 2 == 0:
            return [tn.Prism3(q, lift, a_down, open_t, f"floor{k}:{label(i)}") for i, q in enumerate(polys)]
        return [tn.Prism3(q, lift, a_up, closed_t, f"floor{k}:{label(i)}") for i, q in enumerate(polys)]

    d_minus = base.spec.D.translated(a_up[0], a_up[1])
    cap = tn.Prism3(d_minus, -rho, (ZERO, ZERO, -ONE), tn.Interval(ZERO, rho / 2), "cap-")
    scene = tn.PrismScene(3, [cap], floor_height=rho,
                          floor_factory=lambda k: floor(k, pieces, str), name="E3-stacked")
    return SpatialConstruction(scene, [], rho, a_up, base,
                               predicted_floor=lambda k: floor(k, [P], lambda i: "P") if k >= 0 else [],
                               kind="E3-stacked")


def no_ray_condition(P: ConvexPoly, axis) -> bool:
    """Exact check of the zig-zag condition for the stacked family.

    The two prism axes must not be parallel, and P must not meet its shift by
    the horizontal part of the axis (else a vertical ray stays in the column).
    """
    a_up = tuple(Q(c) for c in axis)
    a_down = (a_up[0], a_up[1], -a_up[2])
    c = (a_up[1] * a_down[2] - a_up[2] * a_down[1],
         a_up[2] * a_down[0] - a_up[0] * a_down[2],
         a_up[0] * a_down[1] - a_up[1] * a_down[0])
    if all(x == 0 for x in c):
        return False
    return closures_disjoint(P, P.translated(a_up[0], a_up[1]))


def make_En_product(inner: Optional[SpatialConstruction] = None, n: int = 4) -> SpatialConstruction:
    """E^n = D^{n-1} x (-3/2, -1)  u  E^{n-1} x (-1, 1)  u  D^{n-1} x (1, 3/2).

    D^{n-1} is the convex hull of E^{n-1}; for n = 4 it is computed exactly
    from the vertices of the bounded E^3, and above that it is the previous
    hull times (-3/2, 3/2).
    """
    tn = _trapnd()
    if n < 4:
        raise ConstructionError("products start at n = 4; use the 3D generators below that")
    if inner is None:
        inner = make_E3_bounded()
    if inner.scene.lazy:
        raise ConstructionError("only bounded inner constructions are supported")
    if inner.scene.dim != n - 1:
        inner = make_En_product(inner, n - 1)
    hull = _hull_solid(inner)
    span = tn.Interval(-ONE, ONE)
    solids = [tn.ProductSolid(s, span, s.tag) for s in inner.scene.solids]
    solids.append(tn.ProductSolid(hull, tn.Interval(ONE, mpq(3, 2)), "cap+"))
    solids.append(tn.ProductSolid(hull, tn.Interval(mpq(-3, 2), -ONE), "cap-"))
    predicted = [tn.ProductSolid(s, span, s.tag) for s in inner.predicted]
    scene = tn.PrismScene(n, solids, name=f"E{n}-product")
    return SpatialConstruction(scene, predicted, inner.rho, inner.axis, inner.base,
                               inner=inner, kind=f"E{n}-product")


def _hull_solid(c: SpatialConstruction):
    tn = _trapnd()
    if c.scene.dim == 3:
        pts = []
        for s in c.scene.solids:
            pts.extend(s.vertices())
        return tn.hull_polytope(pts)
    inner_hull = _hull_solid(c.inner)
    return tn.ProductSolid(inner_hull, tn.Interval(mpq(-3, 2), mpq(3, 2)), "hull")
