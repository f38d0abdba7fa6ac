"""Exact rational planar primitives.

Every coordinate is a ``gmpy2.mpq``; no predicate in this module ever touches
a float.  Lengths are compared through squared or l-infinity quantities so the
arithmetic stays rational.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from math import gcd
from typing import Iterable, NamedTuple, Optional, Sequence

from gmpy2 import mpq

Scalar = type(mpq(0))

ZERO = mpq(0)
ONE = mpq(1)
HALF = mpq(1, 2)


class GeometryError(ValueError):
    """Raised for degenerate or invalid geometric input."""


def Q(value) -> Scalar:
    """Convert ``value`` to an exact rational.

    Accepts ints, ``Fraction``, ``mpq`` and strings like ``"3/4"`` or ``"-2"``.
    Floats are refused: silently importing a binary approximation would defeat
    the point of the kernel.
    """
    if isinstance(value, Scalar):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a coordinate")
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            d = int(den)
            if d == 0:
                raise GeometryError(f"zero denominator in {value!r}")
            return mpq(int(num), d)
        return mpq(int(text))
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def format_q(value: Scalar) -> str:
    """Canonical string form: ``"p/q"`` with q > 0, or ``"p"`` for integers."""
    value = Q(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class Point2(NamedTuple):
    x: Scalar
    y: Scalar

    @classmethod
    def of(cls, x, y) -> "Point2":
        return cls(Q(x), Q(y))

    def __add__(self, other):  # type: ignore[override]
        return Point2(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Point2(self.x - other[0], self.y - other[1])

    def scaled(self, k) -> "Point2":
        return Point2(self.x * k, self.y * k)

    def __str__(self) -> str:
        return f"({format_q(self.x)}, {format_q(self.y)})"


def pt(x, y) -> Point2:
    return Point2(Q(x), Q(y))


def _primitive(dx: Scalar, dy: Scalar) -> tuple[int, int]:
    dx, dy = Q(dx), Q(dy)
    if dx == 0 and dy == 0:
        raise GeometryError("zero direction vector")
    den = dx.denominator * dy.denominator // gcd(dx.denominator, dy.denominator)
    ix = int(dx * den)
    iy = int(dy * den)
    g = gcd(ix, iy)
    return ix // g, iy // g


class Dir2(NamedTuple):
    """A direction as a primitive integer vector.

    Two vectors that differ by a positive factor give the same ``Dir2``; the
    opposite vector is a different direction.  Construct through :meth:`of`.
    """

    dx: int
    dy: int

    @classmethod
    def of(cls, dx, dy) -> "Dir2":
        return cls(*_primitive(dx, dy))

    def __neg__(self) -> "Dir2":
        return Dir2(-self.dx, -self.dy)

    @property
    def pseudo_angle(self) -> Scalar:
        return pseudo_angle(self)

    def __str__(self) -> str:
        return f"({self.dx},{self.dy})"


def pseudo_angle(d: Sequence) -> Scalar:
    """Exact monotone surrogate of the polar angle, valued in [0, 4).

    Quadrants are half-open and counted counterclockwise from +x; inside a
    quadrant the value increases with the angle, so sorting by it is the
    (quadrant, cross product) order.
    """
    dx, dy = d[0], d[1]
    if dx > 0 and dy >= 0:
        return mpq(dy) / (dx + dy)
    if dx <= 0 and dy > 0:
        return 1 + mpq(-dx) / (dy - dx)
    if dx < 0 and dy <= 0:
        return 2 + mpq(-dy) / (-dx - dy)
    if dx >= 0 and dy < 0:
        return 3 + mpq(dx) / (dx - dy)
    raise GeometryError("zero direction vector")


def dir_from_pseudo_angle(p) -> Dir2:
    """Inverse of :func:`pseudo_angle` (argument taken modulo 4)."""
    p = Q(p) % 4
    quadrant = int(p)
    t = p - quadrant
    if quadrant == 0:
        return Dir2.of(1 - t, t)
    if quadrant == 1:
        return Dir2.of(-t, 1 - t)
    if quadrant == 2:
        return Dir2.of(t - 1, -t)
    return Dir2.of(t, t - 1)


def dir_cmp(u: Dir2, v: Dir2) -> int:
    """Cyclic order starting at +x, counterclockwise: -1, 0 or +1."""
    pu, pv = pseudo_angle(u), pseudo_angle(v)
    return (pu > pv) - (pu < pv)


def direction(a: Sequence, b: Sequence) -> Dir2:
    """Direction of the vector from ``a`` to ``b``."""
    return Dir2.of(b[0] - a[0], b[1] - a[1])


class Ray2(NamedTuple):
    origin: Point2
    dir: Dir2

    def at(self, t) -> Point2:
        return Point2(self.origin.x + t * self.dir.dx, self.origin.y + t * self.dir.dy)


class Line2(NamedTuple):
    origin: Point2
    dir: Dir2

    def at(self, t) -> Point2:
        return Point2(self.origin.x + t * self.dir.dx, self.origin.y + t * self.dir.dy)

    def coefficients(self) -> tuple[int, int, int]:
        return line_coefficients(self.origin, self.origin + (self.dir.dx, self.dir.dy))


def line_coefficients(p: Sequence, q: Sequence) -> tuple[int, int, int]:
    """Canonical integer (a, b, c) with a*x + b*y + c = 0 through p and q.

    The triple is primitive and its first nonzero entry among (a, b) is
    positive, so equal lines give equal triples.
    """
    a = Q(q[1]) - Q(p[1])
    b = Q(p[0]) - Q(q[0])
    if a == 0 and b == 0:
        raise GeometryError("coincident points do not define a line")
    c = -(a * p[0] + b * p[1])
    den = 1
    for v in (a, b, c):
        den = den * v.denominator // gcd(den, v.denominator)
    ia, ib, ic = int(a * den), int(b * den), int(c * den)
    g = gcd(gcd(ia, ib), ic)
    ia, ib, ic = ia // g, ib // g, ic // g
    if ia < 0 or (ia == 0 and ib < 0):
        ia, ib, ic = -ia, -ib, -ic
    return ia, ib, ic


def line_from_coefficients(coeffs: Sequence[int]) -> Line2:
    a, b, c = coeffs
    if a != 0:
        origin = Point2(mpq(-c, a), ZERO)
    else:
        origin = Point2(ZERO, mpq(-c, b))
    return Line2(origin, Dir2.of(-b, a))


def cross(ax, ay, bx, by):
    return ax * by - ay * bx


def orient(a: Sequence, b: Sequence, c: Sequence) -> int:
    """Sign of (b - a) x (c - a)."""
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


class Location(enum.Enum):
    INTERIOR = "Interior"
    BOUNDARY = "Boundary"
    OUTSIDE = "Outside"


class ConvexPoly:
    """Open strictly convex polygon, vertices counterclockwise."""

    __slots__ = ("vertices", "_edges", "_hash")

    def __init__(self, vertices: Iterable):
        verts = tuple(Point2(Q(v[0]), Q(v[1])) for v in vertices)
        n = len(verts)
        if n < 3:
            raise GeometryError("a polygon needs at least 3 vertices")
        if len(set(verts)) != n:
            raise GeometryError("repeated vertex")
        for i in range(n):
            if orient(verts[i - 1], verts[i], verts[(i + 1) % n]) <= 0:
                raise GeometryError(
                    f"not strictly convex counterclockwise at vertex {i}: {verts[i]}"
                )
        # a star polygon passes the local test; the winding must be one turn
        if not _winds_once(verts):
            raise GeometryError("vertices do not bound a simple convex polygon")
        self.vertices = verts
        self._edges = tuple(
            (verts[i], verts[(i + 1) % n][0] - verts[i][0], verts[(i + 1) % n][1] - verts[i][1])
            for i in range(n)
        )
        self._hash = None

    @classmethod
    def from_points(cls, points: Iterable) -> "ConvexPoly":
        """Hull of ``points``; collinear and repeated points are dropped."""
        return convex_hull(points)

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConvexPoly):
            return NotImplemented
        return _rotation_canonical(self.vertices) == _rotation_canonical(other.vertices)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(_rotation_canonical(self.vertices))
        return self._hash

    def __repr__(self) -> str:
        return "ConvexPoly([" + ", ".join(str(v) for v in self.vertices) + "])"

    def edges(self):
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    def area(self) -> Scalar:
        return polygon_area(self.vertices)

    def centroid(self) -> Point2:
        """Vertex average; strictly interior for a convex polygon."""
        n = len(self.vertices)
        return Point2(sum(v[0] for v in self.vertices) / n, sum(v[1] for v in self.vertices) / n)

    def translated(self, dx, dy) -> "ConvexPoly":
        dx, dy = Q(dx), Q(dy)
        return ConvexPoly([(v[0] + dx, v[1] + dy) for v in self.vertices])

    def bounds(self) -> "AABB":
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return AABB(Point2(min(xs), min(ys)), Point2(max(xs), max(ys)))

    def locate(self, p: Sequence) -> Location:
        px, py = p[0], p[1]
        on_edge = False
        for v, ex, ey in self._edges:
            s = ex * (py - v[1]) - ey * (px - v[0])
            if s < 0:
                return Location.OUTSIDE
            if s == 0:
                on_edge = True
        return Location.BOUNDARY if on_edge else Location.INTERIOR

    def contains(self, p: Sequence) -> bool:
        """Open-interior membership."""
        px, py = p[0], p[1]
        for v, ex, ey in self._edges:
            if ex * (py - v[1]) - ey * (px - v[0]) <= 0:
                return False
        return True

    def line_interval(self, origin: Sequence, d: Sequence):
        """Open parameter interval of ``origin + t*d`` inside the open polygon.

        Returns ``(lo, hi)`` where ``None`` stands for an infinite end, or
        ``None`` if the line misses the interior.
        """
        ox, oy = origin[0], origin[1]
        dx, dy = d[0], d[1]
        lo = hi = None
        for v, ex, ey in self._edges:
            a = ex * (oy - v[1]) - ey * (ox - v[0])
            b = ex * dy - ey * dx
            if b == 0:
                if a <= 0:
                    return None
                continue
            t = -a / mpq(b)
            if b > 0:
                if lo is None or t > lo:
                    lo = t
            else:
                if hi is None or t < hi:
                    hi = t
            if lo is not None and hi is not None and lo >= hi:
                return None
        return lo, hi


def _winds_once(verts) -> bool:
    # Sum of exterior turning: for a locally convex ccw polygon the
    # directions of successive edges must be monotone over a single turn.
    n = len(verts)
    angles = [pseudo_angle((verts[(i + 1) % n][0] - verts[i][0], verts[(i + 1) % n][1] - verts[i][1]))
              for i in range(n)]
    descents = sum(1 for i in range(n) if angles[(i + 1) % n] < angles[i])
    return descents == 1


def _rotation_canonical(verts):
    i = min(range(len(verts)), key=lambda k: (verts[k][0], verts[k][1]))
    return verts[i:] + verts[:i]


def polygon_area(verts: Sequence) -> Scalar:
    """Signed shoelace area (positive for counterclockwise order)."""
    n = len(verts)
    total = ZERO
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        total += a[0] * b[1] - a[1] * b[0]
    return total / 2


class AABB(NamedTuple):
    min: Point2
    max: Point2

    @classmethod
    def around(cls, points: Iterable, margin=0) -> "AABB":
        pts = list(points)
        if not pts:
            raise GeometryError("empty point set")
        margin = Q(margin)
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        return cls(Point2(min(xs) - margin, min(ys) - margin), Point2(max(xs) + margin, max(ys) + margin))

    def as_poly(self) -> ConvexPoly:
        lo, hi = self.min, self.max
        return ConvexPoly([(lo.x, lo.y), (hi.x, lo.y), (hi.x, hi.y), (lo.x, hi.y)])

    def contains_strictly(self, p: Sequence) -> bool:
        return self.min.x < p[0] < self.max.x and self.min.y < p[1] < self.max.y


def point_locate_poly(p: Sequence, q: ConvexPoly) -> Location:
    return q.locate(p)


def ray_hits_poly_interior(r: Ray2, q: ConvexPoly) -> bool:
    """True iff the closed ray meets the open interior of ``q``."""
    return ray_hit_parameter(r, q) is not None


def ray_hit_parameter(r: Ray2, q: ConvexPoly):
    """A parameter t >= 0 with ``r.at(t)`` inside ``q``, or ``None``."""
    iv = q.line_interval(r.origin, r.dir)
    if iv is None:
        return None
    lo, hi = iv
    start = ZERO if lo is None or lo < 0 else lo
    if hi is not None and hi <= start:
        return None
    if lo is None or lo < 0:
        return ZERO if hi is None or hi > 0 else None
    return (lo + hi) / 2 if hi is not None else lo + 1


def ray_chord(r: Ray2, q: ConvexPoly):
    """Open parameter interval of the ray inside ``q`` clipped to t >= 0."""
    iv = q.line_interval(r.origin, r.dir)
    if iv is None:
        return None
    lo, hi = iv
    start = ZERO if lo is None or lo < 0 else lo
    if hi is not None and hi <= start:
        return None
    return start, hi


def line_hits_poly_interior(line: Line2, q: ConvexPoly) -> bool:
    return q.line_interval(line.origin, line.dir) is not None


def polys_interiors_intersect(q1: ConvexPoly, q2: ConvexPoly) -> bool:
    """Separating-axis test over both edge sets."""
    for a, b in ((q1, q2), (q2, q1)):
        for v, ex, ey in a._edges:
            if all(ex * (w[1] - v[1]) - ey * (w[0] - v[0]) <= 0 for w in b.vertices):
                return False
    return True


def convex_hull(points: Iterable) -> ConvexPoly:
    """Counterclockwise strict hull (monotone chain)."""
    pts = sorted({Point2(Q(p[0]), Q(p[1])) for p in points})
    if len(pts) < 3:
        raise GeometryError("need at least 3 distinct points for a hull")

    def half(seq):
        chain: list = []
        for p in seq:
            while len(chain) >= 2 and orient(chain[-2], chain[-1], p) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower = half(pts)
    upper = half(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise GeometryError("points are collinear")
    return ConvexPoly(hull)


def clip_halfplane(verts: Sequence, a, b, c):
    """Split a convex polygon by a*x + b*y + c = 0.

    Returns ``(negative_part, positive_part)`` as vertex lists (either may be
    empty or degenerate when the line does not cross the interior).
    """
    vals = [a * v[0] + b * v[1] + c for v in verts]
    neg: list = []
    pos: list = []
    n = len(verts)
    for i in range(n):
        p, s = verts[i], vals[i]
        q, t = verts[(i + 1) % n], vals[(i + 1) % n]
        if s <= 0:
            neg.append(p)
        if s >= 0:
            pos.append(p)
        if (s < 0 < t) or (t < 0 < s):
            k = s / (s - t)
            x = Point2(p[0] + k * (q[0] - p[0]), p[1] + k * (q[1] - p[1]))
            neg.append(x)
            pos.append(x)
    return neg, pos


def segment_param_on_line(p: Sequence, a: Sequence, b: Sequence) -> Scalar:
    """Parameter of p on the line a + t (b - a), assuming collinearity."""
    dx, dy = b[0] - a[0], b[1] - a[1]
    if dx != 0:
        return (p[0] - a[0]) / dx
    return (p[1] - a[1]) / dy


def linf_dist_point_segment(p: Sequence, a: Sequence, b: Sequence) -> Scalar:
    """Exact l-infinity distance from p to the closed segment [a, b].

    max(|f|, |g|) of two affine functions of t is convex and piecewise linear,
    so the minimum over [0, 1] sits at an endpoint or a breakpoint.
    """
    fx0, fy0 = a[0] - p[0], a[1] - p[1]
    fx1, fy1 = b[0] - a[0], b[1] - a[1]
    candidates = [ZERO, ONE]
    for num, den in ((fx0, fx1), (fy0, fy1), (fx0 - fy0, fx1 - fy1), (fx0 + fy0, fx1 + fy1)):
        if den != 0:
            t = -num / mpq(den)
            if 0 < t < 1:
                candidates.append(t)
    return min(max(abs(fx0 + t * fx1), abs(fy0 + t * fy1)) for t in candidates)


def linf_dist_point_poly(p: Sequence, q: ConvexPoly) -> Scalar:
    """l-infinity distance from p to the closed polygon (0 if inside)."""
    if q.locate(p) is not Location.OUTSIDE:
        return ZERO
    return min(linf_dist_point_segment(p, a, b) for a, b in q.edges())


def segments_intersect_closed(a, b, c, d) -> bool:
    """Do the closed segments [a, b] and [c, d] share a point?"""
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True

    def on_seg(p, q, r):
        return orient(p, q, r) == 0 and min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) \
            and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])

    return on_seg(a, b, c) or on_seg(a, b, d) or on_seg(c, d, a) or on_seg(c, d, b)


def line_intersection(p1, d1, p2, d2) -> Optional[Point2]:
    """Intersection point of two lines given as point + direction, if unique."""
    den = cross(d1[0], d1[1], d2[0], d2[1])
    if den == 0:
        return None
    t = cross(p2[0] - p1[0], p2[1] - p1[1], d2[0], d2[1]) / mpq(den)
    return Point2(p1[0] + t * d1[0], p1[1] + t * d1[1])
