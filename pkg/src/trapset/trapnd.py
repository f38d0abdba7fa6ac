"""Classification in dimension >= 3 for prism and product constructions.

Solids are open or half-open convex sets with exact membership, exact ray
intervals and exact slices by hyperplanes ``x_n = h``.  A point outside the
closure of E is certified free by slicing down to the planar engine; a point
suspected trapped is checked direction by direction with exact witness points
in E.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Optional, Sequence

from gmpy2 import mpq

from .geometry import ONE, ZERO, ConvexPoly, GeometryError, Location, Q, Scalar, clip_halfplane, format_q
from .scene import Membership, Scene2, scene_contains
from .trap2d import KernelError, Status, classify_point

Vec = tuple


def vec(values) -> Vec:
    return tuple(Q(v) for v in values)


def dot(u, v) -> Scalar:
    return sum((a * b for a, b in zip(u, v)), ZERO)


# --------------------------------------------------------------------------
# parameter intervals


@dataclass(frozen=True)
class Interval:
    """Interval of the real line; ``None`` ends are infinite (and open)."""

    lo: Optional[Scalar]
    hi: Optional[Scalar]
    lo_closed: bool = False
    hi_closed: bool = False

    @staticmethod
    def everything() -> "Interval":
        return Interval(None, None)

    def is_empty(self) -> bool:
        if self.lo is None or self.hi is None:
            return False
        if self.lo < self.hi:
            return False
        return not (self.lo == self.hi and self.lo_closed and self.hi_closed)

    def contains(self, t) -> bool:
        if self.lo is not None and (t < self.lo or (t == self.lo and not self.lo_closed)):
            return False
        if self.hi is not None and (t > self.hi or (t == self.hi and not self.hi_closed)):
            return False
        return True

    def intersect(self, other: "Interval") -> "Interval":
        lo, lc = self.lo, self.lo_closed
        if other.lo is not None and (lo is None or other.lo > lo or (other.lo == lo and not other.lo_closed)):
            lo, lc = other.lo, other.lo_closed
        hi, hc = self.hi, self.hi_closed
        if other.hi is not None and (hi is None or other.hi < hi or (other.hi == hi and not other.hi_closed)):
            hi, hc = other.hi, other.hi_closed
        return Interval(lo, hi, lc, hc)

    def first_point(self) -> Optional[Scalar]:
        """An early parameter inside the interval (its start if closed)."""
        if self.is_empty():
            return None
        if self.lo is None:
            return self.hi - 1 if self.hi is not None else ZERO
        if self.lo_closed:
            return self.lo
        if self.hi is None:
            return self.lo + 1
        return (self.lo + self.hi) / 2


EMPTY = Interval(ONE, ZERO)
RAY = Interval(ZERO, None, True, False)


def linear_window(c0, c1, allowed: Interval) -> Interval:
    """Parameters s with c0 + s*c1 inside ``allowed``."""
    if c1 == 0:
        return Interval.everything() if allowed.contains(c0) else EMPTY
    lo = None if allowed.lo is None else (allowed.lo - c0) / c1
    hi = None if allowed.hi is None else (allowed.hi - c0) / c1
    if c1 > 0:
        return Interval(lo, hi, allowed.lo_closed, allowed.hi_closed)
    return Interval(hi, lo, allowed.hi_closed, allowed.lo_closed)


def _poly_window(q: ConvexPoly, origin, d) -> Interval:
    if d[0] == 0 and d[1] == 0:
        return Interval.everything() if q.contains(origin) else EMPTY
    iv = q.line_interval(origin, d)
    if iv is None:
        return EMPTY
    return Interval(iv[0], iv[1])


# --------------------------------------------------------------------------
# solids


class Solid:
    """Interface: a convex subset of R^dim with exact queries."""

    dim: int
    tag: str = ""

    def contains(self, p) -> bool:
        raise NotImplementedError

    def closure_contains(self, p) -> bool:
        raise NotImplementedError

    def line_window(self, o, d) -> Interval:
        """Parameters s with o + s*d in the solid."""
        raise NotImplementedError

    def slice_last(self, h):
        """Section by x_dim = h as a solid of dimension dim-1 (a ConvexPoly in 2D), or None."""
        raise NotImplementedError

    def last_range(self) -> Interval:
        raise NotImplementedError


@dataclass(frozen=True)
class Prism3(Solid):
    """Oblique prism {b + t*axis : b in base at height z0, t in trange} in R^3.

    The base is open; the t-range carries per-end flags.  Along a line the
    prism is handled by projecting parallel to the axis onto the base plane,
    which turns the 3D question into a planar chord of the base.
    """

    base: ConvexPoly
    z0: Scalar
    axis: Vec
    trange: Interval
    tag: str = ""

    dim = 3

    def __post_init__(self):
        if self.axis[2] == 0:
            raise GeometryError("prism axis must have a nonzero vertical component")
        if self.trange.is_empty():
            raise GeometryError("empty prism parameter range")

    def _param(self, p):
        t = (p[2] - self.z0) / self.axis[2]
        return t, (p[0] - t * self.axis[0], p[1] - t * self.axis[1])

    def contains(self, p) -> bool:
        t, b = self._param(p)
        return self.trange.contains(t) and self.base.contains(b)

    def closure_contains(self, p) -> bool:
        t, b = self._param(p)
        tr = self.trange
        closed = Interval(tr.lo, tr.hi, True, True)
        return closed.contains(t) and self.base.locate(b) is not Location.OUTSIDE

    def line_window(self, o, d) -> Interval:
        ax, ay, az = self.axis
        t0, t1 = (o[2] - self.z0) / az, d[2] / az
        window = linear_window(t0, t1, self.trange)
        if window.is_empty():
            return EMPTY
        b0 = (o[0] - t0 * ax, o[1] - t0 * ay)
        b1 = (d[0] - t1 * ax, d[1] - t1 * ay)
        return window.intersect(_poly_window(self.base, b0, b1))

    def slice_last(self, h):
        t = (h - self.z0) / self.axis[2]
        if not self.trange.contains(t):
            return None
        return self.base.translated(t * self.axis[0], t * self.axis[1])

    def last_range(self) -> Interval:
        tr = self.trange
        az = self.axis[2]
        lo = None if tr.lo is None else self.z0 + tr.lo * az
        hi = None if tr.hi is None else self.z0 + tr.hi * az
        if az > 0:
            return Interval(lo, hi, tr.lo_closed, tr.hi_closed)
        return Interval(hi, lo, tr.hi_closed, tr.lo_closed)

    def vertices(self) -> list[Vec]:
        tr = self.trange
        out = []
        for t in (tr.lo, tr.hi):
            for v in self.base.vertices:
                out.append((v.x + t * self.axis[0], v.y + t * self.axis[1], self.z0 + t * self.axis[2]))
        return out

    def volume(self) -> Scalar:
        return self.base.area() * abs((self.trange.hi - self.trange.lo) * self.axis[2])


@dataclass(frozen=True)
class ProductSolid(Solid):
    """inner x span, the span being an interval of the last coordinate."""

    inner: object  # Solid of dim-1, or ConvexPoly when dim == 3
    span: Interval
    tag: str = ""

    @property
    def dim(self) -> int:  # type: ignore[override]
        return 3 if isinstance(self.inner, ConvexPoly) else self.inner.dim + 1

    def contains(self, p) -> bool:
        return self.span.contains(p[-1]) and _inner_contains(self.inner, p[:-1])

    def closure_contains(self, p) -> bool:
        sp = Interval(self.span.lo, self.span.hi, True, True)
        return sp.contains(p[-1]) and _inner_closure_contains(self.inner, p[:-1])

    def line_window(self, o, d) -> Interval:
        w = linear_window(o[-1], d[-1], self.span)
        if w.is_empty():
            return EMPTY
        if isinstance(self.inner, ConvexPoly):
            return w.intersect(_poly_window(self.inner, o[:-1], d[:-1]))
        return w.intersect(self.inner.line_window(o[:-1], d[:-1]))

    def slice_last(self, h):
        return self.inner if self.span.contains(h) else None

    def last_range(self) -> Interval:
        return self.span


def _inner_contains(inner, p) -> bool:
    return inner.contains(p)


def _inner_closure_contains(inner, p) -> bool:
    if isinstance(inner, ConvexPoly):
        return inner.locate(p) is not Location.OUTSIDE
    return inner.closure_contains(p)


@dataclass(frozen=True)
class ConvexPolytope(Solid):
    """Open bounded polytope {x : n.x < c for every facet (n, c)}."""

    facets: tuple
    points: tuple = ()  # vertices, kept for slicing and hulls
    tag: str = ""

    @property
    def dim(self) -> int:  # type: ignore[override]
        return len(self.facets[0][0])

    def contains(self, p) -> bool:
        return all(dot(n, p) < c for n, c in self.facets)

    def closure_contains(self, p) -> bool:
        return all(dot(n, p) <= c for n, c in self.facets)

    def line_window(self, o, d) -> Interval:
        w = Interval.everything()
        for n, c in self.facets:
            w = w.intersect(linear_window(dot(n, o), dot(n, d), Interval(None, c)))
            if w.is_empty():
                return EMPTY
        return w

    def slice_last(self, h):
        facets = []
        for n, c in self.facets:
            head = n[:-1]
            rhs = c - n[-1] * h
            if all(x == 0 for x in head):
                if rhs <= 0:
                    return None
                continue
            facets.append((head, rhs))
        if len(facets[0][0]) == 2:
            return _polygon_from_halfplanes(facets, self.points)
        sub = ConvexPolytope(tuple(facets), ())
        return sub if _has_interior(sub, self.points, h) else None

    def last_range(self) -> Interval:
        zs = [p[-1] for p in self.points]
        return Interval(min(zs), max(zs))

    def violated_facet(self, p):
        """A facet normal n with n.p >= c, or None when p is inside."""
        for n, c in self.facets:
            if dot(n, p) >= c:
                return n
        return None


def _has_interior(poly: ConvexPolytope, points, h) -> bool:
    # a slice of an open polytope is nonempty iff h is strictly inside the range
    zs = [p[-1] for p in points]
    return min(zs) < h < max(zs)


def _polygon_from_halfplanes(facets, points) -> Optional[ConvexPoly]:
    span = max(max(abs(c) for p in points for c in p), ONE) * 4 + 4
    verts = [(-span, -span), (span, -span), (span, span), (-span, span)]
    for n, c in facets:
        neg, _ = clip_halfplane(verts, n[0], n[1], -c)
        verts = _dedupe(neg)
        if len(verts) < 3:
            return None
    try:
        return ConvexPoly(verts)
    except GeometryError:
        return None


def _dedupe(verts):
    out = []
    for v in verts:
        if not out or out[-1] != v:
            out.append(v)
    if len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return out


def hull_polytope(points: Sequence[Vec]) -> ConvexPolytope:
    """Open convex hull of 3D points by brute-force facet search."""
    pts = sorted(set(vec(p) for p in points))
    if len(pts) < 4 or len(pts[0]) != 3:
        raise GeometryError("need at least 4 points in R^3")
    facets = {}
    for a, b, c in combinations(pts, 3):
        n = _cross3(_sub(b, a), _sub(c, a))
        if all(x == 0 for x in n):
            continue
        off = dot(n, a)
        side = [dot(n, p) - off for p in pts]
        if all(s <= 0 for s in side):
            key = _normalize_plane(n, off)
        elif all(s >= 0 for s in side):
            key = _normalize_plane(tuple(-x for x in n), -off)
        else:
            continue
        facets[key] = None
    if len(facets) < 4:
        raise GeometryError("points are coplanar")
    return ConvexPolytope(tuple(sorted(facets)), tuple(pts))


def _normalize_plane(n, c):
    scale = max(abs(x) for x in n)
    return tuple(x / scale for x in n), c / scale


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _cross3(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def hull_volume(points: Sequence[Vec]) -> Scalar:
    """Exact volume of the convex hull of 3D points."""
    poly = hull_polytope(points)
    pts = poly.points
    inner = tuple(sum(p[i] for p in pts) / len(pts) for i in range(3))
    total = ZERO
    for n, c in poly.facets:
        face = [p for p in pts if dot(n, p) == c]
        # order the face around its own centroid inside the plane
        fc = tuple(sum(p[i] for p in face) / len(face) for i in range(3))
        u = _sub(face[0], fc)
        w = _cross3(n, u)
        face.sort(key=lambda p: _plane_angle(_sub(p, fc), u, w))
        for i in range(1, len(face) - 1):
            total += abs(_det3(_sub(face[0], inner), _sub(face[i], inner), _sub(face[i + 1], inner)))
    return total / 6


def _plane_angle(p, u, w):
    from .geometry import pseudo_angle

    x, y = dot(p, u), dot(p, w)
    if x == 0 and y == 0:
        return ZERO
    return pseudo_angle((x, y))


def _det3(a, b, c) -> Scalar:
    return dot(a, _cross3(b, c))


# --------------------------------------------------------------------------
# scenes


class PrismScene:
    """Union of solids in R^dim, optionally extended by lazily built floors.

    ``floor_height`` and ``floor_solids`` describe an unbounded stack: floor k
    occupies last coordinates ((k-1)*h, k*h) (ends per the solids' flags) and
    is only materialised on demand.
    """

    def __init__(self, dim: int, solids: Sequence[Solid] = (), floor_height=None,
                 floor_factory=None, name: str = ""):
        self.dim = dim
        self.solids = list(solids)
        self.floor_height = None if floor_height is None else Q(floor_height)
        self._factory = floor_factory
        self._floors: dict[int, list[Solid]] = {}
        self.name = name
        for s in self.solids:
            if s.dim != dim:
                raise GeometryError(f"solid of dimension {s.dim} in a {dim}-dimensional scene")

    @property
    def lazy(self) -> bool:
        return self._factory is not None

    def floor(self, k: int) -> list[Solid]:
        if k < 0 or not self.lazy:
            return []
        got = self._floors.get(k)
        if got is None:
            got = list(self._factory(k))
            self._floors[k] = got
        return got

    def floors_built(self) -> int:
        return len(self._floors)

    def floor_index(self, z) -> int:
        """The k with (k-1)*h < z <= k*h."""
        k = Q(z) / self.floor_height
        return int(-((-k.numerator) // k.denominator))

    def solids_at(self, z) -> list[Solid]:
        out = list(self.solids)
        if self.lazy:
            k = self.floor_index(z)
            for j in (k, k + 1):
                out.extend(self.floor(j))
        return out


class NdStatus(enum.Enum):
    IN_E = "InE"
    ON_BOUNDARY = "OnBoundary"
    OUTSIDE = "Outside"
    CERTIFIED_FREE = "CertifiedFree"
    ESCAPE_RAY = "EscapeRay"
    EVIDENCE_TRAPPED = "EvidenceTrapped"
    INCONCLUSIVE = "Inconclusive"


class Inconclusive(RuntimeError):
    """A witness march ran past the floor budget."""


def scene_n_contains(s: PrismScene, p) -> NdStatus:
    p = vec(p)
    solids = s.solids_at(p[-1])
    boundary = False
    for sol in solids:
        if sol.contains(p):
            return NdStatus.IN_E
        if not boundary and sol.closure_contains(p):
            boundary = True
    return NdStatus.ON_BOUNDARY if boundary else NdStatus.OUTSIDE


def in_closure(s: PrismScene, p) -> bool:
    return scene_n_contains(s, p) is not NdStatus.OUTSIDE


@dataclass(frozen=True)
class SliceResult:
    kind: str  # "empty", "convex" or "general"
    pieces: list

    def scene2(self) -> Scene2:
        return Scene2(self.pieces)


def horizontal_slice(s: PrismScene, h) -> SliceResult:
    """Section of the scene by x_dim = h, one piece per solid that meets it."""
    h = Q(h)
    pieces = []
    for sol in s.solids_at(h):
        part = sol.slice_last(h)
        if part is not None:
            pieces.append(part)
    if not pieces:
        return SliceResult("empty", [])
    if len(pieces) == 1:
        return SliceResult("convex", pieces)
    return SliceResult("general", pieces)


def line_misses(s: PrismScene, o, d) -> bool:
    """Exact check that the whole line o + s*d avoids every solid."""
    if d[-1] != 0:
        raise ValueError("only lines inside a horizontal hyperplane can be checked against lazy floors")
    return all(sol.line_window(o, d).is_empty() for sol in s.solids_at(o[-1]))


def escape_via_slice(s: PrismScene, y) -> Optional[Vec]:
    """Direction of a line through y inside its horizontal hyperplane missing E.

    Empty section: any direction.  Convex section: a direction parallel to a
    separating facet.  Otherwise the planar engine (or a recursive slice)
    decides.  Every returned line is re-checked against all solids.
    """
    y = vec(y)
    if scene_n_contains(s, y) is not NdStatus.OUTSIDE:
        raise ValueError(f"{_fmt_vec(y)} is not outside the closure of E")
    d = _slice_direction(s.dim, horizontal_slice(s, y[-1]), y[:-1])
    if d is None:
        return None
    d = d + (ZERO,)
    if not line_misses(s, y, d):
        raise KernelError(f"slice escape line through {_fmt_vec(y)} along {_fmt_vec(d)} meets E")
    return d


def _slice_direction(dim: int, sl: SliceResult, y) -> Optional[Vec]:
    sub = dim - 1
    if sl.kind == "empty":
        return (ONE,) + (ZERO,) * (sub - 1)
    if sub == 2:
        cls = classify_point(sl.scene2(), y)
        if cls.status is Status.FREE:
            w = cls.witness
            return (mpq(w.dx), mpq(w.dy))
        return None
    if sl.kind == "convex" and isinstance(sl.pieces[0], ConvexPolytope):
        n = sl.pieces[0].violated_facet(y)
        if n is None:
            return None
        return _orthogonal(n)
    inner = PrismScene(sub, sl.pieces)
    if scene_n_contains(inner, y) is not NdStatus.OUTSIDE:
        return None
    d = _slice_direction(sub, horizontal_slice(inner, y[-1]), y[:-1])
    return None if d is None else d + (ZERO,)


def _orthogonal(n) -> Vec:
    """A nonzero vector orthogonal to n."""
    k = next(i for i, x in enumerate(n) if x != 0)
    j = 0 if k != 0 else 1
    out = [ZERO] * len(n)
    out[j] = n[k]
    out[k] = -n[j]
    return tuple(out)


@dataclass(frozen=True)
class Witness:
    direction: Vec
    point: Vec
    case: str  # "cap", "lateral", "base", "direct"
    floors: int = 0


def _case(hit: Solid, home: Optional[Solid]) -> str:
    if hit.tag.startswith("cap"):
        return "cap"
    if home is not None and hit.tag.split(":")[0] == home.tag.split(":")[0]:
        return "lateral"
    return "base" if home is not None else "direct"


def blocked_witness(s: PrismScene, y, d, budget: Optional[int] = None,
                    home: Optional[Solid] = None) -> Optional[Witness]:
    """Earliest point of the ray y + t*d (t >= 0) lying in E, exactly.

    Static scenes intersect every solid.  Lazy stacks are walked floor by
    floor in the order the ray meets them; passing more than ``budget`` floors
    raises :class:`Inconclusive`.
    """
    y, d = vec(y), vec(d)
    best = None

    def consider(solids):
        nonlocal best
        for sol in solids:
            w = sol.line_window(y, d).intersect(RAY)
            t = w.first_point()
            if t is None:
                continue
            if best is None or t < best[0]:
                best = (t, sol)

    consider(s.solids)
    floors = 0
    if s.lazy:
        if budget is None:
            raise ValueError("a lazy stack needs a floor budget")
        k = s.floor_index(y[-1])
        if d[-1] == 0:
            consider(s.floor(k) + s.floor(k + 1))
            floors = 2
        else:
            step = 1 if d[-1] > 0 else -1
            j = k
            while j >= 0:
                # a hit found in an earlier floor beats every later floor
                if best is not None and _reached_before(s, y, d, j, best[0]):
                    break
                if floors >= budget:
                    raise Inconclusive(f"floor budget {budget} exhausted along {_fmt_vec(d)} from {_fmt_vec(y)}")
                consider(s.floor(j))
                floors += 1
                j += step
    if best is None:
        return None
    t, sol = best
    point = tuple(a + t * b for a, b in zip(y, d))
    if scene_n_contains(s, point) is not NdStatus.IN_E:
        raise KernelError(f"witness {_fmt_vec(point)} for direction {_fmt_vec(d)} is not in E")
    return Witness(d, point, _case(sol, home), floors)


def _reached_before(s: PrismScene, y, d, j: int, t) -> bool:
    """Whether the hit at parameter t happens before the ray enters floor j."""
    h = s.floor_height
    edge = (j - 1) * h if d[-1] > 0 else j * h
    t_floor = (edge - y[-1]) / d[-1]
    return t <= t_floor


def ray_misses(s: PrismScene, y, d) -> bool:
    if s.lazy:
        raise ValueError("an unbounded stack cannot certify a missing ray")
    return all(sol.line_window(vec(y), vec(d)).intersect(RAY).is_empty() for sol in s.solids)


@dataclass
class NdClassification:
    status: NdStatus
    line: Optional[Vec] = None
    ray: Optional[Vec] = None
    witnesses: list = field(default_factory=list)
    samples: int = 0
    detail: str = ""

    def __str__(self) -> str:
        if self.status is NdStatus.EVIDENCE_TRAPPED:
            return f"EvidenceTrapped({self.samples})"
        if self.status is NdStatus.CERTIFIED_FREE:
            return "CertifiedFree (" + ",".join(_fmt(x) for x in self.line) + ")"
        if self.status is NdStatus.ESCAPE_RAY:
            return "EscapeRay (" + ",".join(_fmt(x) for x in self.ray) + ")"
        return self.status.value


def _fmt(x) -> str:
    return format_q(x)


def _fmt_vec(v) -> str:
    return "(" + ",".join(format_q(c) for c in v) + ")"


def sphere_directions(n: int, count: int, seed: int) -> list[Vec]:
    """Deterministic rational directions spread over the sphere S^{n-1}.

    In R^3 a Fibonacci lattice with a seeded twist; otherwise normalised
    seeded Gaussian vectors.  Floats only choose the samples; each direction
    is rounded to a rational vector, which is all the exact marches need.
    """
    rng = random.Random(seed)
    out = []
    if n == 3:
        twist = rng.random() * 2 * math.pi
        golden = math.pi * (3 - math.sqrt(5))
        for i in range(count):
            z = 1 - (2 * i + 1) / count
            r = math.sqrt(max(0.0, 1 - z * z))
            phi = twist + golden * i
            out.append(_rationalize((r * math.cos(phi), r * math.sin(phi), z)))
    else:
        while len(out) < count:
            g = [rng.gauss(0, 1) for _ in range(n)]
            norm = math.sqrt(sum(x * x for x in g))
            if norm < 1e-9:
                continue
            out.append(_rationalize([x / norm for x in g]))
    return out


def _rationalize(xs, den: int = 1000) -> Vec:
    v = tuple(Fraction(x).limit_denominator(den) for x in xs)
    if all(x == 0 for x in v):
        v = (Fraction(1),) + v[1:]
    return tuple(mpq(x.numerator, x.denominator) for x in v)


def classify_point_nd(s: PrismScene, y, samples: int = 256, seed: int = 0,
                      budget: Optional[int] = None, home: Optional[Solid] = None) -> NdClassification:
    """Exact membership, certified freedom via slices, else sampled evidence."""
    y = vec(y)
    m = scene_n_contains(s, y)
    if m is NdStatus.IN_E or m is NdStatus.ON_BOUNDARY:
        return NdClassification(m)
    line = escape_via_slice(s, y)
    if line is not None:
        return NdClassification(NdStatus.CERTIFIED_FREE, line=line)
    witnesses = []
    for d in sphere_directions(s.dim, samples, seed):
        try:
            w = blocked_witness(s, y, d, budget=budget, home=home)
        except Inconclusive as exc:
            return NdClassification(NdStatus.INCONCLUSIVE, witnesses=witnesses,
                                    samples=len(witnesses), detail=str(exc))
        if w is None:
            if not s.lazy and ray_misses(s, y, d):
                return NdClassification(NdStatus.ESCAPE_RAY, ray=d, witnesses=witnesses,
                                        samples=len(witnesses))
            return NdClassification(NdStatus.INCONCLUSIVE, witnesses=witnesses,
                                    samples=len(witnesses), detail=f"no hit along {_fmt_vec(d)}")
        witnesses.append(w)
    return NdClassification(NdStatus.EVIDENCE_TRAPPED, witnesses=witnesses, samples=len(witnesses))


def classify_product(s: PrismScene, y, samples: int = 64, seed: int = 0) -> NdClassification:
    """Classification for product scenes; slices recurse down to the planar engine."""
    if s.dim < 4:
        raise ValueError("product scenes have dimension at least 4")
    return classify_point_nd(s, y, samples=samples, seed=seed)
