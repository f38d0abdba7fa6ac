"""Unions of open arcs on the circle of directions.

Directions are handled through their exact pseudo-angle in [0, 4) (see
:func:`trapset.geometry.pseudo_angle`), which turns the circle into a cyclic
interval of rationals while keeping the cyclic order of the true angle.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple, Optional

from gmpy2 import mpq

from .geometry import Dir2, GeometryError, cross, dir_from_pseudo_angle, pseudo_angle

_FOUR = mpq(4)

# Tried in this order when an escape representative may be an axis direction.
AXIS_DIRECTIONS = (
    Dir2(1, 0), Dir2(0, 1), Dir2(-1, 0), Dir2(0, -1),
    Dir2(1, 1), Dir2(-1, 1), Dir2(-1, -1), Dir2(1, -1),
)


def _in_open(theta, s, e) -> bool:
    """theta strictly inside the ccw open arc from s to e (s == e: all but s)."""
    if s < e:
        return s < theta < e
    if s > e:
        return theta > s or theta < e
    return theta != s


def _in_closed(theta, s, e) -> bool:
    if s <= e:
        return s <= theta <= e
    return theta >= s or theta <= e


class Arc(NamedTuple):
    """Open arc swept counterclockwise from ``start`` to ``end``."""

    start: Dir2
    end: Dir2

    def contains(self, d: Dir2) -> bool:
        return _in_open(pseudo_angle(d), pseudo_angle(self.start), pseudo_angle(self.end))


class ArcSet:
    """Normalized finite union of open arcs, or the full circle.

    Arcs are kept sorted by start and pairwise disjoint.  Two arcs may share an
    endpoint: the shared direction itself is then outside the union, which is
    exactly what a union of open arcs can produce.
    """

    __slots__ = ("full", "_arcs")

    def __init__(self, arcs: Iterable = (), full: bool = False):
        # ``arcs`` are (start, end) pseudo-angle pairs; use the constructors.
        self.full = full
        self._arcs = () if full else _normalize(list(arcs))
        if self._arcs is None:
            self.full = True
            self._arcs = ()

    @classmethod
    def empty(cls) -> "ArcSet":
        return cls()

    @classmethod
    def full_circle(cls) -> "ArcSet":
        return cls(full=True)

    @classmethod
    def from_arc(cls, start: Dir2, end: Dir2) -> "ArcSet":
        s, e = pseudo_angle(start), pseudo_angle(end)
        if s == e:
            raise GeometryError("an arc needs distinct endpoints")
        return cls([(s, e)])

    @classmethod
    def from_arcs(cls, arcs: Iterable[Arc]) -> "ArcSet":
        pairs = []
        for a in arcs:
            s, e = pseudo_angle(a.start), pseudo_angle(a.end)
            if s == e:
                raise GeometryError("an arc needs distinct endpoints")
            pairs.append((s, e))
        return cls(pairs)

    @property
    def arcs(self) -> list[Arc]:
        return [Arc(dir_from_pseudo_angle(s), dir_from_pseudo_angle(e)) for s, e in self._arcs]

    @property
    def pseudo_arcs(self) -> tuple:
        return self._arcs

    def is_full(self) -> bool:
        return self.full

    def is_empty(self) -> bool:
        return not self.full and not self._arcs

    def contains(self, d: Dir2) -> bool:
        if self.full:
            return True
        theta = pseudo_angle(d)
        return any(_in_open(theta, s, e) for s, e in self._arcs)

    __contains__ = contains

    def contains_pseudo(self, theta) -> bool:
        if self.full:
            return True
        return any(_in_open(theta, s, e) for s, e in self._arcs)

    def union(self, other: "ArcSet") -> "ArcSet":
        if self.full or other.full:
            return ArcSet.full_circle()
        if not other._arcs:
            return self
        if not self._arcs:
            return other
        return ArcSet(self._arcs + other._arcs)

    __or__ = union

    def antipodal(self) -> "ArcSet":
        if self.full:
            return self
        return ArcSet([((s + 2) % _FOUR, (e + 2) % _FOUR) for s, e in self._arcs])

    def symmetrized(self) -> "ArcSet":
        return self.union(self.antipodal())

    def complement_components(self) -> list[tuple[Dir2, Dir2]]:
        """Closed complement arcs as (from, to) pairs, ccw; from == to is a point.

        For the empty set the whole circle is reported as ((1,0), (1,0)) with
        ``is_whole`` semantics handled by :meth:`complement_representative`.
        """
        return [(dir_from_pseudo_angle(u), dir_from_pseudo_angle(v))
                for u, v in self._complement_pseudo()]

    def _complement_pseudo(self):
        if self.full:
            return []
        arcs = self._arcs
        if not arcs:
            return []
        out = []
        n = len(arcs)
        for i in range(n):
            _, e = arcs[i]
            s_next, _ = arcs[(i + 1) % n]
            out.append((e, s_next))
        return out

    def complement_representative(self) -> Optional[Dir2]:
        """A direction outside the set, or ``None`` when the set is full.

        Preference order: an axis or diagonal direction strictly inside a
        complement arc; then the sum of the endpoints of the first
        non-degenerate complement arc; then an isolated complement direction.
        """
        if self.full:
            return None
        if not self._arcs:
            return AXIS_DIRECTIONS[0]
        comps = self._complement_pseudo()
        for axis in AXIS_DIRECTIONS:
            theta = pseudo_angle(axis)
            for u, v in comps:
                if u != v and _in_open(theta, u, v):
                    return axis
        for u, v in comps:
            if u != v:
                du, dv = dir_from_pseudo_angle(u), dir_from_pseudo_angle(v)
                # without an axis inside, the arc spans less than a quarter turn
                if cross(du.dx, du.dy, dv.dx, dv.dy) <= 0:
                    raise AssertionError("wide complement arc without an axis direction")
                return Dir2.of(du.dx + dv.dx, du.dy + dv.dy)
        return dir_from_pseudo_angle(comps[0][0])

    def __eq__(self, other) -> bool:
        if not isinstance(other, ArcSet):
            return NotImplemented
        return self.full == other.full and self._arcs == other._arcs

    def __hash__(self) -> int:
        return hash((self.full, self._arcs))

    def __repr__(self) -> str:
        if self.full:
            return "ArcSet(FULL)"
        return "ArcSet([" + ", ".join(f"({a.start}->{a.end})" for a in self.arcs) + "])"


def _normalize(pairs: list):
    """Canonical sorted disjoint arcs, or ``None`` for the full circle."""
    pairs = [(mpq(s) % _FOUR, mpq(e) % _FOUR) for s, e in pairs]
    if not pairs:
        return ()
    points = sorted({p for pair in pairs for p in pair})
    m = len(points)

    def covered(theta) -> bool:
        return any(_in_open(theta, s, e) for s, e in pairs)

    point_cov = [covered(p) for p in points]
    gap_cov = []
    for i in range(m):
        a = points[i]
        b = points[(i + 1) % m] if i + 1 < m else points[0] + _FOUR
        gap_cov.append(covered(((a + b) / 2) % _FOUR))
    if all(point_cov) and all(gap_cov):
        return None
    start = next(i for i in range(m) if not point_cov[i])
    arcs = []
    run_start = start
    run_ok = True
    i = start
    while True:
        if not gap_cov[i]:
            run_ok = False
        j = (i + 1) % m
        if not point_cov[j]:
            if run_ok:
                arcs.append((points[run_start], points[j]))
            run_start = j
            run_ok = True
        i = j
        if i == start:
            break
    arcs.sort()
    return tuple(arcs)


def arcset_union(a: ArcSet, b: ArcSet) -> ArcSet:
    return a.union(b)


def arcset_is_full(a: ArcSet) -> bool:
    return a.is_full()


def arcset_complement_representative(a: ArcSet) -> Optional[Dir2]:
    return a.complement_representative()


def antipodal_symmetrize(a: ArcSet) -> ArcSet:
    return a.symmetrized()
