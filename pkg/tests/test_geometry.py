import math
from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from strategies import convex_polys, nonzero_vectors, points
from trapset.geometry import (
    AABB,
    ConvexPoly,
    Dir2,
    GeometryError,
    Location,
    Point2,
    Q,
    clip_halfplane,
    convex_hull,
    dir_cmp,
    dir_from_pseudo_angle,
    format_q,
    line_coefficients,
    line_intersection,
    linf_dist_point_poly,
    linf_dist_point_segment,
    polygon_area,
    polys_interiors_intersect,
    pseudo_angle,
    ray_hits_poly_interior,
    Ray2,
)

UNIT = ConvexPoly([(0, 0), (1, 0), (1, 1), (0, 1)])


class TestRationals:
    def test_conversions(self):
        assert Q("3/4") == mpq(3, 4)
        assert Q(" -2 ") == -2
        assert Q(Fraction(1, 3)) == mpq(1, 3)
        assert Q(7) == 7

    @pytest.mark.parametrize("bad", [0.5, True, None, [1]])
    def test_rejects_non_rationals(self, bad):
        with pytest.raises(TypeError):
            Q(bad)

    def test_zero_denominator(self):
        with pytest.raises(GeometryError):
            Q("1/0")

    def test_format(self):
        assert format_q(mpq(6, -4)) == "-3/2"
        assert format_q(mpq(8, 4)) == "2"

    @given(st.integers(-10**6, 10**6), st.integers(1, 10**6))
    def test_format_round_trip(self, p, q):
        assert Q(format_q(mpq(p, q))) == mpq(p, q)


class TestDirections:
    def test_positive_scaling_only(self):
        assert Dir2.of(2, 4) == Dir2(1, 2)
        assert Dir2.of(-2, -4) == Dir2(-1, -2)
        assert Dir2.of(mpq(1, 2), mpq(1, 3)) == Dir2(3, 2)
        assert -Dir2(1, 2) == Dir2(-1, -2)

    def test_zero_vector(self):
        with pytest.raises(GeometryError):
            Dir2.of(0, 0)

    def test_axis_values(self):
        assert [pseudo_angle(d) for d in [(1, 0), (0, 1), (-1, 0), (0, -1)]] == [0, 1, 2, 3]
        assert pseudo_angle((1, 1)) == mpq(1, 2)

    @given(nonzero_vectors)
    def test_pseudo_angle_bijection(self, v):
        d = Dir2.of(*v)
        p = pseudo_angle(d)
        assert 0 <= p < 4
        assert dir_from_pseudo_angle(p) == d

    @given(nonzero_vectors, nonzero_vectors)
    def test_order_matches_polar_angle(self, u, v):
        # float oracle on small integer vectors, where atan2 is reliable
        au = math.atan2(u[1], u[0]) % (2 * math.pi)
        av = math.atan2(v[1], v[0]) % (2 * math.pi)
        expected = 0 if Dir2.of(*u) == Dir2.of(*v) else (1 if au > av else -1)
        assert dir_cmp(Dir2.of(*u), Dir2.of(*v)) == expected


class TestLines:
    def test_canonical_coefficients(self):
        assert line_coefficients((0, 0), (2, 2)) == line_coefficients((5, 5), (-1, -1)) == (1, -1, 0)
        assert line_coefficients((0, 1), (3, 1)) == (0, 1, -1)

    @given(points, points)
    def test_coefficients_vanish_on_points(self, p, q):
        if p == q:
            with pytest.raises(GeometryError):
                line_coefficients(p, q)
            return
        a, b, c = line_coefficients(p, q)
        assert a * p[0] + b * p[1] + c == 0 == a * q[0] + b * q[1] + c
        assert math.gcd(math.gcd(a, b), c) == 1

    def test_intersection(self):
        assert line_intersection((0, 0), (1, 1), (0, 2), (1, -1)) == Point2(1, 1)
        assert line_intersection((0, 0), (1, 1), (0, 2), (2, 2)) is None


class TestConvexPoly:
    @pytest.mark.parametrize("verts", [
        [(0, 0), (1, 0)],
        [(0, 0), (1, 0), (2, 0)],
        [(0, 0), (0, 1), (1, 0)],  # clockwise
        [(0, 0), (1, 0), (1, 0), (0, 1)],
    ])
    def test_rejects_invalid(self, verts):
        with pytest.raises(GeometryError):
            ConvexPoly(verts)

    def test_rejects_star(self):
        star = [(math.cos(4 * math.pi * k / 5), math.sin(4 * math.pi * k / 5)) for k in range(5)]
        star = [(Fraction(x).limit_denominator(100), Fraction(y).limit_denominator(100)) for x, y in star]
        with pytest.raises(GeometryError):
            ConvexPoly(star)

    def test_locate(self):
        assert UNIT.locate((mpq(1, 2), mpq(1, 2))) is Location.INTERIOR
        assert UNIT.locate((1, mpq(1, 2))) is Location.BOUNDARY
        assert UNIT.locate((0, 0)) is Location.BOUNDARY
        assert UNIT.locate((2, 0)) is Location.OUTSIDE
        assert not UNIT.contains((1, mpq(1, 2)))

    def test_area_centroid_equality(self):
        assert UNIT.area() == 1
        assert UNIT.centroid() == Point2(mpq(1, 2), mpq(1, 2))
        assert UNIT == ConvexPoly([(1, 1), (0, 1), (0, 0), (1, 0)])
        assert hash(UNIT) == hash(ConvexPoly([(1, 0), (1, 1), (0, 1), (0, 0)]))

    @given(convex_polys(), points, nonzero_vectors, st.integers(-200, 200))
    def test_line_interval_oracle(self, q, o, d, k):
        t = mpq(k, 8)
        p = (o[0] + t * d[0], o[1] + t * d[1])
        iv = q.line_interval(o, d)
        inside = q.contains(p)
        if iv is None:
            assert not inside
        else:
            lo, hi = iv
            in_window = (lo is None or lo < t) and (hi is None or t < hi)
            assert in_window == inside

    @given(convex_polys(), st.integers(-5, 5), st.integers(-5, 5), st.integers(-20, 20))
    def test_clip_preserves_area(self, q, a, b, c):
        if a == 0 and b == 0:
            return
        neg, pos = clip_halfplane(q.vertices, a, b, c)
        total = sum(polygon_area(part) for part in (neg, pos) if len(part) >= 3)
        assert total == q.area()
        assert all(a * v[0] + b * v[1] + c <= 0 for v in neg)
        assert all(a * v[0] + b * v[1] + c >= 0 for v in pos)

    @given(st.lists(points, min_size=3, max_size=12))
    def test_hull_contains_points(self, pts):
        try:
            h = convex_hull(pts)
        except GeometryError:
            return
        assert all(h.locate(p) is not Location.OUTSIDE for p in pts)
        assert set(h.vertices) <= {Point2(*p) for p in pts}

    def test_translated(self):
        assert UNIT.translated(1, 2).vertices[0] == Point2(1, 2)


class TestDistances:
    @given(points, points, points)
    def test_linf_segment_oracle(self, p, a, b):
        d = linf_dist_point_segment(p, a, b)
        # dense sampling can only find distances >= the exact minimum
        samples = [max(abs(a[0] + mpq(k, 64) * (b[0] - a[0]) - p[0]),
                       abs(a[1] + mpq(k, 64) * (b[1] - a[1]) - p[1])) for k in range(65)]
        assert d <= min(samples)
        assert min(samples) - d <= max(abs(b[0] - a[0]), abs(b[1] - a[1])) / 64

    def test_linf_poly(self):
        assert linf_dist_point_poly((3, mpq(1, 2)), UNIT) == 2
        assert linf_dist_point_poly((mpq(1, 2), mpq(1, 2)), UNIT) == 0


def test_interiors_intersect():
    assert polys_interiors_intersect(UNIT, UNIT.translated(mpq(1, 2), 0))
    assert not polys_interiors_intersect(UNIT, UNIT.translated(1, 0))  # shared edge only
    assert not polys_interiors_intersect(UNIT, UNIT.translated(1, 1))


def test_ray_hits():
    assert ray_hits_poly_interior(Ray2(Point2(-1, mpq(1, 2)), Dir2(1, 0)), UNIT)
    assert not ray_hits_poly_interior(Ray2(Point2(-1, mpq(1, 2)), Dir2(-1, 0)), UNIT)
    assert not ray_hits_poly_interior(Ray2(Point2(-1, 0), Dir2(1, 0)), UNIT)  # grazes an edge


def test_aabb():
    box = AABB.around([(0, 0), (2, 1)], 1)
    assert box.min == Point2(-1, -1) and box.max == Point2(3, 2)
    assert box.contains_strictly((0, 0)) and not box.contains_strictly((3, 0))
