import random
from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from strategies import convex_polys, points
from trapset.arcs import Arc
from trapset.constructions import random_point, random_point_in
from trapset.geometry import ConvexPoly, Dir2, Line2, Location, Point2, Ray2, dir_from_pseudo_angle
from trapset.scene import Scene2, line_hits_scene, ray_hits_scene
from trapset.trap2d import (
    LINE_TRAPPED,
    RAY_TRAPPED,
    NotTrapped,
    Status,
    blocked_arcs,
    certify_trap_radius,
    classify_point,
    escape_ray_collection,
    region_components,
    simplest_between,
    trap_region,
    weakly_convex,
    weakly_semiconvex,
)

SQUARE = ConvexPoly([(-1, 0), (1, 0), (1, 2), (-1, 2)])


def box(x0, y0, x1, y1):
    return ConvexPoly([(x0, y0), (x1, y0), (x1, y1), (x0, y1)])


# a cup open to the right: every line through the origin meets it, the ray (1,0) does not
CUP = Scene2([box(-3, -3, 3, -2), box(-3, 2, 3, 3), box(-3, -3, -2, 3)])

# fine direction sample used as a brute-force oracle
ORACLE_DIRS = [dir_from_pseudo_angle(mpq(k, 257)) for k in range(4 * 257)]


class TestBlockedArcs:
    def test_external_point(self):
        arcs = blocked_arcs(Scene2([SQUARE]), (0, -1))
        assert arcs.arcs == [Arc(Dir2(1, 1), Dir2(-1, 1))]

    def test_edge_point(self):
        arcs = blocked_arcs(Scene2([SQUARE]), (0, 0))
        assert arcs.pseudo_arcs == ((0, 2),)

    def test_vertex_point(self):
        arcs = blocked_arcs(Scene2([SQUARE]), (-1, 0))
        assert arcs.pseudo_arcs == ((0, 1),)

    def test_inside(self):
        assert blocked_arcs(Scene2([SQUARE]), (0, 1)).is_full()

    @given(st.lists(convex_polys(), min_size=1, max_size=3), points)
    def test_ray_oracle(self, polys, y):
        s = Scene2(polys)
        arcs = blocked_arcs(s, y)
        for d in ORACLE_DIRS[::7]:
            assert arcs.contains(d) == ray_hits_scene(s, Ray2(Point2(*y), d))


class TestClassify:
    def test_base_center(self, base_lines):
        assert classify_point(base_lines.scene, (0, 0)).status is Status.TRAPPED_BOTH

    def test_far_point_free(self, base_lines):
        c = classify_point(base_lines.scene, (100, 100))
        assert c.status is Status.FREE
        assert not line_hits_scene(base_lines.scene, Line2(Point2(100, 100), c.witness))

    def test_single_poly_free(self):
        c = classify_point(Scene2([SQUARE]), (0, -1))
        assert c.status is Status.FREE

    def test_empty_scene(self):
        c = classify_point(Scene2([]), (0, 0))
        assert str(c) == "Free (1,0)"

    def test_membership_statuses(self):
        s = Scene2([SQUARE])
        assert classify_point(s, (0, 1)).status is Status.IN_E
        assert classify_point(s, (1, 1)).status is Status.ON_BOUNDARY

    def test_lines_only(self):
        c = classify_point(CUP, (0, 0))
        assert c.status is Status.TRAPPED_LINES_ONLY
        assert not ray_hits_scene(CUP, Ray2(Point2(0, 0), c.witness))
        # oracle: every sampled line meets the cup
        assert all(line_hits_scene(CUP, Line2(Point2(0, 0), d)) for d in ORACLE_DIRS[::5])

    @given(st.lists(convex_polys(), min_size=1, max_size=4), points)
    def test_witnesses_and_monotonicity(self, polys, y):
        s = Scene2(polys)
        c = classify_point(s, y)
        y = Point2(*y)
        if c.status is Status.FREE:
            assert not line_hits_scene(s, Line2(y, c.witness))
        elif c.status is Status.TRAPPED_LINES_ONLY:
            assert not ray_hits_scene(s, Ray2(y, c.witness))
        elif c.status is Status.TRAPPED_BOTH:
            # a ray-trapped point is line-trapped too
            assert blocked_arcs(s, y).symmetrized().is_full()
            assert all(ray_hits_scene(s, Ray2(y, d)) for d in ORACLE_DIRS[::11])


class TestRegion:
    def test_base_lines(self, base_lines, region_lines):
        P = base_lines.spec.P
        assert region_lines.area(RAY_TRAPPED) == P.area() == 6
        assert region_lines.area(LINE_TRAPPED) == 6
        for cell, lab in zip(region_lines.cells, region_lines.labels):
            assert (lab is Status.TRAPPED_BOTH) == P.contains(cell.centroid())

    def test_base_rays(self, base_rays, region_rays):
        assert region_rays.area(RAY_TRAPPED) == 6
        assert region_rays.area([Status.IN_E]) == 64 - 6

    def test_single_poly(self):
        rc = trap_region(Scene2([SQUARE]))
        assert not rc.indices(LINE_TRAPPED)
        assert region_components(rc, LINE_TRAPPED) == []

    def test_cells_partition_bbox(self, region_lines):
        box_area = region_lines.scene.bbox.as_poly().area()
        assert sum((c.area() for c in region_lines.cells), mpq(0)) == box_area

    def test_locate_matches_cells(self, region_lines):
        for i, cell in enumerate(region_lines.cells[:60]):
            assert region_lines.locate(cell.centroid()) == i

    def test_cell_constancy(self, base_rays, region_rays):
        rng = random.Random(7)
        s = base_rays.scene
        extra = 0
        for cell, lab in zip(region_rays.cells, region_rays.labels):
            pts = [cell.centroid()] + [random_point_in(rng, cell) for _ in range(4)]
            for p in pts:
                assert classify_point(s, p).status is lab
        while extra < 200:
            cell_id = rng.randrange(len(region_rays))
            p = random_point_in(rng, region_rays.cells[cell_id])
            assert classify_point(s, p).status is region_rays.labels[cell_id]
            extra += 1

    def test_oracle_equivalence(self, base_lines, region_lines):
        rng = random.Random(11)
        box = base_lines.scene.bbox
        for _ in range(300):
            p = random_point(rng, box.min, box.max)
            lab = region_lines.label_at(p)
            if lab is not None:
                assert classify_point(base_lines.scene, p).status is lab

    def test_components(self, region_lines):
        comps = region_components(region_lines, LINE_TRAPPED)
        assert len(comps) == 1
        assert comps[0].convex and comps[0].area == 6

    def test_cup_region(self):
        rc = trap_region(CUP)
        assert not rc.indices(RAY_TRAPPED)
        comps = region_components(rc, Status.TRAPPED_LINES_ONLY)
        assert comps and all(c.convex for c in comps)


class TestWeakConvexity:
    def test_base_rays(self, base_rays):
        assert weakly_semiconvex(base_rays.scene) == (True, None)
        ok, cex = weakly_convex(base_rays.scene)
        assert not ok and cex is not None

    def test_base_lines(self, base_lines):
        assert weakly_convex(base_lines.scene) == (True, None)

    def test_single_poly(self):
        assert weakly_convex(Scene2([SQUARE])) == (True, None)

    def test_no_cut_control(self, base_none):
        ok, cex = weakly_convex(base_none.scene)
        assert not ok
        assert base_none.spec.P.locate(cex) is Location.BOUNDARY
        # brute-force direction scan: every line through the counterexample meets E
        assert all(line_hits_scene(base_none.scene, Line2(cex, d)) for d in ORACLE_DIRS[::3])

    def test_no_cut_semiconvex_fails_too(self, base_none):
        ok, cex = weakly_semiconvex(base_none.scene)
        assert not ok


class TestCertificate:
    def test_base_center(self, base_lines):
        s = base_lines.scene
        cert = certify_trap_radius(s, (0, 0))
        assert cert.radius > 0 and cert.radius <= cert.clearance
        assert cert.check(s) == []
        r = cert.radius / 2
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                if dx or dy:
                    assert classify_point(s, (dx * r, dy * r)).status is Status.TRAPPED_BOTH

    def test_line_mode(self, base_rays):
        cert = certify_trap_radius(base_rays.scene, (mpq(1, 3), mpq(1, 5)), "line")
        assert cert.check(base_rays.scene) == []
        assert cert.covered().is_full()

    def test_lines_only_point(self):
        cert = certify_trap_radius(CUP, (0, 0), "line")
        assert cert.check(CUP) == []
        with pytest.raises(NotTrapped):
            certify_trap_radius(CUP, (0, 0), "ray")

    def test_not_trapped(self, base_lines):
        with pytest.raises(NotTrapped):
            certify_trap_radius(base_lines.scene, (100, 100))
        with pytest.raises(NotTrapped):
            certify_trap_radius(Scene2([SQUARE]), (0, 1))

    def test_tampered_certificate_detected(self, base_lines):
        s = base_lines.scene
        cert = certify_trap_radius(s, (0, 0))
        cert.radius = cert.clearance * 2
        assert "radius exceeds clearance" in cert.check(s)
        cert.witnesses = cert.witnesses[:1]
        assert any("cover" in p for p in cert.check(s))

    @given(st.integers(1, 3000), st.integers(1, 3000), st.integers(1, 3000))
    def test_near_vertex(self, a, b, c):
        # points close to the corners of P stay certifiable
        s_ = _BASE_SCENE
        w = a + b + c
        p = random_point_in(random.Random(a * b + c), _DEFAULT_P)
        y = Point2((p.x * w + 2 * a) / (w + a), (p.y * w - a) / (w + a))
        if _DEFAULT_P.contains(y):
            cert = certify_trap_radius(s_, y)
            assert cert.check(s_) == []


def _base():
    from trapset.constructions import CutSceneSpec, make_cut_scene_2d

    cs = make_cut_scene_2d(CutSceneSpec(mode="lines"))
    return cs.scene, cs.spec.P


_BASE_SCENE, _DEFAULT_P = _base()


@given(st.fractions(-50, 50, max_denominator=60), st.fractions(-50, 50, max_denominator=60))
def test_simplest_between(a, b):
    if a == b:
        return
    lo, hi = min(a, b), max(a, b)
    r = simplest_between(mpq(lo.numerator, lo.denominator), mpq(hi.numerator, hi.denominator))
    assert lo < Fraction(int(r.numerator), int(r.denominator)) < hi
    # no smaller denominator fits strictly between
    for q in range(1, int(r.denominator)):
        n = (lo.numerator * q) // lo.denominator + 1
        assert Fraction(n, q) >= hi


class TestEscapeCollection:
    def test_base_rays(self, base_rays, region_rays):
        rep = escape_ray_collection(base_rays.scene, region_rays, mode="ray")
        assert rep.ok and rep.samples
        assert all(not ray_hits_scene(base_rays.scene, w) for w in rep.witnesses)

    def test_base_lines(self, base_lines, region_lines):
        rep = escape_ray_collection(base_lines.scene, region_lines, mode="line")
        assert rep.ok and rep.samples
        assert all(isinstance(w, Line2) for w in rep.witnesses)

    def test_empty_region(self):
        s = Scene2([SQUARE])
        rep = escape_ray_collection(s, trap_region(s))
        assert rep.witnesses == [] and rep.ok
