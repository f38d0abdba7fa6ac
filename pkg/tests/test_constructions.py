import random

import pytest
from gmpy2 import mpq

from trapset.constructions import (
    DEFAULT_AXIS,
    DEFAULT_D,
    DEFAULT_P,
    STACKED_AXIS,
    ConstructionError,
    CutSceneSpec,
    make_cut_scene_2d,
    make_E3_bounded,
    make_En_product,
    make_generalized_polygon,
    no_ray_condition,
    random_cut_spec,
    random_point,
    side_lines,
    validate_cover,
)
from trapset.geometry import ConvexPoly, Location, Point2, orient
from trapset.scene import Membership, Scene2, scene_components, scene_contains
from trapset.trap2d import LINE_TRAPPED, RAY_TRAPPED, Status, region_components, trap_region


def grid_components(cs, step=mpq(1, 8)):
    """Flood fill over grid points of E; neighbours join when one piece holds both.

    A convex piece holding both endpoints holds the whole segment, so every
    join is a genuine path in E; a fine grid finds all of them for this family.
    """
    box = cs.spec.D.bounds()
    nx = int((box.max.x - box.min.x) / step)
    ny = int((box.max.y - box.min.y) / step)
    pieces = cs.scene.polys
    nodes = {}
    for i in range(nx + 1):
        for j in range(ny + 1):
            p = Point2(box.min.x + i * step, box.min.y + j * step)
            owners = frozenset(k for k, q in enumerate(pieces) if q.contains(p))
            if owners:
                nodes[(i, j)] = owners
    seen = set()
    count = 0
    for start in nodes:
        if start in seen:
            continue
        count += 1
        stack = [start]
        seen.add(start)
        while stack:
            i, j = stack.pop()
            for nb in ((i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)):
                if nb in nodes and nb not in seen and nodes[nb] & nodes[(i, j)]:
                    seen.add(nb)
                    stack.append(nb)
    return count


class TestSpec:
    def test_bad_mode(self):
        with pytest.raises(ConstructionError):
            CutSceneSpec(mode="zigzag")

    def test_P_must_sit_inside_D(self):
        with pytest.raises(ConstructionError):
            CutSceneSpec(D=DEFAULT_P, P=DEFAULT_D)

    def test_defaults(self):
        assert DEFAULT_D.area() == 64
        assert DEFAULT_P.area() == 6


@pytest.mark.parametrize("mode,expected", [("lines", 6), ("rays", 3), ("none", 1)])
def test_component_counts(mode, expected, base_lines, base_rays, base_none):
    cs = {"lines": base_lines, "rays": base_rays, "none": base_none}[mode]
    assert len(scene_components(cs.scene)) == expected
    assert grid_components(cs) == expected


@pytest.mark.parametrize("mode", ["lines", "rays", "none"])
def test_cover_matches_set_formula(mode, base_lines, base_rays, base_none):
    cs = {"lines": base_lines, "rays": base_rays, "none": base_none}[mode]
    assert validate_cover(cs, samples=3000, seed=99) is None


def test_removed_rays_start_at_vertices(base_rays):
    spec = base_rays.spec
    for a, b in side_lines(spec.P):
        d = (b[0] - a[0], b[1] - a[1])
        head_side = Point2(b[0] + d[0] / 4, b[1] + d[1] / 4)
        tail_side = Point2(a[0] - d[0] / 4, a[1] - d[1] / 4)
        assert base_rays.removed(head_side) and scene_contains(base_rays.scene, head_side) is not Membership.IN_E
        # the tail extension is only removed if another side's ray covers it
        if not any(orient(c, e, tail_side) == 0 and (c, e) != (a, b) for c, e in side_lines(spec.P)):
            assert not base_rays.removed(tail_side)
            assert scene_contains(base_rays.scene, tail_side) is Membership.IN_E


def test_lines_mode_removes_full_side_lines(base_lines):
    for a, b in side_lines(base_lines.spec.P):
        d = (b[0] - a[0], b[1] - a[1])
        for t in (mpq(-1, 2), mpq(1, 2), mpq(3, 2)):
            p = Point2(a[0] + t * d[0], a[1] + t * d[1])
            assert scene_contains(base_lines.scene, p) is not Membership.IN_E


def test_glue_adds_no_vertices(base_lines):
    chunk_verts = {v for q in base_lines.chunks for v in q.vertices}
    glue_verts = {v for q in base_lines.glue for v in q.vertices}
    assert glue_verts <= chunk_verts


@pytest.mark.parametrize("seed,mode,sides", [(3, "rays", 3), (4, "lines", 3), (5, "rays", 4)])
def test_random_scenes(seed, mode, sides):
    spec = random_cut_spec(seed, mode, sides)
    cs = make_cut_scene_2d(spec, seed=seed)
    rc = trap_region(cs.scene)
    assert rc.area(RAY_TRAPPED) == spec.P.area()
    assert rc.area(LINE_TRAPPED) == spec.P.area()
    assert rc.area([Status.IN_E]) == spec.D.area() - spec.P.area()
    comps = region_components(rc, LINE_TRAPPED)
    assert all(c.convex for c in comps)
    assert len(scene_components(cs.scene)) >= 3


def test_random_spec_is_deterministic():
    assert random_cut_spec(8, "rays") == random_cut_spec(8, "rays")
    assert random_cut_spec(8, "rays").mode == "rays"


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_generalized_polygon(k):
    q = make_generalized_polygon(k)
    assert len(q) == 2 * k + 2
    for v in q.vertices:
        assert v.x * v.x + v.y * v.y == 1  # exactly on the unit circle
    with pytest.raises(ConstructionError):
        make_generalized_polygon(0)


def test_two_copies_give_two_convex_components(base_lines):
    # planar picture of a mid-slice: two disjoint translated copies of the family
    shift = 12
    polys = list(base_lines.scene.polys) + [q.translated(shift, 0) for q in base_lines.scene.polys]
    s = Scene2(polys)
    rc = trap_region(s)
    comps = region_components(rc, LINE_TRAPPED)
    assert len(comps) == 2
    assert all(c.convex and c.area == 6 for c in comps)
    # brute force: sampled trapped points split by the gap between the copies
    rng = random.Random(1)
    for _ in range(200):
        p = random_point(rng, s.bbox.min, s.bbox.max)
        lab = rc.label_at(p)
        if lab in LINE_TRAPPED:
            assert DEFAULT_P.contains(p) or DEFAULT_P.translated(shift, 0).contains(p)


class TestSpatial:
    def test_axes(self):
        assert not no_ray_condition(DEFAULT_P, DEFAULT_AXIS)  # P meets P + (2, 0)
        assert no_ray_condition(DEFAULT_P, STACKED_AXIS)
        assert not no_ray_condition(DEFAULT_P, (0, 0, 2))  # parallel axes

    def test_bounded_structure(self, e3):
        # an up and a down prism per planar piece, plus two caps
        assert len(e3.scene.solids) == 2 * len(e3.base.scene.polys) + 2
        up, down = e3.predicted
        assert up.volume() == down.volume() == 12
        assert e3.in_predicted((mpq(1, 2), 0, mpq(1, 2)))
        assert not e3.in_predicted((10, 0, 0))

    def test_bad_axis(self):
        with pytest.raises((ConstructionError, ValueError)):
            make_E3_bounded(axis=(1, 0, 0))

    def test_product_requires_bounded_inner(self, e3_stacked):
        with pytest.raises(ConstructionError):
            make_En_product(e3_stacked, 4)
        with pytest.raises(ConstructionError):
            make_En_product(None, 3)

    def test_product_five(self, e3):
        e5 = make_En_product(e3, 5)
        assert e5.scene.dim == 5
        assert e5.in_predicted((mpq(1, 2), 0, mpq(1, 2), 0, 0))
