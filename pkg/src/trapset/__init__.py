"""Exact trapped-set computations for finite unions of open convex polytopes."""

from .arcs import Arc, ArcSet
from .constructions import (
    CutScene,
    CutSceneSpec,
    SpatialConstruction,
    make_cut_scene_2d,
    make_E3_bounded,
    make_E3_stacked,
    make_En_product,
    make_generalized_polygon,
)
from .geometry import AABB, ConvexPoly, Dir2, Line2, Point2, Q, Ray2, format_q, pseudo_angle
from .io import DocumentError, SceneDocument
from .scene import Scene2, scene_components, scene_contains
from .trap2d import (
    Certificate,
    Classification,
    NotTrapped,
    RegionCells,
    Status,
    blocked_arcs,
    certify_trap_radius,
    classify_point,
    escape_ray_collection,
    region_components,
    trap_region,
    weakly_convex,
    weakly_semiconvex,
)
from .trapnd import NdClassification, NdStatus, PrismScene, classify_point_nd

__all__ = [
    "AABB", "Arc", "ArcSet", "Certificate", "Classification", "ConvexPoly", "CutScene",
    "CutSceneSpec", "Dir2", "DocumentError", "Line2", "NdClassification", "NdStatus",
    "NotTrapped", "Point2", "PrismScene", "Q", "Ray2", "RegionCells", "Scene2",
    "SceneDocument", "SpatialConstruction", "Status", "blocked_arcs", "certify_trap_radius",
    "classify_point", "classify_point_nd", "escape_ray_collection", "format_q",
    "make_E3_bounded", "make_E3_stacked", "make_En_product", "make_cut_scene_2d",
    "make_generalized_polygon", "pseudo_angle", "region_components", "scene_components",
    "scene_contains", "trap_region", "weakly_convex", "weakly_semiconvex",
]
