"""Named construction families and their JSON descriptors."""

from __future__ import annotations

from typing import Optional

from .constructions import (
    DEFAULT_AXIS,
    DEFAULT_D,
    DEFAULT_P,
    STACKED_AXIS,
    CutSceneSpec,
    SpatialConstruction,
    make_cut_scene_2d,
    make_E3_bounded,
    make_E3_stacked,
    make_En_product,
    make_generalized_polygon,
    random_cut_spec,
)
from .geometry import ConvexPoly, format_q
from .io import DocumentError, SceneDocument, decode_point, decode_poly, encode_poly
from .scene import Scene2

FAMILIES = ("paper-e2", "random-e2", "generalized-polygon", "e3-bounded", "e3-stacked", "e4-product")

MODE_ALIASES = {"ray": "rays", "rays": "rays", "line": "lines", "lines": "lines", "none": "none"}


def _cut_descriptor(spec: CutSceneSpec) -> dict:
    return {"family": "cut-scene", "mode": spec.mode, "D": encode_poly(spec.D), "P": encode_poly(spec.P)}


def _spec_from(desc: dict, where: str) -> CutSceneSpec:
    try:
        mode = MODE_ALIASES[desc.get("mode", "lines")]
    except KeyError:
        raise DocumentError(f"{where}: unknown mode {desc.get('mode')!r}") from None
    D = decode_poly(desc.get("D"), f"{where}.D")
    P = decode_poly(desc.get("P"), f"{where}.P")
    try:
        return CutSceneSpec(D, P, mode)
    except ValueError as exc:
        raise DocumentError(f"{where}: {exc}") from exc


def generate(family: str, mode: str = "lines", seed: int = 0, k: int = 3) -> SceneDocument:
    """Build the document for a named family."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    if family in ("paper-e2", "random-e2"):
        m = MODE_ALIASES.get(mode)
        if m is None:
            raise ValueError(f"unknown mode {mode!r}")
        spec = CutSceneSpec(mode=m) if family == "paper-e2" else random_cut_spec(seed, m)
        cs = make_cut_scene_2d(spec, seed=seed)
        return SceneDocument(2, list(cs.scene.polys), _cut_descriptor(spec),
                             {"polygons": [encode_poly(spec.P)]}, seed)
    if family == "generalized-polygon":
        q = make_generalized_polygon(k)
        return SceneDocument(2, [q], {"family": "generalized-polygon", "k": k}, None, seed)
    base = _cut_descriptor(CutSceneSpec(mode="lines"))
    if family == "e3-bounded":
        desc = {"family": "e3-bounded", "axis": [format_q(c) for c in DEFAULT_AXIS], "base": base}
        return SceneDocument(3, [], desc, {"prisms": "P-up u P-down"}, seed)
    if family == "e3-stacked":
        desc = {"family": "e3-stacked", "axis": [format_q(c) for c in STACKED_AXIS], "base": base}
        return SceneDocument(3, [], desc, {"prisms": "union of floor prisms over P"}, seed)
    desc = {"family": "product", "n": 4,
            "inner": {"family": "e3-bounded", "axis": [format_q(c) for c in DEFAULT_AXIS], "base": base}}
    return SceneDocument(4, [], desc, {"prisms": "(P-up u P-down) x (-1,1)"}, seed)


def scene_of(doc: SceneDocument):
    """A Scene2 for planar documents, a SpatialConstruction otherwise."""
    if doc.dim == 2:
        return Scene2(doc.polygons)
    return construction_of(doc.construction, doc.dim, "construction")


def construction_of(desc: Optional[dict], dim: int, where: str) -> SpatialConstruction:
    if desc is None:
        raise DocumentError(f"{where}: missing descriptor")
    fam = desc.get("family")
    try:
        if fam in ("e3-bounded", "e3-stacked"):
            if dim != 3:
                raise DocumentError(f"{where}: {fam} is three-dimensional, document says {dim}")
            axis = decode_point(desc.get("axis"), 3, f"{where}.axis")
            base = make_cut_scene_2d(_spec_from(desc.get("base") or {}, f"{where}.base"))
            make = make_E3_bounded if fam == "e3-bounded" else make_E3_stacked
            return make(base, axis)
        if fam == "product":
            n = desc.get("n")
            if n != dim:
                raise DocumentError(f"{where}: product n={n!r} but document dim={dim}")
            inner = construction_of(desc.get("inner"), 3, f"{where}.inner")
            return make_En_product(inner, n)
    except ValueError as exc:
        if isinstance(exc, DocumentError):
            raise
        raise DocumentError(f"{where}: {exc}") from exc
    raise DocumentError(f"{where}: unknown family {fam!r}")


def predicted_polygons(doc: SceneDocument) -> list[ConvexPoly]:
    block = doc.predicted_trap or {}
    return [decode_poly(q, f"predicted_trap.polygons[{i}]") for i, q in enumerate(block.get("polygons", []))]


__all__ = ["FAMILIES", "generate", "scene_of", "construction_of", "predicted_polygons",
           "DEFAULT_D", "DEFAULT_P"]
