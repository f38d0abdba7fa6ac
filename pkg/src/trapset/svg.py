"""SVG pictures of labelled regions.  Decimals here are for viewing only."""

from __future__ import annotations

from typing import Optional

from .geometry import AABB
from .scene import Scene2, scene_boundary_fragments
from .trap2d import RegionCells, Status

COLORS = {
    Status.IN_E: "#9ecae1",
    Status.TRAPPED_BOTH: "#de2d26",
    Status.TRAPPED_LINES_ONLY: "#fdae6b",
    Status.FREE: "#f7f7f7",
}

LEGEND = (
    (Status.IN_E, "InE"),
    (Status.TRAPPED_BOTH, "TrappedBoth"),
    (Status.TRAPPED_LINES_ONLY, "TrappedLinesOnly"),
    (Status.FREE, "Free"),
)


def _num(x) -> str:
    return format(float(x), ".12g")


def render_svg(region: Optional[RegionCells], scene: Optional[Scene2] = None,
               bbox: Optional[AABB] = None, width: int = 600) -> str:
    """One path per cell in cell order, the boundary of E stroked, a legend on the right."""
    if scene is None and region is not None:
        scene = region.scene
    if bbox is None:
        bbox = scene.bbox if scene is not None else AABB.around([(-1, -1), (1, 1)])
    w = bbox.max.x - bbox.min.x
    h = bbox.max.y - bbox.min.y
    scale = width / w
    height = h * scale
    legend_w = 170

    def xy(p) -> str:
        return f"{_num((p[0] - bbox.min.x) * scale)},{_num((bbox.max.y - p[1]) * scale)}"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width + legend_w}" '
        f'height="{_num(height)}" viewBox="0 0 {width + legend_w} {_num(height)}">',
        f'<rect x="0" y="0" width="{width}" height="{_num(height)}" fill="none" stroke="#000" stroke-width="1"/>',
    ]
    if region is not None:
        out.append('<g id="cells" stroke="none">')
        for cell, label in zip(region.cells, region.labels):
            d = "M" + " L".join(xy(v) for v in cell.vertices) + " Z"
            out.append(f'<path d="{d}" fill="{COLORS[label]}" data-label="{label.value}"/>')
        out.append("</g>")
    if scene is not None and scene.polys:
        out.append('<g id="boundary" stroke="#000" stroke-width="1.5" fill="none">')
        for f in scene_boundary_fragments(scene):
            if f.is_point:
                continue
            out.append(f'<path d="M{xy(f.start)} L{xy(f.end)}"/>')
        out.append("</g>")
    out.append(f'<g id="legend" font-family="sans-serif" font-size="13" transform="translate({width + 10},10)">')
    for i, (status, name) in enumerate(LEGEND):
        y = i * 22
        out.append(f'<rect x="0" y="{y}" width="16" height="16" fill="{COLORS[status]}" stroke="#000"/>')
        out.append(f'<text x="22" y="{y + 13}">{name}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
