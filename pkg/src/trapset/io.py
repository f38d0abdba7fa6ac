"""Scene documents: JSON with every rational written as a "p/q" string."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional

from .geometry import ConvexPoly, GeometryError, Q, format_q

VERSION = 1


class DocumentError(ValueError):
    """A scene document could not be parsed or validated."""


@dataclass
class SceneDocument:
    """Serialized scene.

    Planar scenes carry explicit polygons; spatial scenes carry a construction
    descriptor that is rebuilt on load.  ``predicted_trap`` is free-form but
    rational-valued (polygons or descriptors).
    """

    dim: int
    polygons: list[ConvexPoly] = field(default_factory=list)
    construction: Optional[dict] = None
    predicted_trap: Optional[dict] = None
    seed: Optional[int] = None
    version: int = VERSION

    def to_json(self) -> str:
        return dumps(self)


def encode_point(p) -> list[str]:
    return [format_q(c) for c in p]


def encode_poly(q: ConvexPoly) -> list[list[str]]:
    return [encode_point(v) for v in q.vertices]


def decode_poly(raw, where: str) -> ConvexPoly:
    if not isinstance(raw, list):
        raise DocumentError(f"{where}: polygon must be a list of vertices")
    try:
        return ConvexPoly([decode_point(v, 2, f"{where}[{i}]") for i, v in enumerate(raw)])
    except GeometryError as exc:
        raise DocumentError(f"{where}: {exc}") from exc


def decode_point(raw, dim: Optional[int], where: str):
    if not isinstance(raw, list) or (dim is not None and len(raw) != dim):
        raise DocumentError(f"{where}: expected a list of {dim} rationals, got {raw!r}")
    return tuple(decode_rational(c, where) for c in raw)


def decode_rational(raw, where: str):
    if isinstance(raw, bool) or isinstance(raw, float):
        raise DocumentError(f"{where}: {raw!r} is not an exact rational (use \"p/q\")")
    if not isinstance(raw, (int, str)):
        raise DocumentError(f"{where}: {raw!r} is not a rational")
    try:
        return Q(raw)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise DocumentError(f"{where}: bad rational {raw!r}: {exc}") from exc


def to_dict(doc: SceneDocument) -> dict:
    out: dict[str, Any] = {"version": doc.version, "dim": doc.dim}
    if doc.polygons or doc.dim == 2:
        out["polygons"] = [encode_poly(q) for q in doc.polygons]
    if doc.construction is not None:
        out["construction"] = _encode_tree(doc.construction)
    if doc.predicted_trap is not None:
        out["predicted_trap"] = _encode_tree(doc.predicted_trap)
    if doc.seed is not None:
        out["seed"] = doc.seed
    return out


def _encode_tree(value):
    """Rationals become strings; ConvexPoly becomes a vertex list."""
    if isinstance(value, ConvexPoly):
        return encode_poly(value)
    if isinstance(value, dict):
        return {k: _encode_tree(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_encode_tree(v) for v in value]
    if isinstance(value, (str, bool)) or value is None:
        return value
    if isinstance(value, int):
        return value
    return format_q(value)


def from_dict(raw) -> SceneDocument:
    if not isinstance(raw, dict):
        raise DocumentError("document must be a JSON object")
    version = raw.get("version")
    if version != VERSION:
        raise DocumentError(f"unsupported version {version!r} (expected {VERSION})")
    dim = raw.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 2:
        raise DocumentError(f"dim must be an integer >= 2, got {dim!r}")
    polys = raw.get("polygons", [])
    if not isinstance(polys, list):
        raise DocumentError("polygons must be a list")
    polygons = [decode_poly(q, f"polygons[{i}]") for i, q in enumerate(polys)]
    construction = raw.get("construction")
    if construction is not None and not isinstance(construction, dict):
        raise DocumentError("construction must be an object")
    if dim > 2 and construction is None:
        raise DocumentError("a spatial document needs a construction descriptor")
    predicted = raw.get("predicted_trap")
    if predicted is not None and not isinstance(predicted, dict):
        raise DocumentError("predicted_trap must be an object")
    seed = raw.get("seed")
    if seed is not None and (not isinstance(seed, int) or isinstance(seed, bool)):
        raise DocumentError("seed must be an integer")
    unknown = set(raw) - {"version", "dim", "polygons", "construction", "predicted_trap", "seed"}
    if unknown:
        raise DocumentError(f"unknown keys: {sorted(unknown)}")
    return SceneDocument(dim, polygons, construction, predicted, seed, version)


def dumps(doc: SceneDocument) -> str:
    return json.dumps(to_dict(doc), indent=2) + "\n"


def loads(text: str) -> SceneDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return from_dict(raw)


def load(path: str) -> SceneDocument:
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from exc


def save(doc: SceneDocument, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc))
