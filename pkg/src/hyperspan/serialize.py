"""JSON wire formats for spaces, point sets, graphs, and generators.

Schemas:

* space: ``{"type": "line", "points": [...]}``,
  ``{"type": "euclidean", "dim": d, "points": [[...], ...]}``,
  ``{"type": "matrix", "dist": [[...], ...]}``
* instance: the space object extended with ``"A"``, ``"B"`` (index
  arrays) and optionally ``"pool"``
* graph: ``{"vertices": [...], "edges": [[i, j], ...]}``
* generator: ``{"type": "ifs", "maps": [{"ratio": r, "offset": o}, ...],
  "seed": [lo, hi]}`` or ``{"type": "explicit", "levels":
  [[[lo, hi], ...], ...]}``
"""

from __future__ import annotations

from .core import (
    EuclideanPoints,
    FiniteMatrix,
    GraphCertificate,
    MetricSpace,
    PointSet,
    RealLine,
    WeightedGraph,
)
from .errors import HyperspanError, InputError
from .fractal import AffineMap, IntervalSystem


def _require(obj, key, kind, where):
    if key not in obj:
        raise InputError(f"{where}: missing field {key!r}")
    value = obj[key]
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise InputError(f"{where}: field {key!r} must be a number")
        return float(value)
    if not isinstance(value, kind):
        raise InputError(f"{where}: field {key!r} has the wrong type")
    return value


def space_from_json(obj) -> MetricSpace:
    if not isinstance(obj, dict):
        raise InputError("space: expected a JSON object")
    kind = _require(obj, "type", str, "space")
    try:
        if kind == "line":
            return RealLine(_require(obj, "points", list, "line space"))
        if kind == "euclidean":
            return EuclideanPoints(
                int(_require(obj, "dim", float, "euclidean space")),
                _require(obj, "points", list, "euclidean space"),
            )
        if kind == "matrix":
            return FiniteMatrix(_require(obj, "dist", list, "matrix space"))
    except (TypeError, ValueError) as exc:
        raise InputError(f"space: {exc}") from exc
    raise InputError(f"space: unknown type {kind!r}")


def space_to_json(space: MetricSpace) -> dict:
    if isinstance(space, RealLine):
        return {"type": "line", "points": list(space.points)}
    if isinstance(space, EuclideanPoints):
        return {"type": "euclidean", "dim": space.dim, "points": [list(p) for p in space.points]}
    if isinstance(space, FiniteMatrix):
        return {"type": "matrix", "dist": [list(map(float, row)) for row in space.matrix]}
    raise InputError(f"cannot serialize space {space!r}")


def _index_list(obj, key, where, required=True):
    if key not in obj:
        if required:
            raise InputError(f"{where}: missing index array {key!r}")
        return []
    arr = obj[key]
    if not isinstance(arr, list):
        raise InputError(f"{where}: {key!r} must be an array of point indices")
    out = []
    for v in arr:
        if isinstance(v, bool) or not isinstance(v, int):
            raise InputError(f"{where}: {key!r} must contain integers only")
        out.append(v)
    return out


def point_sets_from_json(obj, space: MetricSpace) -> tuple[PointSet, PointSet]:
    try:
        a = PointSet(space, _index_list(obj, "A", "instance"))
        b = PointSet(space, _index_list(obj, "B", "instance"))
    except HyperspanError:
        raise
    return a, b


def pool_from_json(obj, space: MetricSpace) -> list[int]:
    pool = _index_list(obj, "pool", "instance", required=False)
    for i in pool:
        space.check_index(i)
    return pool


def graph_from_json(obj, space: MetricSpace) -> WeightedGraph:
    if not isinstance(obj, dict):
        raise InputError("graph: expected a JSON object")
    vertices = _index_list(obj, "vertices", "graph")
    edges = obj.get("edges", [])
    if not isinstance(edges, list):
        raise InputError("graph: 'edges' must be an array of [i, j] pairs")
    pairs = []
    for e in edges:
        if not isinstance(e, list) or len(e) != 2:
            raise InputError("graph: each edge must be a pair [i, j]")
        pairs.append((e[0], e[1]))
    return WeightedGraph(space, vertices, pairs)


def graph_to_json(g: WeightedGraph) -> dict:
    return {
        "vertices": [int(v) for v in g.vertices],
        "edges": [[int(i), int(j)] for i, j in g.edges],
    }


def certificate_to_json(cert: GraphCertificate) -> dict:
    return {
        "graph": graph_to_json(cert.graph),
        "component_count": cert.component_count,
        "witnesses": [[int(a), int(b)] for a, b in cert.witnesses],
        "total_length": cert.total_length,
    }


def system_from_json(obj) -> IntervalSystem:
    if not isinstance(obj, dict):
        raise InputError("generator: expected a JSON object")
    kind = _require(obj, "type", str, "generator")
    if kind == "ifs":
        maps_raw = _require(obj, "maps", list, "generator")
        seed = _require(obj, "seed", list, "generator")
        if len(seed) != 2:
            raise InputError("generator: 'seed' must be [lo, hi]")
        maps = []
        for m in maps_raw:
            if not isinstance(m, dict):
                raise InputError("generator: each map must be an object")
            maps.append(
                AffineMap(_require(m, "ratio", float, "map"), _require(m, "offset", float, "map"))
            )
        return IntervalSystem.from_ifs(maps, (float(seed[0]), float(seed[1])))
    if kind == "explicit":
        levels = _require(obj, "levels", list, "generator")
        return IntervalSystem.from_levels(levels)
    raise InputError(f"generator: unknown type {kind!r}")


def system_to_json(system: IntervalSystem) -> dict:
    if system.kind == "ifs":
        return {
            "type": "ifs",
            "maps": [{"ratio": m.ratio, "offset": m.offset} for m in system.maps],
            "seed": [float(system.seed[0]), float(system.seed[1])],
        }
    return {
        "type": "explicit",
        "levels": [[[float(lo), float(hi)] for lo, hi in lvl] for lvl in system._levels],
    }
