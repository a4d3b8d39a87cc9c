"""Digital city map: weighted intersection nodes joined by streets.

The map is the clustering universe. Street loads are folded onto their
endpoint nodes at load time (half each), so every later stage only ever
deals with nodes. Geometry is plain planar Euclidean, coordinates in
meters; no projections.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence


class MapError(ValueError):
    """Raised for a structurally or semantically invalid map document."""


@dataclass(frozen=True)
class Node:
    id: int
    name: str
    x_m: float
    y_m: float
    subscribers: float = 0.0


@dataclass(frozen=True)
class Street:
    id: int
    name: str
    from_node: int
    to_node: int
    load: float = 0.0


@dataclass(frozen=True)
class DigitalMap:
    name: str
    nodes: tuple[Node, ...]
    streets: tuple[Street, ...] = ()
    declared_area_m2: float | None = None

    def node_by_id(self, node_id: int) -> Node:
        for n in self.nodes:
            if n.id == node_id:
                return n
        raise KeyError(node_id)


_MAP_KEYS = {"name", "declared_area_m2", "nodes", "streets"}
_NODE_KEYS = {"id", "name", "x_m", "y_m", "subscribers"}
_STREET_KEYS = {"id", "name", "from", "to", "load"}


def _require_number(value, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise MapError(f"{what} must be a number")
    value = float(value)
    if not math.isfinite(value):
        raise MapError(f"{what} must be finite")
    return value


def _require_id(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise MapError(f"{what} must be a positive integer")
    return value


def _reject_unknown(obj: dict, allowed: set[str], where: str) -> None:
    extra = set(obj) - allowed
    if extra:
        raise MapError(f"{where}: unknown key '{sorted(extra)[0]}'")


def build_map(raw: dict) -> DigitalMap:
    """Validate a parsed map document and distribute street loads onto nodes.

    Each street's load is split 50/50 between its endpoints and added to
    the endpoint subscriber counts, which makes nodes the single
    load-bearing entity for every downstream computation.
    """
    if not isinstance(raw, dict):
        raise MapError("map document must be a JSON object")
    _reject_unknown(raw, _MAP_KEYS, "map")
    name = raw.get("name")
    if not isinstance(name, str) or not name:
        raise MapError("map: 'name' must be a non-empty string")

    declared = raw.get("declared_area_m2")
    if declared is not None:
        declared = _require_number(declared, "map: declared_area_m2")
        if declared <= 0:
            raise MapError("map: declared_area_m2 must be > 0")

    raw_nodes = raw.get("nodes")
    if not isinstance(raw_nodes, list) or not raw_nodes:
        raise MapError("map: 'nodes' must be a non-empty array")

    subscribers: dict[int, float] = {}
    parsed_nodes: list[tuple[int, str, float, float]] = []
    for entry in raw_nodes:
        if not isinstance(entry, dict):
            raise MapError("node entry must be an object")
        _reject_unknown(entry, _NODE_KEYS, "node")
        nid = _require_id(entry.get("id"), "node id")
        if nid in subscribers:
            raise MapError(f"duplicate node id {nid}")
        nname = entry.get("name")
        if not isinstance(nname, str):
            raise MapError(f"node {nid}: 'name' must be a string")
        x = _require_number(entry.get("x_m"), f"node {nid}: x_m")
        y = _require_number(entry.get("y_m"), f"node {nid}: y_m")
        subs = _require_number(entry.get("subscribers"), f"node {nid}: subscribers")
        if subs < 0:
            raise MapError(f"node {nid}: subscribers must be >= 0")
        subscribers[nid] = subs
        parsed_nodes.append((nid, nname, x, y))

    streets: list[Street] = []
    raw_streets = raw.get("streets", [])
    if not isinstance(raw_streets, list):
        raise MapError("map: 'streets' must be an array")
    seen_street_ids: set[int] = set()
    for entry in raw_streets:
        if not isinstance(entry, dict):
            raise MapError("street entry must be an object")
        _reject_unknown(entry, _STREET_KEYS, "street")
        sid = _require_id(entry.get("id"), "street id")
        if sid in seen_street_ids:
            raise MapError(f"duplicate street id {sid}")
        seen_street_ids.add(sid)
        sname = entry.get("name")
        if not isinstance(sname, str):
            raise MapError(f"street {sid}: 'name' must be a string")
        a = _require_id(entry.get("from"), f"street {sid}: 'from'")
        b = _require_id(entry.get("to"), f"street {sid}: 'to'")
        if a == b:
            raise MapError(f"street {sid}: self-loop on node {a}")
        for endpoint in (a, b):
            if endpoint not in subscribers:
                raise MapError(f"street {sid}: unknown endpoint {endpoint}")
        load = _require_number(entry.get("load"), f"street {sid}: load")
        if load < 0:
            raise MapError(f"street {sid}: load must be >= 0")
        streets.append(Street(id=sid, name=sname, from_node=a, to_node=b, load=load))
        subscribers[a] += load / 2.0
        subscribers[b] += load / 2.0

    nodes = tuple(
        Node(id=nid, name=nname, x_m=x, y_m=y, subscribers=subscribers[nid])
        for nid, nname, x, y in parsed_nodes
    )
    return DigitalMap(
        name=name, nodes=nodes, streets=tuple(streets), declared_area_m2=declared
    )


def load_map(source: bytes | str) -> DigitalMap:
    """Parse map JSON (see README for the schema) into a DigitalMap."""
    try:
        raw = json.loads(source)
    except json.JSONDecodeError as exc:
        raise MapError(f"invalid JSON: {exc}") from exc
    return build_map(raw)


def distance(a: Node, b: Node) -> float:
    """Euclidean distance between two nodes, in meters."""
    return math.hypot(a.x_m - b.x_m, a.y_m - b.y_m)


def _cross(o: tuple[float, float], a: tuple[float, float], b: tuple[float, float]) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Sequence[tuple[float, float]]) -> list[tuple[float, float]]:
    """Convex hull in counter-clockwise order (Andrew's monotone chain).

    Collinear points on the boundary are dropped; degenerate inputs
    (fewer than 3 distinct points, or all collinear) return what remains,
    which has zero area.
    """
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list[tuple[float, float]] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[tuple[float, float]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def polygon_area(vertices: Sequence[tuple[float, float]]) -> float:
    """Shoelace area of a simple polygon given in vertex order."""
    if len(vertices) < 3:
        return 0.0
    acc = 0.0
    for i, (x1, y1) in enumerate(vertices):
        x2, y2 = vertices[(i + 1) % len(vertices)]
        acc += x1 * y2 - x2 * y1
    return abs(acc) / 2.0


def region_area(nodes: Iterable[Node]) -> float:
    """Area (m^2) of the convex hull spanned by the nodes; 0 when degenerate."""
    coords = [(n.x_m, n.y_m) for n in nodes]
    if not coords:
        raise ValueError("region_area needs at least one node")
    return polygon_area(convex_hull(coords))


def total_subscribers(nodes: Iterable[Node]) -> float:
    """Sum of node subscriber loads; empty input sums to 0."""
    return sum(n.subscribers for n in nodes)


def map_area(dmap: DigitalMap) -> float:
    """Planning area: the declared area when present, else the node hull."""
    if dmap.declared_area_m2 is not None:
        return dmap.declared_area_m2
    return region_area(dmap.nodes)
