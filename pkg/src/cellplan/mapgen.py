"""Synthetic digital map generation for benchmarks and demos.

Maps are reproducible: the same parameters and seed always yield the
same document, byte for byte once serialised with :func:`to_json`.
"""

from __future__ import annotations

import json
import math

from .rng import Lcg64


def generate_map(
    nodes: int,
    area_m2: float,
    subscribers: int,
    seed: int = 0,
    clumps: int = 0,
    name: str | None = None,
) -> dict:
    """Scatter nodes over a square region and apportion subscribers.

    With ``clumps`` > 0 the nodes gather around that many Gaussian hot
    spots instead of spreading uniformly, which mimics the uneven load
    of a real city. Subscriber totals are integers and sum exactly to
    ``subscribers`` (largest-remainder rounding of random weights).
    """
    if nodes < 1:
        raise ValueError("nodes must be >= 1")
    if not (math.isfinite(area_m2) and area_m2 > 0):
        raise ValueError("area_m2 must be positive")
    if subscribers < 0:
        raise ValueError("subscribers must be >= 0")
    if clumps < 0:
        raise ValueError("clumps must be >= 0")

    rng = Lcg64(seed)
    side = math.sqrt(area_m2)
    # centimeter grid: rounding must never push a boundary point outside
    limit = math.floor(side * 100.0) / 100.0

    def snap(v: float) -> float:
        return min(max(round(v, 2), 0.0), limit)

    if clumps > 0:
        centers = [(rng.uniform(0.0, side), rng.uniform(0.0, side)) for _ in range(clumps)]
        sigma = side / (4.0 * clumps)
        coords = []
        for _ in range(nodes):
            cx, cy = centers[rng.randrange(clumps)]
            x = min(max(rng.gauss(cx, sigma), 0.0), side)
            y = min(max(rng.gauss(cy, sigma), 0.0), side)
            coords.append((x, y))
    else:
        coords = [(rng.uniform(0.0, side), rng.uniform(0.0, side)) for _ in range(nodes)]

    weights = [rng.random() for _ in range(nodes)]
    shares = _apportion(subscribers, weights)

    node_docs = [
        {
            "id": i + 1,
            "name": f"n{i + 1}",
            "x_m": snap(x),
            "y_m": snap(y),
            "subscribers": shares[i],
        }
        for i, (x, y) in enumerate(coords)
    ]
    return {
        "name": name if name is not None else f"synthetic-{seed}",
        "declared_area_m2": area_m2,
        "nodes": node_docs,
        "streets": [],
    }


def _apportion(total: int, weights: list[float]) -> list[int]:
    """Split an integer total proportionally to weights, exactly."""
    if total == 0:
        return [0] * len(weights)
    weight_sum = sum(weights)
    quotas = [total * w / weight_sum for w in weights]
    shares = [math.floor(q) for q in quotas]
    shortfall = total - sum(shares)
    by_remainder = sorted(range(len(weights)), key=lambda i: (shares[i] - quotas[i], i))
    for i in by_remainder[:shortfall]:
        shares[i] += 1
    return shares


def to_json(doc: dict) -> str:
    """Canonical serialisation used by the CLI and the service."""
    return json.dumps(doc, indent=2) + "\n"
