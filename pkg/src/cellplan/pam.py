"""Partitioning Around Medoids: greedy best-swap local search.

Each sweep evaluates every (medoid, non-medoid) exchange, applies the
single most cost-reducing one, and repeats until no exchange reduces the
summed member-to-medoid distance. Swap deltas for a whole sweep are
evaluated in one vectorised pass using each node's nearest and
second-nearest medoid distances, which is algebraically exact: removing
medoid i re-homes a node to its second-nearest medoid unless the
incoming candidate is closer still.

Below ``matrix_threshold`` nodes the full pairwise distance matrix is
precomputed; above it candidate distance columns are built in fixed-size
chunks so memory stays O(n * chunk).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .geomap import Node
from .rng import Lcg64

_CHUNK = 256


@dataclass(frozen=True)
class PamConfig:
    seed: int = 0
    max_sweeps: int = 1000
    matrix_threshold: int = 4096

    def __post_init__(self):
        if self.max_sweeps < 1:
            raise ValueError("max_sweeps must be >= 1")
        if self.seed < 0:
            raise ValueError("seed must be >= 0")


@dataclass(frozen=True)
class Clustering:
    medoid_ids: tuple[int, ...]
    assignment: dict[int, int]
    total_cost_m: float

    def members(self, medoid_id: int) -> list[int]:
        return [nid for nid, mid in self.assignment.items() if mid == medoid_id]

    def clusters(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {mid: [] for mid in self.medoid_ids}
        for nid, mid in self.assignment.items():
            out[mid].append(nid)
        for members in out.values():
            members.sort()
        return out


class _Instance:
    """Shared per-call arrays: ids, coordinates, and distance columns."""

    def __init__(self, nodes: Sequence[Node], matrix_threshold: int):
        self.ids = np.array([n.id for n in nodes], dtype=np.int64)
        self.coords = np.array([(n.x_m, n.y_m) for n in nodes], dtype=np.float64)
        self.n = len(nodes)
        self._matrix = None
        if self.n <= matrix_threshold:
            dx = self.coords[:, 0][:, None] - self.coords[:, 0][None, :]
            dy = self.coords[:, 1][:, None] - self.coords[:, 1][None, :]
            self._matrix = np.hypot(dx, dy)

    def columns(self, idx: np.ndarray) -> np.ndarray:
        """Distance columns (n x len(idx)) from every node to nodes[idx]."""
        if self._matrix is not None:
            return self._matrix[:, idx]
        dx = self.coords[:, 0][:, None] - self.coords[idx, 0][None, :]
        dy = self.coords[:, 1][:, None] - self.coords[idx, 1][None, :]
        return np.hypot(dx, dy)


def _nearest_two(dist_to_medoids: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-node nearest medoid column index, its distance, and the runner-up distance.

    Columns must be ordered by ascending medoid id so argmin's first-hit
    rule implements the lowest-id tie-break.
    """
    nearest_col = np.argmin(dist_to_medoids, axis=1)
    d_near = dist_to_medoids[np.arange(len(dist_to_medoids)), nearest_col]
    if dist_to_medoids.shape[1] == 1:
        d_second = np.full(len(dist_to_medoids), np.inf)
    else:
        d_second = np.partition(dist_to_medoids, 1, axis=1)[:, 1]
    return nearest_col, d_near, d_second


def _build_clustering(inst: _Instance, medoid_idx: np.ndarray) -> Clustering:
    order = np.argsort(inst.ids[medoid_idx], kind="stable")
    medoid_idx = medoid_idx[order]
    cols = inst.columns(medoid_idx)
    nearest_col, d_near, _ = _nearest_two(cols)
    medoid_ids = inst.ids[medoid_idx]
    assignment = {
        int(nid): int(medoid_ids[c]) for nid, c in zip(inst.ids, nearest_col)
    }
    # a medoid always belongs to its own cluster, even if another medoid
    # shares its coordinates (distance 0 either way, so cost is unchanged)
    for mid in medoid_ids:
        assignment[int(mid)] = int(mid)
    return Clustering(
        medoid_ids=tuple(int(m) for m in medoid_ids),
        assignment=assignment,
        total_cost_m=float(d_near.sum()),
    )


def assign(nodes: Sequence[Node], medoid_ids: Sequence[int]) -> Clustering:
    """Assign every node to its nearest medoid (ties to the lowest medoid id)."""
    if not medoid_ids:
        raise ValueError("medoid set must not be empty")
    inst = _Instance(nodes, matrix_threshold=0)
    id_to_idx = {int(nid): i for i, nid in enumerate(inst.ids)}
    if len(id_to_idx) != inst.n:
        raise ValueError("node ids must be unique")
    try:
        medoid_idx = np.array(sorted(id_to_idx[m] for m in set(medoid_ids)), dtype=np.int64)
    except KeyError as exc:
        raise ValueError(f"medoid id {exc.args[0]} is not a node") from exc
    if len(medoid_idx) != len(medoid_ids):
        raise ValueError("medoid ids must be distinct")
    return _build_clustering(inst, medoid_idx)


def swap_cost(
    nodes: Sequence[Node],
    current: Clustering,
    out_medoid: int,
    in_candidate: int,
) -> float:
    """Exact total-cost delta of exchanging one medoid for a non-medoid.

    Negative means the swap improves the clustering. Computed by full
    reassignment against the proposed medoid set.
    """
    if out_medoid not in current.medoid_ids:
        raise ValueError(f"out_medoid {out_medoid} is not a current medoid")
    if in_candidate in current.medoid_ids:
        raise ValueError(f"in_candidate {in_candidate} is already a medoid")
    proposed = [m for m in current.medoid_ids if m != out_medoid] + [in_candidate]
    return assign(nodes, proposed).total_cost_m - current.total_cost_m


def _sweep_deltas(
    inst: _Instance,
    medoid_idx: np.ndarray,
    cand_idx: np.ndarray,
    nearest_col: np.ndarray,
    d_near: np.ndarray,
    d_second: np.ndarray,
) -> np.ndarray:
    """Delta matrix (k x c): cost change for swapping medoid row i out, candidate col h in."""
    k = len(medoid_idx)
    deltas = np.empty((k, len(cand_idx)), dtype=np.float64)
    member_rows = [np.flatnonzero(nearest_col == i) for i in range(k)]
    for start in range(0, len(cand_idx), _CHUNK):
        block = cand_idx[start:start + _CHUNK]
        d_cand = inst.columns(block)
        # nodes keeping their medoid: only gain if the candidate is closer
        gain = np.minimum(d_cand - d_near[:, None], 0.0)
        total_gain = gain.sum(axis=0)
        # nodes losing their medoid: re-home to runner-up or the candidate
        rehome = np.minimum(d_cand, d_second[:, None]) - d_near[:, None]
        for i in range(k):
            rows = member_rows[i]
            deltas[i, start:start + len(block)] = (
                total_gain - gain[rows].sum(axis=0) + rehome[rows].sum(axis=0)
            )
    return deltas


def _best_swap(
    inst: _Instance, medoid_idx: np.ndarray, cand_idx: np.ndarray,
    deltas: np.ndarray,
) -> tuple[float, int, int]:
    """Most negative delta; ties broken by smallest (out id, in id) pair."""
    best = float(deltas.min())
    rows, cols = np.nonzero(deltas == best)
    pairs = sorted(
        (int(inst.ids[medoid_idx[r]]), int(inst.ids[cand_idx[c]]), int(r), int(c))
        for r, c in zip(rows, cols)
    )
    _, _, r, c = pairs[0]
    return best, r, c


def _pam(
    nodes: Sequence[Node], k: int, cfg: PamConfig
) -> tuple[Clustering, list[float]]:
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > len(nodes):
        raise ValueError(f"k={k} exceeds the {len(nodes)} available nodes")
    inst = _Instance(nodes, cfg.matrix_threshold)
    if len(set(inst.ids.tolist())) != inst.n:
        raise ValueError("node ids must be unique")

    rng = Lcg64(cfg.seed)
    medoid_idx = np.array(sorted(rng.sample_indices(inst.n, k)), dtype=np.int64)
    is_medoid = np.zeros(inst.n, dtype=bool)
    is_medoid[medoid_idx] = True

    sweep_costs: list[float] = []
    swaps_applied = 0
    while True:
        order = np.argsort(inst.ids[medoid_idx], kind="stable")
        medoid_idx = medoid_idx[order]
        cols = inst.columns(medoid_idx)
        nearest_col, d_near, d_second = _nearest_two(cols)
        sweep_costs.append(float(d_near.sum()))
        if swaps_applied >= cfg.max_sweeps:
            break
        cand_idx = np.flatnonzero(~is_medoid)
        if len(cand_idx) == 0:
            break
        deltas = _sweep_deltas(inst, medoid_idx, cand_idx, nearest_col, d_near, d_second)
        best, r, c = _best_swap(inst, medoid_idx, cand_idx, deltas)
        if best >= 0.0:
            break
        is_medoid[medoid_idx[r]] = False
        is_medoid[cand_idx[c]] = True
        medoid_idx = np.flatnonzero(is_medoid)
        swaps_applied += 1

    return _build_clustering(inst, medoid_idx), sweep_costs


def pam(nodes: Sequence[Node], k: int, cfg: PamConfig | None = None) -> Clustering:
    """Cluster nodes around k medoids chosen by seeded best-swap local search."""
    clustering, _ = _pam(nodes, k, cfg or PamConfig())
    return clustering


def pam_history(
    nodes: Sequence[Node], k: int, cfg: PamConfig | None = None
) -> tuple[Clustering, list[float]]:
    """Like :func:`pam` but also returns the total cost recorded at each sweep."""
    return _pam(nodes, k, cfg or PamConfig())


def brute_force_best(nodes: Sequence[Node], k: int) -> Clustering:
    """Exhaustive optimum over all C(n, k) medoid subsets; test-scale inputs only."""
    from itertools import combinations

    if not 1 <= k <= len(nodes):
        raise ValueError("require 1 <= k <= n")
    if math.comb(len(nodes), k) > 500_000:
        raise ValueError("instance too large for exhaustive search")
    best: Clustering | None = None
    for subset in combinations(sorted(n.id for n in nodes), k):
        candidate = assign(nodes, subset)
        if best is None or candidate.total_cost_m < best.total_cost_m:
            best = candidate
    assert best is not None
    return best
