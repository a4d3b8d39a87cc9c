"""Base-station placement planning on a weighted digital map.

Dimensioning gives a starting cluster count from coverage and capacity.
If any resulting cluster breaks a constraint (its convex-hull area
exceeds one cell's area, or its subscribers exceed what one cell can
serve), the plan is refined by one of two strategies:

* global re-clustering: re-run the medoid search over the whole map
  with one more cluster, repeating until every cluster fits;
* local splitting: keep satisfied clusters frozen and re-cluster only
  the violating ones, each into two (or more) sub-clusters.
"""

from __future__ import annotations

import math
import time
import warnings
from dataclasses import dataclass
from enum import IntEnum
from typing import Sequence

from .capacity import CapacityResult, cells_by_capacity
from .coverage import CoverageResult, cells_by_coverage
from .geomap import (
    DigitalMap,
    Node,
    distance,
    map_area,
    region_area,
    total_subscribers,
)
from .pam import PamConfig, pam


class PlanWarning(UserWarning):
    pass


class Method(IntEnum):
    GLOBAL_RECLUSTER = 1
    LOCAL_SPLIT = 2


@dataclass(frozen=True)
class ClusterReport:
    """Constraint check of one cluster against a single cell's budget."""

    medoid_id: int
    member_ids: tuple[int, ...]
    hull_area_m2: float
    subscribers: float
    cells_coverage_ratio: float
    cells_capacity_ratio: float

    @property
    def satisfied(self) -> bool:
        return self.cells_coverage_ratio <= 1.0 and self.cells_capacity_ratio <= 1.0


@dataclass(frozen=True)
class IterationSnapshot:
    k: int
    violations: int
    total_cost_m: float


@dataclass(frozen=True)
class PlanResult:
    method: Method
    feasible: bool
    final_k: int
    clusters: tuple[ClusterReport, ...]
    iterations: tuple[IterationSnapshot, ...]
    elapsed_ms: float
    notes: tuple[str, ...] = ()


def initial_k(
    dmap: DigitalMap, coverage: CoverageResult, capacity: CapacityResult
) -> int:
    """Starting cluster count: the larger of the coverage and capacity needs.

    Both needs round up; the result is at least 1 and never exceeds the
    number of map nodes (a warning is raised when that cap bites).
    """
    by_coverage = cells_by_coverage(map_area(dmap), coverage.cell_area_m2)
    by_capacity = cells_by_capacity(
        total_subscribers(dmap.nodes), capacity.subscribers_per_cell
    )
    k = max(1, math.ceil(by_coverage), math.ceil(by_capacity))
    n = len(dmap.nodes)
    if k > n:
        warnings.warn(
            f"dimensioning asks for {k} cells but the map has only {n} nodes; "
            f"capping at {n}",
            PlanWarning,
            stacklevel=2,
        )
        k = n
    return k


def check_cluster(
    medoid_id: int,
    members: Sequence[Node],
    coverage: CoverageResult,
    capacity: CapacityResult,
) -> ClusterReport:
    """Compare one cluster's hull area and load against a single cell."""
    ids = {n.id for n in members}
    if medoid_id not in ids:
        raise ValueError(f"medoid {medoid_id} is not among the cluster members")
    hull_area = region_area(members)
    subs = total_subscribers(members)
    return ClusterReport(
        medoid_id=medoid_id,
        member_ids=tuple(sorted(ids)),
        hull_area_m2=hull_area,
        subscribers=subs,
        cells_coverage_ratio=cells_by_coverage(hull_area, coverage.cell_area_m2),
        cells_capacity_ratio=cells_by_capacity(subs, capacity.subscribers_per_cell),
    )


def _cluster_cost(members: Sequence[Node], medoid_id: int) -> float:
    medoid = next(n for n in members if n.id == medoid_id)
    return sum(distance(medoid, n) for n in members)


def _check_all(
    clusters: dict[int, list[int]],
    by_id: dict[int, Node],
    coverage: CoverageResult,
    capacity: CapacityResult,
) -> list[ClusterReport]:
    return [
        check_cluster(mid, [by_id[nid] for nid in clusters[mid]], coverage, capacity)
        for mid in sorted(clusters)
    ]


def _effective_cap(dmap: DigitalMap, max_total_clusters: int | None) -> int:
    cap = len(dmap.nodes)
    if max_total_clusters is not None:
        if max_total_clusters < 1:
            raise ValueError("max_total_clusters must be >= 1")
        cap = min(cap, max_total_clusters)
    return cap


def plan_method1(
    dmap: DigitalMap,
    coverage: CoverageResult,
    capacity: CapacityResult,
    pam_cfg: PamConfig | None = None,
    max_total_clusters: int | None = None,
) -> PlanResult:
    """Refine by re-clustering the whole map with k+1 until no violations."""
    start = time.perf_counter()
    pam_cfg = pam_cfg or PamConfig()
    cap = _effective_cap(dmap, max_total_clusters)
    by_id = {n.id: n for n in dmap.nodes}

    k = min(initial_k(dmap, coverage, capacity), cap)
    iterations: list[IterationSnapshot] = []
    notes: list[str] = []
    while True:
        clustering = pam(dmap.nodes, k, pam_cfg)
        reports = _check_all(clustering.clusters(), by_id, coverage, capacity)
        violations = sum(not r.satisfied for r in reports)
        iterations.append(IterationSnapshot(k, violations, clustering.total_cost_m))
        if violations == 0:
            feasible = True
            break
        if k >= cap:
            feasible = False
            notes.append(
                f"{violations} cluster(s) still violated at the cluster cap ({cap})"
            )
            break
        k += 1

    elapsed_ms = (time.perf_counter() - start) * 1000.0
    return PlanResult(
        method=Method.GLOBAL_RECLUSTER,
        feasible=feasible,
        final_k=k,
        clusters=tuple(reports),
        iterations=tuple(iterations),
        elapsed_ms=elapsed_ms,
        notes=tuple(notes),
    )


def plan_method2(
    dmap: DigitalMap,
    coverage: CoverageResult,
    capacity: CapacityResult,
    pam_cfg: PamConfig | None = None,
    max_total_clusters: int | None = None,
    adaptive_split: bool = False,
) -> PlanResult:
    """Refine by splitting only the violating clusters, keeping the rest.

    Each pass re-checks the clusters produced by the previous pass's
    splits. A violating cluster is re-clustered over its own members,
    into 2 sub-clusters by default; with ``adaptive_split`` the sub-count
    follows the worst constraint ratio. Single-node clusters cannot be
    split, so a violated singleton makes the plan infeasible.
    """
    start = time.perf_counter()
    pam_cfg = pam_cfg or PamConfig()
    cap = _effective_cap(dmap, max_total_clusters)
    by_id = {n.id: n for n in dmap.nodes}

    k0 = min(initial_k(dmap, coverage, capacity), cap)
    clustering = pam(dmap.nodes, k0, pam_cfg)
    active = clustering.clusters()
    frozen: dict[int, ClusterReport] = {}
    frozen_cost = 0.0
    iterations: list[IterationSnapshot] = []
    notes: list[str] = []

    while True:
        reports = _check_all(active, by_id, coverage, capacity)
        costs = {
            mid: _cluster_cost([by_id[nid] for nid in members], mid)
            for mid, members in active.items()
        }
        total_k = len(frozen) + len(reports)
        violations = sum(not r.satisfied for r in reports) + sum(
            not r.satisfied for r in frozen.values()
        )
        iterations.append(
            IterationSnapshot(total_k, violations, frozen_cost + sum(costs.values()))
        )

        splittable = []
        for report in reports:
            if report.satisfied:
                frozen[report.medoid_id] = report
                frozen_cost += costs[report.medoid_id]
            elif len(report.member_ids) == 1:
                notes.append(
                    f"cluster {report.medoid_id}: a single node exceeds the "
                    f"constraints and cannot be split"
                )
                frozen[report.medoid_id] = report
                frozen_cost += costs[report.medoid_id]
            else:
                splittable.append(report)
        if not splittable:
            break

        next_active: dict[int, list[int]] = {}
        for j, report in enumerate(splittable):
            sub_k = 2
            if adaptive_split:
                worst = max(report.cells_coverage_ratio, report.cells_capacity_ratio)
                sub_k = min(max(2, math.ceil(worst)), len(report.member_ids))
            # every cluster not yet processed still counts for at least one
            remaining = len(splittable) - j - 1
            if len(frozen) + len(next_active) + sub_k + remaining > cap:
                notes.append(
                    f"cluster {report.medoid_id}: splitting would exceed the "
                    f"cluster cap ({cap}); keeping it whole"
                )
                frozen[report.medoid_id] = report
                frozen_cost += costs[report.medoid_id]
                continue
            members = [by_id[nid] for nid in report.member_ids]
            sub = pam(members, sub_k, pam_cfg)
            for mid, sub_members in sub.clusters().items():
                next_active[mid] = sub_members
        active = next_active

    clusters = sorted(frozen.values(), key=lambda r: r.medoid_id)
    feasible = all(r.satisfied for r in clusters)

    elapsed_ms = (time.perf_counter() - start) * 1000.0
    return PlanResult(
        method=Method.LOCAL_SPLIT,
        feasible=feasible,
        final_k=len(clusters),
        clusters=tuple(clusters),
        iterations=tuple(iterations),
        elapsed_ms=elapsed_ms,
        notes=tuple(notes),
    )


def plan(
    dmap: DigitalMap,
    coverage: CoverageResult,
    capacity: CapacityResult,
    method: Method | int,
    pam_cfg: PamConfig | None = None,
    max_total_clusters: int | None = None,
    adaptive_split: bool = False,
) -> PlanResult:
    method = Method(method)
    if method is Method.GLOBAL_RECLUSTER:
        return plan_method1(dmap, coverage, capacity, pam_cfg, max_total_clusters)
    return plan_method2(
        dmap, coverage, capacity, pam_cfg, max_total_clusters, adaptive_split
    )
