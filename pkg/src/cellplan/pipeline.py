"""End-to-end runs: configuration plus map in, placement plan out."""

from __future__ import annotations

from .capacity import CapacityResult, capacity_plan
from .config import RunConfig
from .coverage import CoverageResult, dimension_coverage
from .geomap import DigitalMap
from .planner import Method, PlanResult, plan


def dimension(
    cfg: RunConfig, cell_range_km: float | None = None
) -> tuple[CoverageResult, CapacityResult]:
    """Dimension one cell from the radio and traffic settings.

    ``cell_range_km`` takes precedence over the configured override,
    which in turn takes precedence over the propagation-model range.
    """
    if cell_range_km is None:
        cell_range_km = cfg.cell_range_km
    coverage = dimension_coverage(
        cfg.link_budget, cfg.hata, cfg.geometry, cell_range_km=cell_range_km
    )
    return coverage, capacity_plan(cfg.traffic)


def run_plan(
    dmap: DigitalMap,
    cfg: RunConfig,
    method: Method | int,
    cell_range_km: float | None = None,
    max_total_clusters: int | None = None,
    adaptive_split: bool = False,
) -> PlanResult:
    """Dimension, cluster, and refine in one call."""
    coverage, capacity = dimension(cfg, cell_range_km)
    return plan(
        dmap,
        coverage,
        capacity,
        method,
        pam_cfg=cfg.pam,
        max_total_clusters=max_total_clusters,
        adaptive_split=adaptive_split,
    )
