"""Side-by-side planning runs: both refinement methods and a fixed-k baseline.

One row per (map, cell range) pair. A failing variant marks the row's
status but never aborts the batch, so long sweeps survive bad inputs.
"""

from __future__ import annotations

import csv
import io
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

from .config import RunConfig
from .geomap import DigitalMap, total_subscribers
from .pam import pam
from .pipeline import run_plan
from .planner import Method

CSV_COLUMNS = (
    "dataset", "nodes", "subscribers", "cell_range_km",
    "method1_bs", "method2_bs", "pam_bs",
    "method1_ms", "method2_ms", "pam_ms", "status",
)


@dataclass(frozen=True)
class ComparisonRow:
    dataset: str
    nodes: int
    subscribers: float
    cell_range_km: float
    method1_bs: int | None
    method2_bs: int | None
    pam_bs: int | None
    method1_ms: float | None
    method2_ms: float | None
    pam_ms: float | None
    status: str


def _timed(fn: Callable, repeat: int):
    """Run fn `repeat` times; return (last result, median wall-clock ms)."""
    times = []
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append((time.perf_counter() - t0) * 1000.0)
    return result, statistics.median(times)


def build_row(
    dmap: DigitalMap,
    cfg: RunConfig,
    cell_range_km: float,
    baseline_k: int | None = None,
    repeat: int = 1,
) -> ComparisonRow:
    method1_bs = method2_bs = pam_bs = None
    method1_ms = method2_ms = pam_ms = None
    status = "ok"
    try:
        r1, method1_ms = _timed(
            lambda: run_plan(dmap, cfg, Method.GLOBAL_RECLUSTER, cell_range_km),
            repeat,
        )
        method1_bs = r1.final_k
        r2, method2_ms = _timed(
            lambda: run_plan(dmap, cfg, Method.LOCAL_SPLIT, cell_range_km),
            repeat,
        )
        method2_bs = r2.final_k
        if baseline_k is not None:
            rb, pam_ms = _timed(
                lambda: pam(dmap.nodes, baseline_k, cfg.pam), repeat
            )
            pam_bs = len(rb.medoid_ids)
        if not (r1.feasible and r2.feasible):
            status = "infeasible"
    except ValueError as exc:
        status = f"error:{exc}"
    return ComparisonRow(
        dataset=dmap.name,
        nodes=len(dmap.nodes),
        subscribers=total_subscribers(dmap.nodes),
        cell_range_km=cell_range_km,
        method1_bs=method1_bs,
        method2_bs=method2_bs,
        pam_bs=pam_bs,
        method1_ms=method1_ms,
        method2_ms=method2_ms,
        pam_ms=pam_ms,
        status=status,
    )


def build_table(
    maps: Sequence[DigitalMap],
    cfg: RunConfig,
    cell_ranges: Sequence[float],
    baseline_k: int | None = None,
    repeat: int = 1,
    parallel: bool = False,
) -> list[ComparisonRow]:
    """All (map, cell range) rows, in input order.

    Rows run sequentially by default so the runtime columns are not
    contaminated by contention; ``parallel`` trades that for speed.
    """
    if not cell_ranges:
        raise ValueError("at least one cell range is required")
    for r in cell_ranges:
        if r <= 0:
            raise ValueError(f"cell range must be positive, got {r}")
    if repeat < 1:
        raise ValueError("repeat must be >= 1")
    jobs = [(dmap, rng) for dmap in maps for rng in cell_ranges]
    if parallel:
        with ThreadPoolExecutor() as pool:
            return list(
                pool.map(
                    lambda job: build_row(job[0], cfg, job[1], baseline_k, repeat),
                    jobs,
                )
            )
    return [build_row(dmap, cfg, rng, baseline_k, repeat) for dmap, rng in jobs]


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        if value == int(value):
            return str(int(value))
        return repr(value)
    return str(value)


def _ms_cell(value: float | None) -> str:
    return "" if value is None else f"{value:.3f}"


def rows_to_csv(rows: Sequence[ComparisonRow]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([
            row.dataset,
            str(row.nodes),
            _cell(row.subscribers),
            _cell(row.cell_range_km),
            _cell(row.method1_bs),
            _cell(row.method2_bs),
            _cell(row.pam_bs),
            _ms_cell(row.method1_ms),
            _ms_cell(row.method2_ms),
            _ms_cell(row.pam_ms),
            row.status,
        ])
    return out.getvalue()
