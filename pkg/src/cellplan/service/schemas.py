"""Request and response models for the planning service.

These mirror the JSON file formats one to one. Semantic validation
(duplicate ids, endpoint existence, value ranges) stays in the core
builders; the models enforce shape and reject unknown keys so typos
fail loudly at the boundary.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from ..capacity import CapacityResult
from ..config import RunConfig, build_config
from ..coverage import CoverageResult
from ..geomap import DigitalMap, build_map
from ..planner import (
    ClusterReport,
    IterationSnapshot,
    Method,
    PlanResult,
)


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class NodeModel(_Strict):
    id: int
    name: str
    x_m: float
    y_m: float
    subscribers: float


class StreetModel(_Strict):
    id: int
    name: str
    from_node: int = Field(alias="from")
    to_node: int = Field(alias="to")
    load: float


class MapModel(_Strict):
    name: str
    declared_area_m2: float | None = None
    nodes: list[NodeModel]
    streets: list[StreetModel] = []

    def to_digital_map(self) -> DigitalMap:
        return build_map(self.model_dump(by_alias=True))


class RadioSection(_Strict):
    tx_power_dbm: float
    band: Literal["GSM900", "GSM1800"]
    tx_cable_loss_db: float | None = None
    tx_body_loss_db: float | None = None
    tx_antenna_gain_dbi: float | None = None
    rx_sensitivity_dbm: float | None = None
    rx_cable_loss_db: float | None = None
    rx_body_loss_db: float | None = None
    rx_antenna_gain_dbi: float | None = None
    fading_margin_db: float | None = None
    interference_margin_db: float | None = None
    penetration_margin_db: float | None = None
    other_margin_db: float | None = None
    coeff_a: float | None = None
    coeff_b: float | None = None
    coeff_c: float | None = None
    cell_geometry: Literal["circle", "hexagon"] | None = None
    cell_range_km: float | None = None


class TrafficSection(_Strict):
    calls_per_hour: float
    avg_call_s: float
    gos: float
    available_frequencies: int
    cells_per_pattern: int
    channels_per_carrier: int
    control_channels_per_cell: int | None = None


class PamSection(_Strict):
    seed: int | None = None
    max_sweeps: int | None = None
    matrix_threshold: int | None = None


class ConfigModel(_Strict):
    radio: RadioSection
    traffic: TrafficSection
    pam: PamSection | None = None

    def to_run_config(self) -> RunConfig:
        return build_config(self.model_dump(exclude_none=True))


class ClusterModel(_Strict):
    medoid_id: int
    member_ids: list[int]
    hull_area_m2: float
    subscribers: float
    cells_coverage_ratio: float
    cells_capacity_ratio: float
    satisfied: bool


class IterationModel(_Strict):
    k: int
    violations: int
    total_cost_m: float


class PlanDocument(_Strict):
    """The plan file format; lossless image of a planning result."""

    method: Literal[1, 2]
    feasible: bool
    final_k: int
    clusters: list[ClusterModel]
    iterations: list[IterationModel]
    elapsed_ms: float
    notes: list[str] = []

    @classmethod
    def from_result(cls, result: PlanResult) -> "PlanDocument":
        return cls(
            method=int(result.method),
            feasible=result.feasible,
            final_k=result.final_k,
            clusters=[
                ClusterModel(
                    medoid_id=c.medoid_id,
                    member_ids=list(c.member_ids),
                    hull_area_m2=c.hull_area_m2,
                    subscribers=c.subscribers,
                    cells_coverage_ratio=c.cells_coverage_ratio,
                    cells_capacity_ratio=c.cells_capacity_ratio,
                    satisfied=c.satisfied,
                )
                for c in result.clusters
            ],
            iterations=[
                IterationModel(k=s.k, violations=s.violations, total_cost_m=s.total_cost_m)
                for s in result.iterations
            ],
            elapsed_ms=result.elapsed_ms,
            notes=list(result.notes),
        )

    def to_result(self) -> PlanResult:
        return PlanResult(
            method=Method(self.method),
            feasible=self.feasible,
            final_k=self.final_k,
            clusters=tuple(
                ClusterReport(
                    medoid_id=c.medoid_id,
                    member_ids=tuple(c.member_ids),
                    hull_area_m2=c.hull_area_m2,
                    subscribers=c.subscribers,
                    cells_coverage_ratio=c.cells_coverage_ratio,
                    cells_capacity_ratio=c.cells_capacity_ratio,
                )
                for c in self.clusters
            ),
            iterations=tuple(
                IterationSnapshot(s.k, s.violations, s.total_cost_m)
                for s in self.iterations
            ),
            elapsed_ms=self.elapsed_ms,
            notes=tuple(self.notes),
        )


class PlanRequest(_Strict):
    map: MapModel
    config: ConfigModel
    method: Literal[1, 2]
    cell_range_km: float | None = None
    max_total_clusters: int | None = None
    adaptive_split: bool = False


class CoverageModel(_Strict):
    eirp_dbm: float
    total_margin_db: float
    max_path_loss_db: float
    cell_range_km: float
    cell_area_m2: float


class CapacityModel(_Strict):
    traffic_per_subscriber_e: float
    frequencies_per_cell: int
    traffic_channels_per_cell: int
    traffic_per_cell_e: float
    subscribers_per_cell: float


class DimensionRequest(_Strict):
    config: ConfigModel
    cell_range_km: float | None = None


class DimensionResponse(_Strict):
    coverage: CoverageModel
    capacity: CapacityModel

    @classmethod
    def from_results(
        cls, coverage: CoverageResult, capacity: CapacityResult
    ) -> "DimensionResponse":
        return cls(
            coverage=CoverageModel(
                eirp_dbm=coverage.eirp_dbm,
                total_margin_db=coverage.total_margin_db,
                max_path_loss_db=coverage.max_path_loss_db,
                cell_range_km=coverage.cell_range_km,
                cell_area_m2=coverage.cell_area_m2,
            ),
            capacity=CapacityModel(
                traffic_per_subscriber_e=capacity.traffic_per_subscriber_e,
                frequencies_per_cell=capacity.frequencies_per_cell,
                traffic_channels_per_cell=capacity.traffic_channels_per_cell,
                traffic_per_cell_e=capacity.traffic_per_cell_e,
                subscribers_per_cell=capacity.subscribers_per_cell,
            ),
        )


class GenMapRequest(_Strict):
    nodes: int
    area_m2: float
    subscribers: int
    seed: int = 0
    clumps: int = 0
    name: str | None = None


class RenderRequest(_Strict):
    map: MapModel
    plan: PlanDocument
