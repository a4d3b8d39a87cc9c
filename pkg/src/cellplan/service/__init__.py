"""HTTP service wrapping the planning core, plus its request/response types."""

from .schemas import (
    ConfigModel,
    DimensionRequest,
    DimensionResponse,
    GenMapRequest,
    MapModel,
    PlanDocument,
    PlanRequest,
    RenderRequest,
)

__all__ = [
    "ConfigModel",
    "DimensionRequest",
    "DimensionResponse",
    "GenMapRequest",
    "MapModel",
    "PlanDocument",
    "PlanRequest",
    "RenderRequest",
]
