"""FastAPI application exposing the planning pipeline.

Shape errors are rejected by the models (422 with field locations);
semantic errors raised by the core (bad map, bad config, unservable
traffic model) are mapped to 422 with the core's message. An
infeasible plan is a valid outcome, returned with feasible=false.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException, Response

from .. import __version__
from ..mapgen import generate_map
from ..pipeline import dimension, run_plan
from ..render import render_svg
from .schemas import (
    DimensionRequest,
    DimensionResponse,
    GenMapRequest,
    PlanDocument,
    PlanRequest,
    RenderRequest,
)

app = FastAPI(title="cellplan", version=__version__)


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/dimension", response_model=DimensionResponse)
def dimension_endpoint(req: DimensionRequest) -> DimensionResponse:
    try:
        cfg = req.config.to_run_config()
        coverage, capacity = dimension(cfg, req.cell_range_km)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    return DimensionResponse.from_results(coverage, capacity)


@app.post("/plan", response_model=PlanDocument)
def plan_endpoint(req: PlanRequest) -> PlanDocument:
    try:
        dmap = req.map.to_digital_map()
        cfg = req.config.to_run_config()
        result = run_plan(
            dmap,
            cfg,
            req.method,
            cell_range_km=req.cell_range_km,
            max_total_clusters=req.max_total_clusters,
            adaptive_split=req.adaptive_split,
        )
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    return PlanDocument.from_result(result)


@app.post("/maps/generate")
def gen_map_endpoint(req: GenMapRequest) -> dict:
    try:
        return generate_map(
            nodes=req.nodes,
            area_m2=req.area_m2,
            subscribers=req.subscribers,
            seed=req.seed,
            clumps=req.clumps,
            name=req.name,
        )
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


@app.post("/render")
def render_endpoint(req: RenderRequest) -> Response:
    try:
        svg = render_svg(req.plan.to_result(), req.map.to_digital_map())
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    return Response(content=svg, media_type="image/svg+xml")
