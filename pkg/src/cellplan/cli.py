"""Command-line front end.

Commands map onto the service operations one to one; everything runs
in-process so batch work needs no server. Exit codes: 0 success,
2 invalid input, 3 plan finished but infeasible (output still written).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .compare import build_table, rows_to_csv
from .config import RunConfig, load_config
from .geomap import DigitalMap, load_map
from .mapgen import generate_map, to_json
from .pipeline import run_plan
from .render import render_svg
from .service.schemas import PlanDocument

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INFEASIBLE = 3


def _read_map(path: str) -> DigitalMap:
    return load_map(Path(path).read_text(encoding="utf-8"))


def _read_config(path: str) -> RunConfig:
    return load_config(path)


def _write(path: str, payload: str) -> None:
    Path(path).write_text(payload, encoding="utf-8")


def cmd_plan(args: argparse.Namespace) -> int:
    dmap = _read_map(args.map)
    cfg = _read_config(args.config)
    result = run_plan(
        dmap,
        cfg,
        args.method,
        cell_range_km=args.cell_range_km,
        max_total_clusters=args.max_clusters,
        adaptive_split=args.adaptive_split,
    )
    doc = PlanDocument.from_result(result)
    _write(args.out, json.dumps(doc.model_dump(), indent=2) + "\n")
    if args.svg:
        _write(args.svg, render_svg(result, dmap))
    state = "feasible" if result.feasible else "infeasible"
    print(
        f"{dmap.name}: {result.final_k} base station(s), {state}, "
        f"{len(result.iterations)} iteration(s) -> {args.out}"
    )
    for note in result.notes:
        print(f"note: {note}", file=sys.stderr)
    return EXIT_OK if result.feasible else EXIT_INFEASIBLE


def cmd_compare(args: argparse.Namespace) -> int:
    ranges = [float(part) for part in args.cell_ranges.split(",") if part.strip()]
    if not ranges:
        raise ValueError("--cell-ranges must list at least one value")
    maps = [_read_map(path) for path in args.map]
    cfg = _read_config(args.config)
    rows = build_table(
        maps,
        cfg,
        ranges,
        baseline_k=args.baseline_k,
        repeat=args.repeat,
        parallel=args.parallel,
    )
    _write(args.out, rows_to_csv(rows))
    bad = sum(row.status != "ok" for row in rows)
    print(f"{len(rows)} row(s) -> {args.out}" + (f" ({bad} not ok)" if bad else ""))
    return EXIT_OK


def cmd_gen_map(args: argparse.Namespace) -> int:
    doc = generate_map(
        nodes=args.nodes,
        area_m2=args.area_m2,
        subscribers=args.subscribers,
        seed=args.seed,
        clumps=args.clumps,
        name=args.name,
    )
    _write(args.out, to_json(doc))
    print(f"{doc['name']}: {args.nodes} node(s) -> {args.out}")
    return EXIT_OK


def cmd_render(args: argparse.Namespace) -> int:
    dmap = _read_map(args.map)
    raw = json.loads(Path(args.plan).read_text(encoding="utf-8"))
    result = PlanDocument.model_validate(raw).to_result()
    _write(args.out, render_svg(result, dmap))
    print(f"{args.plan} -> {args.out}")
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cellplan",
        description="GSM cell planning: medoid placement with coverage and "
        "capacity dimensioning",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", help="dimension and place base stations on a map")
    p.add_argument("--map", required=True, help="map JSON file")
    p.add_argument("--config", required=True, help="config JSON file")
    p.add_argument("--method", required=True, type=int, choices=(1, 2),
                   help="1 = global re-cluster, 2 = local split")
    p.add_argument("--out", default="plan.json", help="plan output path")
    p.add_argument("--svg", help="also render the plan to this SVG path")
    p.add_argument("--cell-range-km", type=float,
                   help="fix the cell range, skipping the propagation model")
    p.add_argument("--max-clusters", type=int,
                   help="upper bound on placed base stations")
    p.add_argument("--adaptive-split", action="store_true",
                   help="method 2: split by the worst constraint ratio, not into 2")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("compare", help="tabulate both methods over maps and ranges")
    p.add_argument("--map", required=True, action="append",
                   help="map JSON file (repeatable)")
    p.add_argument("--config", required=True, help="config JSON file")
    p.add_argument("--cell-ranges", required=True,
                   help="comma-separated cell ranges in km, e.g. 0.5,1.5,5")
    p.add_argument("--baseline-k", type=int,
                   help="also time plain clustering at this fixed k")
    p.add_argument("--out", default="table.csv", help="CSV output path")
    p.add_argument("--repeat", type=int, default=1,
                   help="timing runs per variant; the median is reported")
    p.add_argument("--parallel", action="store_true",
                   help="run rows concurrently (contaminates timings)")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("gen-map", help="generate a synthetic map")
    p.add_argument("--nodes", required=True, type=int)
    p.add_argument("--area-m2", required=True, type=float)
    p.add_argument("--subscribers", required=True, type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--clumps", type=int, default=0,
                   help="gather nodes around this many hot spots")
    p.add_argument("--name", help="map name (default: synthetic-<seed>)")
    p.add_argument("--out", default="map.json", help="map output path")
    p.set_defaults(func=cmd_gen_map)

    p = sub.add_parser("render", help="draw an existing plan as SVG")
    p.add_argument("--map", required=True, help="map JSON file")
    p.add_argument("--plan", required=True, help="plan JSON file")
    p.add_argument("--out", default="plan.svg", help="SVG output path")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("serve", help="run the HTTP planning service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
