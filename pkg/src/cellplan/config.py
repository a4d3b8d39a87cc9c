"""Run configuration: radio, traffic, and clustering settings from JSON.

Validation is strict so a typoed key fails loudly instead of silently
falling back to a default. Every error names the offending field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .capacity import TrafficModel
from .coverage import Band, Geometry, HataParams, LinkBudgetParams
from .pam import PamConfig


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    link_budget: LinkBudgetParams
    hata: HataParams
    geometry: Geometry
    traffic: TrafficModel
    pam: PamConfig
    cell_range_km: float | None = None


_RADIO_NUMBERS = {
    "tx_power_dbm": None,
    "tx_cable_loss_db": 0.0,
    "tx_body_loss_db": 0.0,
    "tx_antenna_gain_dbi": 0.0,
    "rx_sensitivity_dbm": -104.0,
    "rx_cable_loss_db": 0.0,
    "rx_body_loss_db": 0.0,
    "rx_antenna_gain_dbi": 0.0,
    "fading_margin_db": 0.0,
    "interference_margin_db": 0.0,
    "penetration_margin_db": 0.0,
    "other_margin_db": 0.0,
}
_RADIO_KEYS = set(_RADIO_NUMBERS) | {
    "band", "coeff_a", "coeff_b", "coeff_c", "cell_geometry", "cell_range_km",
}
_TRAFFIC_NUMBERS = ("calls_per_hour", "avg_call_s", "gos")
_TRAFFIC_INTS = (
    "available_frequencies", "cells_per_pattern", "channels_per_carrier",
)
_TRAFFIC_KEYS = set(_TRAFFIC_NUMBERS) | set(_TRAFFIC_INTS) | {
    "control_channels_per_cell",
}
_PAM_KEYS = {"seed", "max_sweeps", "matrix_threshold"}


def _section(raw: dict, name: str, required: bool) -> dict:
    if name not in raw:
        if required:
            raise ConfigError(f"missing section '{name}'")
        return {}
    section = raw[name]
    if not isinstance(section, dict):
        raise ConfigError(f"{name}: expected an object")
    return section


def _number(section: dict, sec: str, key: str, default=None) -> float:
    if key not in section:
        if default is None:
            raise ConfigError(f"{sec}.{key}: required")
        return default
    value = section[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{sec}.{key}: expected a number")
    return float(value)


def _integer(section: dict, sec: str, key: str, default=None) -> int:
    if key not in section:
        if default is None:
            raise ConfigError(f"{sec}.{key}: required")
        return default
    value = section[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{sec}.{key}: expected an integer")
    return value


def _reject_unknown(section: dict, sec: str, allowed: set[str]) -> None:
    for key in section:
        if key not in allowed:
            raise ConfigError(f"{sec}.{key}: unknown key")


def build_config(raw: dict) -> RunConfig:
    if not isinstance(raw, dict):
        raise ConfigError("configuration must be a JSON object")
    for key in raw:
        if key not in ("radio", "traffic", "pam"):
            raise ConfigError(f"unknown section '{key}'")

    radio = _section(raw, "radio", required=True)
    _reject_unknown(radio, "radio", _RADIO_KEYS)
    budget_kwargs = {
        key: _number(radio, "radio", key, default)
        for key, default in _RADIO_NUMBERS.items()
    }
    try:
        budget = LinkBudgetParams(**budget_kwargs)
    except ValueError as exc:
        raise ConfigError(f"radio: {exc}") from exc

    band_raw = radio.get("band")
    if band_raw is None:
        raise ConfigError("radio.band: required")
    try:
        band = Band(band_raw)
    except ValueError:
        choices = ", ".join(b.value for b in Band)
        raise ConfigError(f"radio.band: expected one of {choices}") from None
    hata = HataParams.for_band(band, coeff_c=_number(radio, "radio", "coeff_c", 0.0))
    if "coeff_a" in radio or "coeff_b" in radio:
        hata = HataParams(
            band=band,
            coeff_a=_number(radio, "radio", "coeff_a", hata.coeff_a),
            coeff_b=_number(radio, "radio", "coeff_b", hata.coeff_b),
            coeff_c=hata.coeff_c,
        )

    geometry_raw = radio.get("cell_geometry", Geometry.CIRCLE.value)
    try:
        geometry = Geometry(geometry_raw)
    except ValueError:
        choices = ", ".join(g.value for g in Geometry)
        raise ConfigError(f"radio.cell_geometry: expected one of {choices}") from None

    cell_range_km = None
    if "cell_range_km" in radio:
        cell_range_km = _number(radio, "radio", "cell_range_km")
        if cell_range_km <= 0:
            raise ConfigError("radio.cell_range_km: must be positive")

    traffic_sec = _section(raw, "traffic", required=True)
    _reject_unknown(traffic_sec, "traffic", _TRAFFIC_KEYS)
    traffic_kwargs: dict = {
        key: _number(traffic_sec, "traffic", key) for key in _TRAFFIC_NUMBERS
    }
    traffic_kwargs.update(
        {key: _integer(traffic_sec, "traffic", key) for key in _TRAFFIC_INTS}
    )
    traffic_kwargs["control_channels_per_cell"] = _integer(
        traffic_sec, "traffic", "control_channels_per_cell", 0
    )
    try:
        traffic = TrafficModel(**traffic_kwargs)
    except ValueError as exc:
        raise ConfigError(f"traffic: {exc}") from exc

    pam_sec = _section(raw, "pam", required=False)
    _reject_unknown(pam_sec, "pam", _PAM_KEYS)
    try:
        pam_cfg = PamConfig(
            seed=_integer(pam_sec, "pam", "seed", 0),
            max_sweeps=_integer(pam_sec, "pam", "max_sweeps", 1000),
            matrix_threshold=_integer(pam_sec, "pam", "matrix_threshold", 4096),
        )
    except ValueError as exc:
        raise ConfigError(f"pam: {exc}") from exc

    return RunConfig(
        link_budget=budget,
        hata=hata,
        geometry=geometry,
        traffic=traffic,
        pam=pam_cfg,
        cell_range_km=cell_range_km,
    )


def load_config(source: str | Path) -> RunConfig:
    """Read and validate a configuration file."""
    text = Path(source).read_text(encoding="utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc}") from exc
    return build_config(raw)
