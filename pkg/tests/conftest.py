import json

import pytest

from cellplan.geomap import Node


def make_nodes(coords, subscribers=None):
    """Nodes with 1-based ids from (x, y) pairs; optional per-node loads."""
    subs = subscribers or [0.0] * len(coords)
    return [
        Node(id=i + 1, name=f"n{i + 1}", x_m=float(x), y_m=float(y), subscribers=float(s))
        for i, ((x, y), s) in enumerate(zip(coords, subs))
    ]


@pytest.fixture
def std_config_dict():
    """A complete, valid configuration used across CLI and service tests."""
    return {
        "radio": {
            "tx_power_dbm": 43,
            "band": "GSM900",
            "tx_cable_loss_db": 3,
            "tx_antenna_gain_dbi": 18,
            "rx_sensitivity_dbm": -104,
            "coeff_c": 45,
            "fading_margin_db": 8,
            "interference_margin_db": 2,
            "penetration_margin_db": 12,
        },
        "traffic": {
            "calls_per_hour": 2,
            "avg_call_s": 90,
            "gos": 0.02,
            "available_frequencies": 24,
            "cells_per_pattern": 4,
            "channels_per_carrier": 8,
            "control_channels_per_cell": 2,
        },
        "pam": {"seed": 11},
    }


@pytest.fixture
def write_json(tmp_path):
    def _write(name, payload):
        path = tmp_path / name
        path.write_text(json.dumps(payload), encoding="utf-8")
        return str(path)

    return _write
