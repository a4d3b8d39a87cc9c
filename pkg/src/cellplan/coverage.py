"""Coverage dimensioning: link budget, Okumura-Hata range, cell area.

All link-budget arithmetic stays in the dB domain. The maximum allowed
path loss resolves receiver-side terms as
``EIRP + (rx antenna gain - rx losses) - rx sensitivity - margins``,
the standard reading in which sensitivity (a negative dBm figure) adds
headroom. Typical GSM parameter sets land around 130-150 dB.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass


class Band(str, enum.Enum):
    GSM900 = "GSM900"
    GSM1800 = "GSM1800"


# Simplified-Hata intercept/slope per band, fitted for macrocells.
HATA_COEFFICIENTS: dict[Band, tuple[float, float]] = {
    Band.GSM900: (69.55, 26.16),
    Band.GSM1800: (46.3, 33.9),
}

# Recommended validity window of the simplified model, in km.
HATA_RANGE_KM = (1.0, 20.0)


class HataValidityWarning(UserWarning):
    """Cell range fell outside the model's recommended 1-20 km window."""


class Geometry(str, enum.Enum):
    CIRCLE = "circle"
    HEXAGON = "hexagon"


@dataclass(frozen=True)
class LinkBudgetParams:
    tx_power_dbm: float
    tx_cable_loss_db: float = 0.0
    tx_body_loss_db: float = 0.0
    tx_antenna_gain_dbi: float = 0.0
    rx_sensitivity_dbm: float = -104.0
    rx_cable_loss_db: float = 0.0
    rx_body_loss_db: float = 0.0
    rx_antenna_gain_dbi: float = 0.0
    fading_margin_db: float = 0.0
    interference_margin_db: float = 0.0
    penetration_margin_db: float = 0.0
    other_margin_db: float = 0.0

    def __post_init__(self):
        for name in (
            "tx_cable_loss_db", "tx_body_loss_db", "rx_cable_loss_db",
            "rx_body_loss_db", "fading_margin_db", "interference_margin_db",
            "penetration_margin_db", "other_margin_db",
        ):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        for name in self.__dataclass_fields__:
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")


@dataclass(frozen=True)
class HataParams:
    band: Band
    coeff_a: float
    coeff_b: float
    coeff_c: float = 0.0

    def __post_init__(self):
        if self.coeff_b <= 0:
            raise ValueError("coeff_b must be > 0")

    @classmethod
    def for_band(cls, band: Band, coeff_c: float = 0.0) -> "HataParams":
        a, b = HATA_COEFFICIENTS[band]
        return cls(band=band, coeff_a=a, coeff_b=b, coeff_c=coeff_c)


@dataclass(frozen=True)
class CoverageResult:
    eirp_dbm: float
    total_margin_db: float
    max_path_loss_db: float
    cell_range_km: float
    cell_area_m2: float


def eirp(p: LinkBudgetParams) -> float:
    """Effective radiated power: tx power - tx losses + tx antenna gain (dBm)."""
    return p.tx_power_dbm - (p.tx_cable_loss_db + p.tx_body_loss_db) + p.tx_antenna_gain_dbi


def effective_rx_sensibility(p: LinkBudgetParams) -> float:
    """Receiver sensitivity corrected by rx losses and antenna gain (dBm)."""
    return p.rx_sensitivity_dbm - (p.rx_cable_loss_db + p.rx_body_loss_db) + p.rx_antenna_gain_dbi


def total_margin(p: LinkBudgetParams) -> float:
    """Sum of fading, interference, penetration, and other margins (dB)."""
    return (
        p.fading_margin_db
        + p.interference_margin_db
        + p.penetration_margin_db
        + p.other_margin_db
    )


def max_allowed_path_loss(p: LinkBudgetParams) -> float:
    """Maximum path loss the link survives (dB).

    EIRP plus receiver-side gains, minus sensitivity, minus every margin.
    """
    rx_gains = p.rx_antenna_gain_dbi - p.rx_cable_loss_db - p.rx_body_loss_db
    return eirp(p) + rx_gains - p.rx_sensitivity_dbm - total_margin(p)


def hata_path_loss(h: HataParams, d_km: float) -> float:
    """Simplified Hata loss A + B*log10(d) + C, d in km."""
    if d_km <= 0:
        raise ValueError("distance must be > 0 km")
    return h.coeff_a + h.coeff_b * math.log10(d_km) + h.coeff_c


def hata_max_range(h: HataParams, max_loss_db: float) -> float:
    """Invert the Hata sum: the distance (km) at which loss hits max_loss_db.

    Emits HataValidityWarning when the result leaves the recommended
    1-20 km window (small cells in the comparison datasets do).
    """
    d_km = 10.0 ** ((max_loss_db - h.coeff_a - h.coeff_c) / h.coeff_b)
    lo, hi = HATA_RANGE_KM
    if not lo <= d_km <= hi:
        warnings.warn(
            f"cell range {d_km:.3f} km is outside the recommended "
            f"{lo:.0f}-{hi:.0f} km validity window",
            HataValidityWarning,
            stacklevel=2,
        )
    return d_km


def cell_area(range_km: float, geometry: Geometry = Geometry.CIRCLE) -> float:
    """Area (m^2) served by one cell of the given range and footprint shape."""
    if range_km <= 0:
        raise ValueError("cell range must be > 0 km")
    r_m = range_km * 1000.0
    if geometry is Geometry.CIRCLE:
        return math.pi * r_m * r_m
    return 1.5 * math.sqrt(3.0) * r_m * r_m


def cells_by_coverage(area_m2: float, cell_area_m2: float) -> float:
    """Raw area/cell-area ratio; callers ceil it for counts or compare to 1."""
    if cell_area_m2 <= 0:
        raise ValueError("cell area must be > 0")
    if area_m2 < 0:
        raise ValueError("area must be >= 0")
    return area_m2 / cell_area_m2


def dimension_coverage(
    p: LinkBudgetParams,
    h: HataParams,
    geometry: Geometry = Geometry.CIRCLE,
    cell_range_km: float | None = None,
) -> CoverageResult:
    """Full coverage chain: link budget -> max loss -> range -> cell area.

    ``cell_range_km`` short-circuits the Hata inversion for experiments
    that sweep the range directly; the budget figures are still reported.
    """
    mapl = max_allowed_path_loss(p)
    if cell_range_km is None:
        cell_range_km = hata_max_range(h, mapl)
    elif cell_range_km <= 0:
        raise ValueError("cell_range_km override must be > 0")
    return CoverageResult(
        eirp_dbm=eirp(p),
        total_margin_db=total_margin(p),
        max_path_loss_db=mapl,
        cell_range_km=cell_range_km,
        cell_area_m2=cell_area(cell_range_km, geometry),
    )
