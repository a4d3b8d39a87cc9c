"""Capacity dimensioning: subscriber traffic through Erlang-B to cells needed.

The classic printed Erlang table is replaced by computation: the Erlang-B
recursion for blocking probability and a bisection inversion for the
carried traffic at a target grade of service.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class InfeasiblePlanError(ValueError):
    """The frequency plan cannot yield at least one usable traffic channel."""


@dataclass(frozen=True)
class TrafficModel:
    calls_per_hour: float
    avg_call_s: float
    gos: float
    available_frequencies: int
    cells_per_pattern: int
    channels_per_carrier: int
    control_channels_per_cell: int = 0

    def __post_init__(self):
        if self.calls_per_hour < 0 or self.avg_call_s < 0:
            raise ValueError("calls_per_hour and avg_call_s must be >= 0")
        if not 0.0 < self.gos < 1.0:
            raise ValueError("gos must lie in (0, 1)")
        for name in ("available_frequencies", "cells_per_pattern", "channels_per_carrier"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise ValueError(f"{name} must be a positive integer")
        control = self.control_channels_per_cell
        if isinstance(control, bool) or not isinstance(control, int) or control < 0:
            raise ValueError("control_channels_per_cell must be a non-negative integer")


@dataclass(frozen=True)
class CapacityResult:
    traffic_per_subscriber_e: float
    frequencies_per_cell: int
    traffic_channels_per_cell: int
    traffic_per_cell_e: float
    subscribers_per_cell: float


def erlang_traffic(calls_per_hour: float, avg_call_s: float) -> float:
    """Offered traffic n*T/3600 in Erlang."""
    if calls_per_hour < 0 or avg_call_s < 0:
        raise ValueError("traffic inputs must be >= 0")
    return calls_per_hour * avg_call_s / 3600.0


def erlang_b(offered_e: float, channels: int) -> float:
    """Blocking probability of an m-channel lost-calls-cleared system.

    Computed with the numerically stable recursion
    B(A, 0) = 1,  B(A, m) = A*B(A, m-1) / (m + A*B(A, m-1)).
    """
    if offered_e < 0:
        raise ValueError("offered traffic must be >= 0")
    if channels < 0:
        raise ValueError("channels must be >= 0")
    if offered_e == 0.0:
        return 0.0 if channels >= 1 else 1.0
    b = 1.0
    for m in range(1, channels + 1):
        b = offered_e * b / (m + offered_e * b)
    return b


def erlang_b_inverse(channels: int, gos: float) -> float:
    """Offered traffic (Erlang) at which blocking equals the GOS target.

    B(A, m) is continuous and strictly increasing in A from 0 toward 1,
    so bisection on [0, 10*m] (widened by doubling for extreme targets)
    always brackets the unique root; the interval is shrunk until the
    round-trip error is far below 1e-9.
    """
    if channels < 1:
        raise ValueError("channels must be >= 1")
    if not 0.0 < gos < 1.0:
        raise ValueError("gos must lie in (0, 1)")
    lo, hi = 0.0, 10.0 * channels
    while erlang_b(hi, channels) < gos:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if erlang_b(mid, channels) < gos:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-13 * max(1.0, hi):
            break
    return 0.5 * (lo + hi)


def frequencies_per_cell(m: TrafficModel) -> int:
    """Whole carriers per cell under the reuse pattern (fractions are meaningless)."""
    per_cell = m.available_frequencies // m.cells_per_pattern
    if per_cell < 1:
        raise InfeasiblePlanError(
            f"no carrier per cell: {m.available_frequencies} frequencies "
            f"across a {m.cells_per_pattern}-cell pattern"
        )
    return per_cell


def traffic_channels_per_cell(m: TrafficModel) -> int:
    """Traffic channels left per cell after control channels are reserved."""
    channels = frequencies_per_cell(m) * m.channels_per_carrier - m.control_channels_per_cell
    if channels < 1:
        raise InfeasiblePlanError(
            f"no traffic channel per cell: {frequencies_per_cell(m)} carriers x "
            f"{m.channels_per_carrier} channels minus {m.control_channels_per_cell} control"
        )
    return channels


def capacity_plan(m: TrafficModel) -> CapacityResult:
    """Chain the capacity stages down to subscribers per cell."""
    tsub = erlang_traffic(m.calls_per_hour, m.avg_call_s)
    if tsub == 0.0:
        raise InfeasiblePlanError("zero per-subscriber traffic")
    freqs = frequencies_per_cell(m)
    channels = traffic_channels_per_cell(m)
    traffic_per_cell = erlang_b_inverse(channels, m.gos)
    return CapacityResult(
        traffic_per_subscriber_e=tsub,
        frequencies_per_cell=freqs,
        traffic_channels_per_cell=channels,
        traffic_per_cell_e=traffic_per_cell,
        subscribers_per_cell=traffic_per_cell / tsub,
    )


def cells_by_capacity(total_subscribers: float, subscribers_per_cell: float) -> float:
    """Raw subscriber ratio; callers ceil it for counts or compare to 1."""
    if subscribers_per_cell <= 0:
        raise ValueError("subscribers_per_cell must be > 0")
    if total_subscribers < 0:
        raise ValueError("total_subscribers must be >= 0")
    return total_subscribers / subscribers_per_cell
