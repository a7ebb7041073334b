"""Sleigh aerodynamics and per-leg cruise-speed selection."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .temporal import DarknessWindow, Instant, is_dark

#: Sea-level air density, kg/m^3.
AIR_DENSITY = 1.225

#: Arrivals aimed at a window edge target this many minutes inside it, so the
#: recomputed arrival still tests dark despite floating-point rounding.
WINDOW_EDGE_MARGIN_MIN = 1e-7


def kmh_to_mps(v_kmh: float) -> float:
    return v_kmh * 1000.0 / 3600.0


def mps_to_kmh(v_mps: float) -> float:
    return v_mps * 3.6


@dataclass(frozen=True)
class SpeedBounds:
    """Admissible cruise-speed interval, m/s."""

    v_min: float
    v_max: float

    def __post_init__(self) -> None:
        if not 0.0 < self.v_min < self.v_max:
            raise ValueError(f"need 0 < v_min < v_max, got [{self.v_min}, {self.v_max}]")

    def clamp(self, v: float) -> float:
        return min(max(v, self.v_min), self.v_max)


#: 10 km/h (hover floor) to 15,000 km/h (structural ceiling).
DEFAULT_SPEED_BOUNDS = SpeedBounds(kmh_to_mps(10.0), kmh_to_mps(15_000.0))


@dataclass(frozen=True)
class PayloadState:
    """Delivery progress: people already served out of the tour total."""

    delivered_population: int
    total_population: int

    def __post_init__(self) -> None:
        if self.total_population <= 0:
            raise ValueError("total_population must be positive")
        if not 0 <= self.delivered_population <= self.total_population:
            raise ValueError("delivered_population outside [0, total_population]")


def payload_area(delivered_population, total_population):
    """Frontal cross-section in m^2 for a given delivery progress.

    Shrinks linearly from 1.0 m^2 (nothing delivered) to the 0.01 m^2
    empty-sleigh residual.  Accepts scalars or arrays.
    """
    remaining = 1.0 - delivered_population / total_population
    return 0.01 + 0.99 * remaining


def cross_section(state: PayloadState) -> float:
    return payload_area(state.delivered_population, state.total_population)


def aero_work(distance_m, speed_mps, area_m2):
    """Drag work 0.5 * rho * A * v^2 * d in joules.  Accepts scalars or arrays."""
    return 0.5 * AIR_DENSITY * area_m2 * speed_mps * speed_mps * distance_m


def select_speed(
    distance_m: float,
    t_depart: Instant,
    window: DarknessWindow | None,
    v_default: float,
    bounds: SpeedBounds,
) -> float | None:
    """Pick the cruise speed for one leg, or None when no dark arrival exists.

    The default speed wins whenever it already lands in darkness.  Otherwise
    the leg slows to arrive just after dusk, or speeds up to arrive just
    before dawn; a required speed above v_max, or a window that closed before
    departure, makes the leg infeasible.  Destinations without a window (the
    depot) always accept the default.
    """
    v_def = bounds.clamp(v_default)
    if window is None:
        return v_def
    arrival_default = t_depart + distance_m / v_def / 60.0
    if is_dark(window, arrival_default):
        return v_def
    if arrival_default < window.dusk_utc:
        target = window.dusk_utc + WINDOW_EDGE_MARGIN_MIN
    else:
        target = window.dawn_utc - WINDOW_EDGE_MARGIN_MIN
        if target <= t_depart:
            return None
    required = distance_m / ((target - t_depart) * 60.0)
    if required > bounds.v_max:
        return None
    v = bounds.clamp(required)
    arrival = t_depart + distance_m / v / 60.0
    if is_dark(window, arrival):
        return v
    return None


def select_speeds(
    distance_m: np.ndarray,
    t_depart,
    dusk_utc: np.ndarray,
    dawn_utc: np.ndarray,
    v_default: float,
    bounds: SpeedBounds,
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised :func:`select_speed` over broadcastable arrays.

    Windowless destinations are encoded as dusk=-inf / dawn=+inf.  Returns
    ``(speed, feasible)``; infeasible entries carry the clamped default speed
    (the speed such a leg would actually fly).  Bitwise-identical to the
    scalar function on every element.
    """
    v_def = bounds.clamp(v_default)
    arrival_default = t_depart + distance_m / v_def / 60.0
    dark_at_default = (dusk_utc <= arrival_default) & (arrival_default <= dawn_utc)
    early = arrival_default < dusk_utc
    target = np.where(early, dusk_utc + WINDOW_EDGE_MARGIN_MIN, dawn_utc - WINDOW_EDGE_MARGIN_MIN)
    lead_min = target - t_depart
    open_window = lead_min > 0.0
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        required = np.where(open_window, distance_m / np.where(open_window, lead_min * 60.0, 1.0), np.inf)
    attainable = required <= bounds.v_max
    v = np.minimum(np.maximum(required, bounds.v_min), bounds.v_max)
    with np.errstate(invalid="ignore"):
        arrival = t_depart + distance_m / v / 60.0
    dark_at_v = (dusk_utc <= arrival) & (arrival <= dawn_utc)
    feasible = dark_at_default | (open_window & attainable & dark_at_v)
    speed = np.where(dark_at_default | ~feasible, v_def, v)
    return speed, feasible


def travel_minutes(distance_m, speed_mps):
    """Flight time for a leg, in minutes."""
    return distance_m / speed_mps / 60.0
